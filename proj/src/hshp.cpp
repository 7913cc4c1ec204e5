// Hidden-subhypergroup Fourier sampling: analytic outcome laws, seeded
// sampling runs, restricted-subhypergroup transforms, and the adaptive
// algorithms built on them.

#include "hyperstab/hshp.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "hyperstab/catalog.h"

namespace hyperstab {
namespace {

// Kernel membership: |X(a) - 1| <= this.  Character values at desk scale are
// separated from 1 by far more (the nearest catalog value is 2 sin(pi/31)),
// while eigensolver noise sits around 1e-12.
constexpr double kKernelTol = 1e-6;

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double unit_double(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

// Inverse-CDF draw; the final positive entry absorbs the rounding tail.
int draw_index(const std::vector<double>& p, std::mt19937_64& rng) {
  double u = unit_double(rng);
  double cum = 0;
  int last = -1;
  for (int i = 0; i < int(p.size()); ++i) {
    if (p[i] <= 0) continue;
    cum += p[i];
    last = i;
    if (u < cum) return i;
  }
  return last;
}

// Level sets of the oracle across `space`, ordered by smallest member; the
// weight of a level set is the total weight of its classes.
struct LabelPartition {
  std::vector<std::vector<int>> cosets;
  std::vector<double> weight;
  double total = 0;
};

LabelPartition partition_by_label(const HypergroupTable& T, const std::vector<int>& space,
                                  const std::function<int(int)>& oracle, long long* calls) {
  std::map<int, std::vector<int>> by;
  for (int x : space) {
    by[oracle(x)].push_back(x);
    if (calls) ++*calls;
  }
  LabelPartition P;
  for (auto& [lab, v] : by) P.cosets.push_back(std::move(v));
  std::sort(P.cosets.begin(), P.cosets.end());  // members ascend, so this is smallest-first
  for (const auto& cos : P.cosets) {
    double w = 0;
    for (int y : cos) w += T.weight[y];
    P.weight.push_back(w);
    P.total += w;
  }
  return P;
}

// Character law after transforming one coset state, |<X_mu|F|coset>|^2:
// the amplitude at mu is sqrt(w_mu/(W*w_c)) * sum_{y in coset} w_y X_mu(y).
std::vector<double> coset_char_probs(const HypergroupTable& T, const CharacterTable& C,
                                     const std::vector<int>& cos, double wc) {
  std::vector<double> p(C.size, 0.0);
  for (int mu = 0; mu < C.size; ++mu) {
    complex a = 0;
    for (int y : cos) a += T.weight[y] * C.chi[mu][y];
    p[mu] = C.char_weight[mu] * std::norm(a) / (T.total_weight * wc);
  }
  return p;
}

// Restricted-law machinery shared by restricted_distribution and the
// adaptive run: per-level preparation probabilities, per-coset conditional
// outcome laws over the dual coset basis, and their mixture.
struct LevelLaw {
  std::vector<double> pick;               // level-set preparation probabilities
  std::vector<std::vector<double>> cond;  // outcome law given each level set
  std::vector<double> mixture;
};

LevelLaw level_law(const HypergroupTable& T, const DualCosetBasis& B, const LabelPartition& P) {
  const int m = int(B.members.size());
  std::vector<int> pos(T.size, -1);
  for (int i = 0; i < m; ++i) pos[B.members[i]] = i;
  LevelLaw L;
  L.mixture.assign(m, 0.0);
  for (size_t c = 0; c < P.cosets.size(); ++c) {
    double pc = P.weight[c] / P.total;
    L.pick.push_back(pc);
    std::vector<double> q(m, 0.0);
    for (int j = 0; j < m; ++j) {
      complex a = 0;
      for (int y : P.cosets[c]) a += B.qft(j, pos[y]) * std::sqrt(T.weight[y] / P.weight[c]);
      q[j] = std::norm(a);
      L.mixture[j] += pc * q[j];
    }
    L.cond.push_back(std::move(q));
  }
  return L;
}

bool prime_power(long long n) {
  if (n < 1) return false;
  if (n == 1) return true;
  long long p = 2;
  while (p * p <= n && n % p != 0) ++p;
  if (n % p != 0) p = n;  // n prime
  while (n % p == 0) n /= p;
  return n == 1;
}

long long smallest_prime_factor(long long n) {
  for (long long p = 2; p * p <= n; ++p)
    if (n % p == 0) return p;
  return n;
}

bool is_subgroup(const FiniteGroup& G, const std::vector<int>& sorted_elems) {
  if (!std::binary_search(sorted_elems.begin(), sorted_elems.end(), G.identity)) return false;
  for (int a : sorted_elems) {
    if (!std::binary_search(sorted_elems.begin(), sorted_elems.end(), G.inverse[a])) return false;
    for (int b : sorted_elems)
      if (!std::binary_search(sorted_elems.begin(), sorted_elems.end(), G.mul(a, b))) return false;
  }
  return true;
}

bool is_normal(const FiniteGroup& G, const std::vector<int>& sorted_elems) {
  for (int g = 0; g < G.order; ++g)
    for (int a : sorted_elems)
      if (!std::binary_search(sorted_elems.begin(), sorted_elems.end(),
                              G.mul(G.mul(g, a), G.inverse[g])))
        return false;
  return true;
}

// K as a standalone group over a local index space; labels carry over.
FiniteGroup subgroup_as_group(const FiniteGroup& G, const std::vector<int>& elems,
                              const std::string& name) {
  const int o = int(elems.size());
  std::vector<int> local(G.order, -1);
  for (int i = 0; i < o; ++i) local[elems[i]] = i;
  std::vector<int> tab(size_t(o) * o);
  std::vector<std::string> labels(o);
  for (int a = 0; a < o; ++a) {
    labels[a] = G.labels[elems[a]];
    for (int b = 0; b < o; ++b) {
      int p = G.mul(elems[a], elems[b]);
      if (local[p] < 0)
        throw Error("Malformed", "subgroup set is not closed under the product");
      tab[size_t(a) * o + b] = local[p];
    }
  }
  return group_from_table(name, o, std::move(tab), std::move(labels));
}

std::vector<int> commutator_subgroup(const FiniteGroup& G) {
  std::set<int> s = {G.identity};
  std::vector<int> elems = {G.identity};
  for (int a = 0; a < G.order; ++a)
    for (int b = 0; b < G.order; ++b) {
      int c = G.mul(G.mul(a, b), G.mul(G.inverse[a], G.inverse[b]));
      if (s.insert(c).second) elems.push_back(c);
    }
  for (size_t i = 0; i < elems.size(); ++i)  // close the generating set
    for (size_t j = 0; j < elems.size(); ++j) {
      int c = G.mul(elems[i], elems[j]);
      if (s.insert(c).second) elems.push_back(c);
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

}  // namespace

double trivial_character_probability(const OutcomeDistribution& d) {
  if (d.trivial < 0 || d.trivial >= int(d.prob.size()))
    throw Error("Malformed", "trivial_character_probability: trivial index out of range");
  return d.prob[d.trivial];
}

std::vector<int> coset_labels(const HypergroupTable& T, const SubhypergroupView& N) {
  if (!is_closed_subhypergroup(T, N.members))
    throw Error("Malformed", "coset_labels: N is not a closed subhypergroup");
  std::vector<int> lab(T.size, -1);
  for (int a = 0; a < T.size; ++a) {
    std::vector<int> cos = coset(T, N, a);
    lab[a] = *std::min_element(cos.begin(), cos.end());
  }
  return lab;
}

OutcomeDistribution akr_distribution(const HypergroupTable& T, const CharacterTable& C,
                                     const SubhypergroupView& N) {
  if (!is_closed_subhypergroup(T, N.members))
    throw Error("Malformed", "akr_distribution: N is not a closed subhypergroup");
  QuotientTable Q = quotient(T, N);
  const std::vector<int> ann = annihilator(T, C, N.members);
  OutcomeDistribution d;
  d.prob.assign(C.size, 0.0);
  d.trivial = C.trivial;
  const double W = Q.table.total_weight;
  for (int mu : ann) {
    double s = 0;
    for (int j = 0; j < Q.table.size; ++j) {
      // Characters in the annihilator are constant on cosets of N, so any
      // representative evaluates them.
      double w = Q.table.weight[j];
      s += (w / W) * (w / W) * std::norm(C.chi[mu][Q.cosets[j][0]]);
    }
    d.prob[mu] = C.char_weight[mu] * s;
  }
  return d;
}

AlgorithmTrace akr_run(const HypergroupTable& T, const CharacterTable& C,
                       const std::function<int(int)>& oracle, int samples, uint64_t seed) {
  if (samples < 0) throw Error("Malformed", "akr_run: negative sample count");
  AlgorithmTrace tr;
  tr.seed = seed;
  std::vector<int> all(T.size);
  std::iota(all.begin(), all.end(), 0);
  tr.spaces.push_back(all);

  const LabelPartition P = partition_by_label(T, all, oracle, &tr.oracle_calls);
  std::vector<double> pick(P.cosets.size());
  for (size_t c = 0; c < P.cosets.size(); ++c) pick[c] = P.weight[c] / P.total;
  std::vector<std::vector<double>> cond(P.cosets.size());

  std::mt19937_64 rng(splitmix64(seed));
  std::vector<char> in(T.size, 1);  // running kernel intersection
  for (int t = 0; t < samples; ++t) {
    int c = draw_index(pick, rng);
    if (cond[c].empty()) cond[c] = coset_char_probs(T, C, P.cosets[c], P.weight[c]);
    int mu = draw_index(cond[c], rng);
    RoundRecord r;
    r.space = 0;
    r.level = 0;
    r.probs = cond[c];
    r.trivial = C.trivial;
    r.sample = mu;
    for (int x = 0; x < T.size; ++x) {
      if (std::abs(C.chi[mu][x] - 1.0) <= kKernelTol)
        r.kernel.push_back(x);
      else
        in[x] = 0;
    }
    tr.rounds.push_back(std::move(r));
  }
  for (int x = 0; x < T.size; ++x)
    if (in[x]) tr.answer.push_back(x);
  if (!is_closed_subhypergroup(T, tr.answer))
    throw Error("NotClosed", "akr_run: kernel intersection is not a closed subhypergroup");
  return tr;
}

DualCosetBasis subhypergroup_coset_basis(const HypergroupTable& T, const CharacterTable& C,
                                         const SubhypergroupView& K) {
  if (!is_closed_subhypergroup(T, K.members))
    throw Error("Malformed", "subhypergroup_coset_basis: K is not a closed subhypergroup");
  DualCosetBasis B;
  B.members = K.members;
  const int m = int(B.members.size());

  // Group characters by their restriction to K; equal restrictions mean the
  // two differ by a factor that is 1 on all of K, i.e. an annihilator member.
  B.coset_of.assign(C.size, -1);
  for (int mu = 0; mu < C.size; ++mu) {
    int found = -1;
    for (int j = 0; j < int(B.rep.size()) && found < 0; ++j) {
      bool same = true;
      for (int x : B.members)
        if (std::abs(C.chi[mu][x] - C.chi[B.rep[j]][x]) > kKernelTol) {
          same = false;
          break;
        }
      if (same) found = j;
    }
    if (found < 0) {
      B.rep.push_back(mu);
      B.cosets.push_back({});
      found = int(B.rep.size()) - 1;
    }
    B.cosets[found].push_back(mu);
    B.coset_of[mu] = found;
  }
  if (int(B.cosets.size()) != m)
    throw Error("IllConditioned",
                "subhypergroup_coset_basis: restrictions split into " +
                    std::to_string(B.cosets.size()) + " cosets, expected " + std::to_string(m));
  B.trivial = B.coset_of[C.trivial];

  double WK = 0;
  for (int x : B.members) WK += T.weight[x];
  B.coset_weight.resize(m);
  double wsum = 0;
  for (int j = 0; j < m; ++j) {
    double s = 0;
    for (int x : B.members) s += T.weight[x] * std::norm(C.chi[B.rep[j]][x]);
    B.coset_weight[j] = WK / s;
    wsum += B.coset_weight[j];
  }
  if (std::abs(wsum - WK) > 1e-6 * std::max(1.0, WK))
    throw Error("IllConditioned", "subhypergroup_coset_basis: dual weights sum to " +
                                      std::to_string(wsum) + ", expected " + std::to_string(WK));

  B.qft.resize(m, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i)
      B.qft(j, i) =
          std::sqrt(T.weight[B.members[i]] * B.coset_weight[j] / WK) * C.chi[B.rep[j]][B.members[i]];

  B.embed = Eigen::MatrixXcd::Zero(C.size, m);
  for (int j = 0; j < m; ++j) {
    double wamb = 0;
    for (int mu : B.cosets[j]) wamb += C.char_weight[mu];
    for (int mu : B.cosets[j]) B.embed(mu, j) = std::sqrt(C.char_weight[mu] / wamb);
  }
  return B;
}

OutcomeDistribution restricted_distribution(const HypergroupTable& T, const CharacterTable& C,
                                            const SubhypergroupView& K,
                                            const std::function<int(int)>& oracle,
                                            long long* oracle_calls) {
  DualCosetBasis B = subhypergroup_coset_basis(T, C, K);
  LabelPartition P = partition_by_label(T, B.members, oracle, oracle_calls);
  LevelLaw L = level_law(T, B, P);
  OutcomeDistribution d;
  d.prob = std::move(L.mixture);
  d.trivial = B.trivial;
  return d;
}

SubhypergroupView kernel_restricted(const HypergroupTable& T, const CharacterTable& C,
                                    int nu, const SubhypergroupView& K, double tol) {
  if (nu < 0 || nu >= C.size)
    throw Error("Malformed", "kernel_restricted: character index out of range");
  std::vector<int> members;
  for (int x : K.members)
    if (std::abs(C.chi[nu][x] - 1.0) <= tol) members.push_back(x);
  if (!is_closed_subhypergroup(T, members))
    throw Error("NotClosed", "kernel_restricted: the 1-level set of character " +
                                 std::to_string(nu) + " over K is not closed");
  return subhypergroup_view(T, members);
}

AlgorithmTrace nilpotent_run(const FiniteGroup& G, const ClassTable& CT,
                             const CharacterTable& C,
                             const std::function<int(int)>& oracle,
                             int repeats_per_round, uint64_t seed,
                             const std::vector<std::vector<int>>& decomposition,
                             bool shot_mode) {
  if (repeats_per_round < 1)
    throw Error("Malformed", "nilpotent_run: repeats_per_round must be positive");
  const HypergroupTable& T = CT.table;

  // Resolve the direct factors: the group itself when it is a p-group,
  // otherwise the supplied internal direct-product decomposition.
  std::vector<std::vector<int>> factors;
  if (decomposition.empty()) {
    if (!prime_power(G.order))
      throw Error("MissingDecomposition",
                  "nilpotent_run: order " + std::to_string(G.order) +
                      " is not a prime power; supply a direct-product decomposition "
                      "into p-groups (one exists exactly when the group is nilpotent)");
    std::vector<int> all(G.order);
    std::iota(all.begin(), all.end(), 0);
    factors.push_back(std::move(all));
  } else {
    long long prod = 1;
    std::set<long long> primes;
    for (auto f : decomposition) {
      std::sort(f.begin(), f.end());
      f.erase(std::unique(f.begin(), f.end()), f.end());
      if (!is_subgroup(G, f))
        throw Error("Malformed", "nilpotent_run: a decomposition factor is not a subgroup");
      if (!is_normal(G, f))
        throw Error("Malformed", "nilpotent_run: a decomposition factor is not normal");
      if (!prime_power(int(f.size())) || f.size() < 1)
        throw Error("NotPGroup", "nilpotent_run: factor of order " +
                                     std::to_string(f.size()) + " is not a p-group");
      if (f.size() > 1 && !primes.insert(smallest_prime_factor(int(f.size()))).second)
        throw Error("Malformed", "nilpotent_run: two factors share a prime");
      prod *= (long long)f.size();
      factors.push_back(std::move(f));
    }
    if (prod != G.order)
      throw Error("Malformed", "nilpotent_run: factor orders multiply to " +
                                   std::to_string(prod) + ", not " + std::to_string(G.order));
  }

  AlgorithmTrace tr;
  tr.seed = seed;
  std::mt19937_64 rng(splitmix64(seed));
  std::vector<int> found;  // union of the per-factor answers

  for (const auto& fac : factors) {
    // Classes lying inside this factor; the factor is normal, so a class is
    // inside exactly when its representative is.
    std::vector<int> K;
    for (int cls = 0; cls < T.size; ++cls)
      if (std::binary_search(fac.begin(), fac.end(), CT.part.representative[cls]))
        K.push_back(cls);
    SubhypergroupView Kv = subhypergroup_view(T, K);
    int level = 0;

    while (true) {
      tr.spaces.push_back(Kv.members);
      const int space_idx = int(tr.spaces.size()) - 1;
      DualCosetBasis B = subhypergroup_coset_basis(T, C, Kv);
      LabelPartition P = partition_by_label(T, B.members, oracle, &tr.oracle_calls);
      LevelLaw L = level_law(T, B, P);

      int consecutive = 0;
      int reduced_to = -1;  // coset index of a nontrivial sample
      while (consecutive < repeats_per_round) {
        int j;
        if (shot_mode) {
          int c = draw_index(L.pick, rng);
          j = draw_index(L.cond[c], rng);
        } else {
          j = draw_index(L.mixture, rng);
        }
        RoundRecord r;
        r.space = space_idx;
        r.level = level;
        r.probs = L.mixture;
        r.trivial = B.trivial;
        r.sample = j;
        SubhypergroupView ker = kernel_restricted(T, C, B.rep[j], Kv);
        r.kernel = ker.members;
        tr.rounds.push_back(std::move(r));
        if (j == B.trivial) {
          ++consecutive;
        } else {
          if (ker.members.size() >= Kv.members.size())
            throw Error("IllConditioned",
                        "nilpotent_run: nontrivial sample failed to shrink the space");
          Kv = ker;
          reduced_to = j;
          break;
        }
      }
      if (reduced_to < 0) break;  // a full quiet round: accept K for this factor
      ++level;
    }
    found.insert(found.end(), Kv.members.begin(), Kv.members.end());
  }

  // Factor answers live in different factors; the hidden subhypergroup is
  // their product, i.e. the closure of the union.
  SubhypergroupView ans = closure(T, found);
  tr.answer = ans.members;
  for (int cls : tr.answer)
    for (int g : CT.part.classes[cls]) tr.answer_elements.push_back(g);
  std::sort(tr.answer_elements.begin(), tr.answer_elements.end());
  return tr;
}

AlgorithmTrace recursive_subgroup_run(const FiniteGroup& G, const OracleFactory& factory,
                                      int samples_per_level, uint64_t seed) {
  if (samples_per_level < 1)
    throw Error("Malformed", "recursive_subgroup_run: samples_per_level must be positive");
  AlgorithmTrace tr;
  tr.seed = seed;
  std::mt19937_64 rng(splitmix64(seed));

  std::vector<int> cur(G.order);
  std::iota(cur.begin(), cur.end(), 0);
  int level = 0;

  while (true) {
    tr.spaces.push_back(cur);
    const int space_idx = int(tr.spaces.size()) - 1;
    SubgroupProblem prob;
    prob.elements = cur;
    prob.group = subgroup_as_group(G, cur, G.name + "|level" + std::to_string(level));
    prob.classes = class_hypergroup(prob.group);
    const CharacterTable CK = compute_characters(prob.classes.table);
    const HypergroupTable& TK = prob.classes.table;

    std::function<int(int)> oracle = factory(prob);
    if (!oracle)
      throw Error("OracleUnavailable",
                  "recursive_subgroup_run: no oracle for the level-" + std::to_string(level) +
                      " subgroup of order " + std::to_string(prob.group.order));

    std::vector<int> all(TK.size);
    std::iota(all.begin(), all.end(), 0);
    const LabelPartition P = partition_by_label(TK, all, oracle, &tr.oracle_calls);
    std::vector<double> pick(P.cosets.size());
    for (size_t c = 0; c < P.cosets.size(); ++c) pick[c] = P.weight[c] / P.total;
    std::vector<std::vector<double>> cond(P.cosets.size());

    std::vector<char> in(TK.size, 1);
    for (int t = 0; t < samples_per_level; ++t) {
      int c = draw_index(pick, rng);
      if (cond[c].empty()) cond[c] = coset_char_probs(TK, CK, P.cosets[c], P.weight[c]);
      int mu = draw_index(cond[c], rng);
      RoundRecord r;
      r.space = space_idx;
      r.level = level;
      r.probs = cond[c];
      r.trivial = CK.trivial;
      r.sample = mu;
      for (int x = 0; x < TK.size; ++x) {
        if (std::abs(CK.chi[mu][x] - 1.0) <= kKernelTol)
          r.kernel.push_back(x);
        else
          in[x] = 0;
      }
      tr.rounds.push_back(std::move(r));
    }

    std::vector<int> next;  // intersection of kernels, as parent elements
    for (int cls = 0; cls < TK.size; ++cls)
      if (in[cls])
        for (int g : prob.classes.part.classes[cls]) next.push_back(cur[g]);
    std::sort(next.begin(), next.end());
    if (next == cur) break;  // only the trivial character was observed
    cur = std::move(next);
    ++level;
  }

  tr.answer_elements = cur;
  // Report the answer in original-group classes when it is a union of them
  // (always the case when the run found a normal subgroup).
  const ConjugacyPartition PG = conjugacy_partition(G);
  for (int cls = 0; cls < int(PG.classes.size()); ++cls) {
    bool inside = true;
    for (int g : PG.classes[cls])
      if (!std::binary_search(cur.begin(), cur.end(), g)) {
        inside = false;
        break;
      }
    if (inside) tr.answer.push_back(cls);
  }
  return tr;
}

OutcomeDistribution hrt_embedded_distribution(const FiniteGroup& G, const ConjugacyPartition& P,
                                              const HypergroupTable& T, const CharacterTable& C,
                                              const std::function<int(int)>& oracle) {
  const int n = T.size;
  // Orthonormal basis of the conjugation-invariant subspace, one vector per
  // character; a class-function state resolves entirely against these.
  std::vector<std::vector<complex>> basis(n);
  for (int mu = 0; mu < n; ++mu) {
    std::vector<complex> e(n, complex(0));
    e[mu] = 1;
    basis[mu] = embed_character_state(G, P, C, e);
  }
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  const LabelPartition part = partition_by_label(T, all, oracle, nullptr);

  OutcomeDistribution d;
  d.prob.assign(n, 0.0);
  d.trivial = C.trivial;
  for (size_t c = 0; c < part.cosets.size(); ++c) {
    const double pc = part.weight[c] / T.total_weight;
    std::vector<complex> amp(n, complex(0));
    for (int y : part.cosets[c]) amp[y] = std::sqrt(T.weight[y] / part.weight[c]);
    const std::vector<complex> psi = embed_class_state(G, P, amp);
    for (int mu = 0; mu < n; ++mu) {
      complex a = 0;
      for (int g = 0; g < G.order; ++g) a += std::conj(basis[mu][g]) * psi[g];
      d.prob[mu] += pc * std::norm(a);
    }
  }
  return d;
}

DihedralAffineReport dihedral_and_affine_checks() {
  DihedralAffineReport rep;
  auto identity_oracle = [](int x) { return x; };

  for (int n = 4; n <= 32; n += 2) {
    const std::string hg = "conj-d" + std::to_string(n);
    const HypergroupTable& T = catalog_hypergroup(hg);
    const CharacterTable& C = catalog_characters(hg);
    for (const auto& K : enumerate_subhypergroups(T)) {
      SubhypergroupCheck row;
      row.hypergroup = hg;
      row.members = K.members;
      row.trivial_prob =
          trivial_character_probability(restricted_distribution(T, C, K, identity_oracle));
      row.bound_applies = K.members.size() > 1;
      if (row.bound_applies) rep.dihedral_max = std::max(rep.dihedral_max, row.trivial_prob);
      rep.dihedral.push_back(std::move(row));
    }
  }
  rep.dihedral_ok = rep.dihedral_max <= 2.0 / 3.0 + 1e-9;

  for (int p : {5, 7, 13}) {
    const std::string gname = "affine" + std::to_string(p);
    const FiniteGroup& G = catalog_group(gname);
    const ClassTable& CT = catalog_class_table(gname);
    const CharacterTable& C = catalog_characters("conj-" + gname);
    const std::vector<int> comm = commutator_subgroup(G);
    std::vector<int> members;
    for (int cls = 0; cls < CT.table.size; ++cls)
      if (std::binary_search(comm.begin(), comm.end(), CT.part.representative[cls]))
        members.push_back(cls);
    SubhypergroupCheck row;
    row.hypergroup = "conj-" + gname;
    row.members = members;
    row.trivial_prob = trivial_character_probability(
        restricted_distribution(CT.table, C, subhypergroup_view(CT.table, members),
                                identity_oracle));
    row.bound_applies = members.size() > 1;
    rep.affine.push_back(std::move(row));
  }
  return rep;
}

std::vector<AlgorithmTrace> seeded_sweep(int runs, uint64_t seed0, int jobs,
                                         const std::function<AlgorithmTrace(uint64_t)>& run) {
  if (runs < 0) throw Error("Malformed", "seeded_sweep: negative run count");
  if (jobs < 1) jobs = 1;
  std::vector<AlgorithmTrace> out(runs);
  std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic) if (jobs > 1)
  for (int i = 0; i < runs; ++i) {
    try {
      out[i] = run(seed0 + uint64_t(i));
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace hyperstab
