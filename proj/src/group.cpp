#include "hyperstab/group.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <random>
#include <set>

namespace hyperstab {

namespace {

std::vector<std::string> default_labels(int n, const char* prefix) {
  std::vector<std::string> lab(n);
  for (int i = 0; i < n; ++i) lab[i] = prefix + std::to_string(i);
  return lab;
}

// Deterministic LCG stream for sampled associativity checks.
struct Lcg {
  uint64_t x;
  explicit Lcg(uint64_t s) : x(s) {}
  uint64_t next() { return x = x * 6364136223846793005ULL + 1442695040888963407ULL; }
};

void check_group_axioms(const FiniteGroup& G) {
  const int n = G.order;
  for (int a = 0; a < n; ++a) {
    if (G.mul(G.identity, a) != a || G.mul(a, G.identity) != a)
      throw Error("Malformed", "identity law fails in group " + G.name);
    int ia = G.inverse[a];
    if (ia < 0 || ia >= n || G.mul(a, ia) != G.identity || G.mul(ia, a) != G.identity)
      throw Error("Malformed", "inverse law fails in group " + G.name);
  }
  auto assoc = [&](int a, int b, int c) {
    if (G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c)))
      throw Error("Malformed", "associativity fails in group " + G.name);
  };
  if (n <= 256) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) assoc(a, b, c);
  } else {
    Lcg rng(0x9e3779b97f4a7c15ULL ^ uint64_t(n));
    for (int k = 0; k < 200000; ++k) {
      int a = int(rng.next() % n), b = int(rng.next() % n), c = int(rng.next() % n);
      assoc(a, b, c);
    }
  }
}

}  // namespace

FiniteGroup group_from_table(std::string name, int order, std::vector<int> table,
                             std::vector<std::string> labels) {
  if (order <= 0 || int(table.size()) != order * order)
    throw Error("Malformed", "group table has the wrong shape");
  for (int v : table)
    if (v < 0 || v >= order) throw Error("Malformed", "group table entry out of range");

  FiniteGroup G;
  G.name = std::move(name);
  G.order = order;
  G.table = std::move(table);
  G.labels = labels.empty() ? default_labels(order, "g") : std::move(labels);

  G.identity = -1;
  for (int e = 0; e < order && G.identity < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < order && ok; ++a)
      ok = G.mul(e, a) == a && G.mul(a, e) == a;
    if (ok) G.identity = e;
  }
  if (G.identity < 0) throw Error("Malformed", "group table has no identity");

  G.inverse.assign(order, -1);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      if (G.mul(a, b) == G.identity) G.inverse[a] = b;

  check_group_axioms(G);
  return G;
}

FiniteGroup group_from_law(std::string name, int order, int identity,
                           std::function<int(int, int)> law,
                           std::function<int(int)> inv,
                           std::vector<int> generators,
                           std::vector<std::string> labels) {
  if (order <= 0 || identity < 0 || identity >= order)
    throw Error("Malformed", "bad group order or identity");
  if (order <= kDenseGroupCap) {
    std::vector<int> table(size_t(order) * order);
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b) {
        int c = law(a, b);
        if (c < 0 || c >= order) throw Error("Malformed", "group law value out of range");
        table[size_t(a) * order + b] = c;
      }
    FiniteGroup G = group_from_table(std::move(name), order, std::move(table),
                                     std::move(labels));
    G.generators = std::move(generators);
    return G;
  }

  if (!inv || generators.empty())
    throw Error("Malformed",
                "law-backed group beyond the dense cap needs an inverse law and generators");
  FiniteGroup G;
  G.name = std::move(name);
  G.order = order;
  G.identity = identity;
  G.law = std::move(law);
  G.generators = std::move(generators);
  G.labels = labels.empty() ? default_labels(order, "g") : std::move(labels);
  G.inverse.resize(order);
  for (int a = 0; a < order; ++a) {
    G.inverse[a] = inv(a);
    if (G.inverse[a] < 0 || G.inverse[a] >= order)
      throw Error("Malformed", "inverse law value out of range");
  }
  for (int g : G.generators)
    if (g < 0 || g >= order) throw Error("Malformed", "generator index out of range");
  check_group_axioms(G);
  return G;
}

FiniteGroup from_permutation_generators(const std::vector<std::vector<int>>& gens,
                                        std::string name, int cap) {
  size_t dom = gens.empty() ? 1 : gens[0].size();
  for (const auto& p : gens) {
    if (p.size() != dom) throw Error("Malformed", "permutation domains differ");
    std::vector<char> seen(dom, 0);
    for (int v : p) {
      if (v < 0 || size_t(v) >= dom || seen[v]) throw Error("Malformed", "not a permutation");
      seen[v] = 1;
    }
  }

  std::vector<int> ident(dom);
  for (size_t i = 0; i < dom; ++i) ident[i] = int(i);
  std::map<std::vector<int>, int> index;
  std::vector<std::vector<int>> elems;
  auto intern = [&](const std::vector<int>& p) {
    auto [it, fresh] = index.try_emplace(p, int(elems.size()));
    if (fresh) {
      elems.push_back(p);
      if (int(elems.size()) > cap) throw Error("CapExceeded", "permutation closure beyond cap");
    }
    return it->second;
  };
  intern(ident);
  std::vector<int> gen_ids;
  for (const auto& g : gens) gen_ids.push_back(intern(g));
  std::queue<int> work;
  for (int i = 0; i < int(elems.size()); ++i) work.push(i);
  while (!work.empty()) {
    int cur = work.front();
    work.pop();
    for (int g : gen_ids) {
      std::vector<int> prod(dom);
      for (size_t i = 0; i < dom; ++i) prod[i] = elems[cur][elems[g][i]];
      int before = int(elems.size());
      int id = intern(prod);
      if (id == before) work.push(id);  // first sighting
    }
  }

  int n = int(elems.size());
  std::vector<int> table(size_t(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<int> prod(dom);
      for (size_t i = 0; i < dom; ++i) prod[i] = elems[a][elems[b][i]];
      auto it = index.find(prod);
      if (it == index.end()) throw Error("Malformed", "closure not closed (internal)");
      table[size_t(a) * n + b] = it->second;
    }

  std::vector<std::string> labels(n);
  for (int a = 0; a < n; ++a) {
    std::string s;
    for (size_t i = 0; i < dom; ++i) {
      if (i) s += dom > 10 ? "-" : "";
      s += std::to_string(elems[a][i]);
    }
    labels[a] = s;
  }
  FiniteGroup G = group_from_table(name.empty() ? "perm" + std::to_string(n) : std::move(name),
                                   n, std::move(table), std::move(labels));
  G.generators = gen_ids;
  return G;
}

FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B, std::string name) {
  const int nb = B.order;
  const int n = A.order * B.order;
  auto law = [A, B, nb](int x, int y) {
    return A.mul(x / nb, y / nb) * nb + B.mul(x % nb, y % nb);
  };
  auto inv = [A, B, nb](int x) { return A.inverse[x / nb] * nb + B.inverse[x % nb]; };
  std::vector<int> gens;
  const std::vector<int> ga = A.generators.empty() ? [&] {
    std::vector<int> all(A.order);
    for (int i = 0; i < A.order; ++i) all[i] = i;
    return all;
  }() : A.generators;
  const std::vector<int> gb = B.generators.empty() ? [&] {
    std::vector<int> all(B.order);
    for (int i = 0; i < B.order; ++i) all[i] = i;
    return all;
  }() : B.generators;
  for (int g : ga) gens.push_back(g * nb + B.identity);
  for (int g : gb) gens.push_back(A.identity * nb + g);
  std::vector<std::string> labels(n);
  for (int a = 0; a < A.order; ++a)
    for (int b = 0; b < B.order; ++b)
      labels[a * nb + b] = "(" + A.labels[a] + "," + B.labels[b] + ")";
  return group_from_law(name.empty() ? A.name + "x" + B.name : std::move(name), n,
                        A.identity * nb + B.identity, law, inv, std::move(gens),
                        std::move(labels));
}

ConjugacyPartition conjugacy_partition(const FiniteGroup& G) {
  const int n = G.order;
  std::vector<int> gens = G.generators;
  if (gens.empty()) {
    gens.resize(n);
    for (int i = 0; i < n; ++i) gens[i] = i;
  }

  ConjugacyPartition P;
  P.class_of.assign(n, -1);
  P.pos_of.assign(n, -1);
  auto grow = [&](int x) {
    if (P.class_of[x] >= 0) return;
    int id = int(P.classes.size());
    std::vector<int> members;
    std::queue<int> work;
    P.class_of[x] = id;
    members.push_back(x);
    work.push(x);
    while (!work.empty()) {
      int y = work.front();
      work.pop();
      for (int g : gens) {
        int z = G.mul(G.mul(g, y), G.inverse[g]);
        if (P.class_of[z] < 0) {
          P.class_of[z] = id;
          members.push_back(z);
          work.push(z);
        }
      }
    }
    std::sort(members.begin(), members.end());
    P.classes.push_back(std::move(members));
  };
  grow(G.identity);
  for (int x = 0; x < n; ++x) grow(x);
  for (int c = 0; c < int(P.classes.size()); ++c) {
    P.representative.push_back(P.classes[c][0]);
    for (int p = 0; p < int(P.classes[c].size()); ++p) P.pos_of[P.classes[c][p]] = p;
  }
  return P;
}

namespace {

// Counts for one source class against one target representative; shared by
// both kernels so they agree entry for entry.
void count_row(const FiniteGroup& G, const ConjugacyPartition& P, int C, int E,
               std::vector<long long>& counts, std::vector<Triple>& out) {
  const int m = int(P.classes.size());
  std::fill(counts.begin(), counts.end(), 0);
  int e0 = P.representative[E];
  for (int c : P.classes[C]) ++counts[P.class_of[G.mul(G.inverse[c], e0)]];
  for (int D = 0; D < m; ++D) {
    if (!counts[D]) continue;
    Rat r = Rat(counts[D] * (long long)P.classes[E].size(),
                (long long)P.classes[C].size() * (long long)P.classes[D].size());
    out.push_back({C, D, E, r.to_double(), r, true});
  }
}

}  // namespace

std::vector<Triple> class_constants_serial(const FiniteGroup& G, const ConjugacyPartition& P) {
  const int m = int(P.classes.size());
  std::vector<Triple> out;
  std::vector<long long> counts(m);
  for (int C = 0; C < m; ++C)
    for (int E = 0; E < m; ++E) count_row(G, P, C, E, counts, out);
  return out;
}

std::vector<Triple> class_constants_parallel(const FiniteGroup& G, const ConjugacyPartition& P) {
  const int m = int(P.classes.size());
  std::vector<std::vector<Triple>> rows(m);
#pragma omp parallel for schedule(dynamic)
  for (int C = 0; C < m; ++C) {
    std::vector<long long> counts(m);
    for (int E = 0; E < m; ++E) count_row(G, P, C, E, counts, rows[C]);
  }
  std::vector<Triple> out;
  for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

ClassTable class_hypergroup(const FiniteGroup& G) {
  ClassTable ct;
  ct.part = conjugacy_partition(G);
  std::vector<Triple> triples = class_constants_parallel(G, ct.part);
  std::vector<std::string> labels;
  for (int r : ct.part.representative) labels.push_back("C(" + G.labels[r] + ")");
  ct.table = make_hypergroup("conj-" + G.name, int(ct.part.classes.size()), triples, 0, {},
                             std::move(labels));
  return ct;
}

FiniteGroup quotient_group(const FiniteGroup& G, const std::vector<int>& members,
                           std::string name) {
  const int n = G.order;
  std::set<int> S(members.begin(), members.end());
  if (!S.count(G.identity)) throw Error("Malformed", "subgroup misses the identity");
  for (int a : S) {
    if (a < 0 || a >= n) throw Error("Malformed", "subgroup element out of range");
    if (!S.count(G.inverse[a])) throw Error("Malformed", "subgroup not closed under inverse");
    for (int b : S)
      if (!S.count(G.mul(a, b))) throw Error("Malformed", "subgroup not closed under product");
  }
  std::vector<int> gens = G.generators;
  if (gens.empty()) {
    gens.resize(n);
    for (int i = 0; i < n; ++i) gens[i] = i;
  }
  for (int g : gens)
    for (int s : S)
      if (!S.count(G.mul(G.mul(g, s), G.inverse[g])))
        throw Error("Malformed", "subgroup is not normal");

  std::vector<int> coset_of(n, -1);
  std::vector<int> reps;
  for (int x = 0; x < n; ++x) {
    if (coset_of[x] >= 0) continue;
    int id = int(reps.size());
    reps.push_back(x);
    for (int s : S) coset_of[G.mul(x, s)] = id;
  }
  int m = int(reps.size());
  std::vector<int> table(size_t(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) table[size_t(a) * m + b] = coset_of[G.mul(reps[a], reps[b])];
  std::vector<std::string> labels;
  for (int r : reps) labels.push_back("[" + G.labels[r] + "]");
  return group_from_table(name.empty() ? G.name + "/N" : std::move(name), m, std::move(table),
                          std::move(labels));
}

IrrepData group_irrep_data(const FiniteGroup& G, const CharacterTable& C) {
  IrrepData out;
  double eps = std::max(C.parent ? C.parent->tol : 1e-9, 1e-9);
  long long total = 0;
  for (int mu = 0; mu < C.size; ++mu) {
    double w = C.char_weight[mu];
    long long d = llround(std::sqrt(w));
    if (d < 1 || std::abs(double(d) * double(d) - w) > 10 * eps * std::max(1.0, w))
      throw Error("NonIntegralDimension",
                  "character weight " + std::to_string(w) + " is not a square integer");
    out.dim.push_back(int(d));
    total += d * d;
    std::vector<complex> row(C.size);
    for (int a = 0; a < C.size; ++a) row[a] = double(d) * C.chi[mu][a];
    out.chi.push_back(std::move(row));
  }
  if (total != G.order)
    throw Error("NonIntegralDimension", "irrep dimensions do not sum to the group order");
  return out;
}

namespace {

// Shared invariant enforcement: the label level sets must be exactly the
// cosets of the hidden subhypergroup.
void check_oracle_cosets(const HypergroupTable& T, const std::vector<int>& hidden,
                         const std::vector<int>& lab) {
  if (!is_closed_subhypergroup(T, hidden))
    throw Error("Malformed", "oracle labels do not hide a closed subhypergroup");
  SubhypergroupView N = subhypergroup_view(T, hidden);
  std::map<std::vector<int>, int> coset_label;
  for (int c = 0; c < T.size; ++c) {
    auto cs = coset(T, N, c);
    auto [it, fresh] = coset_label.try_emplace(cs, lab[c]);
    if (!fresh && it->second != lab[c])
      throw Error("Malformed", "oracle labels are not constant on cosets");
  }
  std::set<int> distinct;
  for (auto& [cs, l] : coset_label)
    if (!distinct.insert(l).second)
      throw Error("Malformed", "oracle labels repeat across distinct cosets");
}

}  // namespace

ClassOracle wrap_class_function_oracle(const FiniteGroup& G, const ConjugacyPartition& P,
                                       const HypergroupTable& T,
                                       const std::function<int(int)>& f, uint64_t seed) {
  const int m = int(P.classes.size());
  std::mt19937_64 rng(seed);
  std::vector<int> lab(m);
  for (int c = 0; c < m; ++c) {
    int r = P.representative[c];
    lab[c] = f(r);
    int g = int(rng() % uint64_t(G.order));
    if (f(G.mul(G.mul(g, r), G.inverse[g])) != lab[c])
      throw Error("NotClassFunction",
                  "function differs inside class " + std::to_string(c));
  }
  ClassOracle o;
  int e_lab = lab[P.class_of[G.identity]];
  for (int c = 0; c < m; ++c)
    if (lab[c] == e_lab) o.hidden.push_back(c);
  check_oracle_cosets(T, o.hidden, lab);
  o.label = [lab](int c) { return lab[c]; };
  return o;
}

ClassOracle wrap_homomorphism_oracle(const FiniteGroup& G, const ConjugacyPartition& PG,
                                     const HypergroupTable& TG,
                                     const FiniteGroup& H, const ConjugacyPartition& PH,
                                     const std::function<int(int)>& f) {
  if (f(G.identity) != H.identity)
    throw Error("NotHomomorphism", "identity is not preserved");
  if (!G.generators.empty()) {
    // f(g x) = f(g) f(x) for generators g and all x extends to all products.
    for (int g : G.generators)
      for (int x = 0; x < G.order; ++x)
        if (f(G.mul(g, x)) != H.mul(f(g), f(x)))
          throw Error("NotHomomorphism", "product is not preserved");
  } else {
    for (int a = 0; a < G.order; ++a)
      for (int b = 0; b < G.order; ++b)
        if (f(G.mul(a, b)) != H.mul(f(a), f(b)))
          throw Error("NotHomomorphism", "product is not preserved");
  }

  const int m = int(PG.classes.size());
  std::vector<int> lab(m);
  for (int c = 0; c < m; ++c) lab[c] = PH.class_of[f(PG.representative[c])];

  ClassOracle o;
  std::set<int> hidden;
  for (int x = 0; x < G.order; ++x)
    if (f(x) == H.identity) hidden.insert(PG.class_of[x]);
  o.hidden.assign(hidden.begin(), hidden.end());
  check_oracle_cosets(TG, o.hidden, lab);
  o.label = [lab](int c) { return lab[c]; };
  return o;
}

std::vector<complex> embed_class_state(const FiniteGroup& G, const ConjugacyPartition& P,
                                       const std::vector<complex>& amp) {
  std::vector<complex> out(G.order);
  for (int x = 0; x < G.order; ++x) {
    int c = P.class_of[x];
    out[x] = amp[c] / std::sqrt(double(P.classes[c].size()));
  }
  return out;
}

std::vector<complex> embed_character_state(const FiniteGroup& G, const ConjugacyPartition& P,
                                           const CharacterTable& C,
                                           const std::vector<complex>& amp) {
  std::vector<complex> coeff(C.size);  // per-class factor sum_mu amp_mu sqrt(w/|G|) conj X_mu
  std::vector<complex> out(G.order);
  for (int cls = 0; cls < C.size; ++cls) {
    complex s = 0;
    for (int mu = 0; mu < C.size; ++mu)
      s += amp[mu] * std::sqrt(C.char_weight[mu] / double(G.order)) * std::conj(C.chi[mu][cls]);
    coeff[cls] = s;
  }
  for (int x = 0; x < G.order; ++x) out[x] = coeff[P.class_of[x]];
  return out;
}

}  // namespace hyperstab
