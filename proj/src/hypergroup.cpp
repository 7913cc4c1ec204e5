#include "hyperstab/hypergroup.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>

namespace hyperstab {

double default_tol() {
  static double tol = [] {
    if (const char* s = std::getenv("HYPERSTAB_TOL")) {
      double v = std::atof(s);
      if (v > 0) return v;
    }
    return 1e-9;
  }();
  return tol;
}

double HypergroupTable::n3(int a, int b, int c) const {
  for (const Term& t : pairs(a, b))
    if (t.c == c) return t.v;
  return 0;
}

Rat HypergroupTable::n3_exact(int a, int b, int c) const {
  for (const Term& t : pairs(a, b))
    if (t.c == c) return t.r;
  return Rat(0);
}

HypergroupTable make_hypergroup(std::string name, int size,
                                const std::vector<Triple>& triples, int identity,
                                std::vector<int> involution,
                                std::vector<std::string> labels, double tol) {
  if (size <= 0) throw Error("Malformed", "empty hypergroup carrier");
  HypergroupTable T;
  T.name = std::move(name);
  T.size = size;
  T.tol = tol > 0 ? tol : default_tol();
  T.exact = !triples.empty();

  // Bucket triples per (a,b), sorted by outcome.
  std::vector<std::vector<Term>> buckets(size_t(size) * size);
  for (const Triple& t : triples) {
    if (t.a < 0 || t.a >= size || t.b < 0 || t.b >= size || t.c < 0 || t.c >= size)
      throw Error("Malformed", "structure-constant index out of range");
    buckets[size_t(t.a) * size + t.b].push_back({t.c, t.v, t.r});
    if (!t.exact) T.exact = false;
  }
  T.off.assign(size_t(size) * size + 1, 0);
  size_t total = 0;
  for (size_t k = 0; k < buckets.size(); ++k) {
    auto& b = buckets[k];
    std::sort(b.begin(), b.end(), [](const Term& x, const Term& y) { return x.c < y.c; });
    for (size_t i = 1; i < b.size(); ++i)
      if (b[i].c == b[i - 1].c) throw Error("Malformed", "duplicate structure constant");
    T.off[k] = uint32_t(total);
    total += b.size();
  }
  T.off[buckets.size()] = uint32_t(total);
  T.terms.reserve(total);
  for (auto& b : buckets)
    for (auto& t : b) T.terms.push_back(t);
  // off[] currently holds starts; rebuild as prefix array including the end.
  {
    size_t run = 0;
    for (size_t k = 0; k < buckets.size(); ++k) {
      T.off[k] = uint32_t(run);
      run += buckets[k].size();
    }
    T.off[buckets.size()] = uint32_t(run);
  }

  if (identity < 0) {
    for (int e = 0; e < size && identity < 0; ++e) {
      bool ok = true;
      for (int b = 0; b < size && ok; ++b) {
        auto p = T.pairs(e, b);
        ok = p.size() == 1 && p[0].c == b && std::abs(p[0].v - 1.0) <= T.tol;
      }
      if (ok) identity = e;
    }
    if (identity < 0) throw Error("Malformed", "no identity element found");
  }
  T.identity = identity;

  if (!involution.empty()) {
    if (int(involution.size()) != size)
      throw Error("Malformed", "involution length does not match carrier size");
    for (int v : involution)
      if (v < 0 || v >= size) throw Error("Malformed", "involution index out of range");
    T.involution = std::move(involution);
  } else {
    T.involution.assign(size, -1);
    for (int a = 0; a < size; ++a) {
      for (int b = 0; b < size; ++b) {
        if (T.n3(a, b, T.identity) > T.tol) {
          if (T.involution[a] != -1)
            throw Error("Malformed", "element " + std::to_string(a) + " has two anti-elements");
          T.involution[a] = b;
        }
      }
      if (T.involution[a] < 0)
        throw Error("Malformed", "element " + std::to_string(a) + " has no anti-element");
    }
  }

  T.weight.assign(size, 0);
  T.weight_exact.assign(size, Rat(0));
  T.total_weight = 0;
  for (int a = 0; a < size; ++a) {
    double ne = T.n3(a, T.involution[a], T.identity);
    T.weight[a] = ne > 0 ? 1.0 / ne : 0.0;  // broken tables still construct; validate() reports
    if (T.exact && ne > 0) T.weight_exact[a] = rat_inverse(T.n3_exact(a, T.involution[a], T.identity));
    T.total_weight += T.weight[a];
  }

  if (labels.empty()) {
    labels.resize(size);
    for (int i = 0; i < size; ++i) labels[i] = "x" + std::to_string(i);
  }
  if (int(labels.size()) != size) throw Error("Malformed", "label count mismatch");
  T.labels = std::move(labels);
  return T;
}

namespace {

struct AxiomAcc {
  AxiomResult res;
  bool exact;
  explicit AxiomAcc(std::string name, bool ex) : exact(ex) {
    res.axiom = std::move(name);
    res.pass = true;
  }
  void miss(double residual) {
    res.residual = std::max(res.residual, residual);
  }
  void finish(double tol) {
    // Exact tables must have residual exactly 0; float tables compare to tol.
    res.pass = exact ? res.residual == 0 : res.residual <= tol;
  }
};

}  // namespace

ValidationReport validate(const HypergroupTable& T, int assoc_full_limit) {
  const int n = T.size;
  const bool ex = T.exact;
  ValidationReport rep;

  AxiomAcc nonneg("nonnegativity", ex);
  for (const Term& t : T.terms)
    if (ex ? t.r.is_negative() : t.v < -T.tol) nonneg.miss(ex ? 1 : -t.v);
  nonneg.finish(T.tol);

  AxiomAcc comm("commutativity", ex);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      auto p = T.pairs(a, b), q = T.pairs(b, a);
      if (p.size() != q.size()) { comm.miss(1); continue; }
      for (size_t i = 0; i < p.size(); ++i) {
        if (p[i].c != q[i].c) { comm.miss(1); continue; }
        if (ex) { if (p[i].r != q[i].r) comm.miss(1); }
        else comm.miss(std::abs(p[i].v - q[i].v));
      }
    }
  comm.finish(T.tol);

  AxiomAcc norm("normalization", ex);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (ex) {
        Rat s(0);
        for (const Term& t : T.pairs(a, b)) s = s + t.r;
        if (s != Rat(1)) norm.miss(std::max(std::abs(s.to_double() - 1.0), 1e-30));
      } else {
        double s = 0;
        for (const Term& t : T.pairs(a, b)) s += t.v;
        norm.miss(std::abs(s - 1.0));
      }
    }
  norm.finish(T.tol);

  AxiomAcc ident("identity", ex);
  for (int b = 0; b < n; ++b) {
    auto p = T.pairs(T.identity, b);
    if (p.size() != 1 || p[0].c != b) { ident.miss(1); continue; }
    if (ex) { if (p[0].r != Rat(1)) ident.miss(1); }
    else ident.miss(std::abs(p[0].v - 1.0));
  }
  ident.finish(T.tol);

  AxiomAcc anti("anti-element", ex);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      double v = T.n3(a, b, T.identity);
      bool present = ex ? !T.n3_exact(a, b, T.identity).is_zero() : v > T.tol;
      if (present != (b == T.involution[a])) anti.miss(1);
    }
    if (T.involution[T.involution[a]] != a) anti.miss(1);
  }
  anti.finish(T.tol);

  // Reversibility n(a,b->c)/w_c = n(abar,c->b)/w_b, checked on every stored
  // entry (zero entries pair with zero entries by the same identity).
  AxiomAcc rev("reversibility", ex);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (const Term& t : T.pairs(a, b)) {
        if (ex) {
          // cross-multiplied: n(a,b->c) * w_b == n(abar,c->b) * w_c
          Rat cross = t.r * T.weight_exact[b];
          Rat other = T.n3_exact(T.involution[a], t.c, b) * T.weight_exact[t.c];
          if (cross != other) rev.miss(1);
        } else {
          double lhs = t.v / T.weight[t.c];
          double rhs = T.n3(T.involution[a], t.c, b) / T.weight[b];
          rev.miss(std::abs(lhs - rhs));
        }
      }
  rev.finish(T.tol);

  AxiomAcc invcomp("involution-compatibility", ex);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (const Term& t : T.pairs(a, b)) {
        int ab = T.involution[a], bb = T.involution[b], cb = T.involution[t.c];
        if (ex) {
          if (T.n3_exact(ab, bb, cb) != t.r) invcomp.miss(1);
        } else {
          invcomp.miss(std::abs(T.n3(ab, bb, cb) - t.v));
        }
      }
  invcomp.finish(T.tol);

  AxiomAcc wgt("weights", ex);
  for (int a = 0; a < n; ++a) {
    if (ex) {
      if (T.weight_exact[a] * T.n3_exact(a, T.involution[a], T.identity) != Rat(1)) wgt.miss(1);
    } else {
      wgt.miss(std::abs(T.weight[a] * T.n3(a, T.involution[a], T.identity) - 1.0));
    }
  }
  wgt.finish(T.tol);

  // Associativity sum_d n(a,b->d) n(d,c->x) = sum_d n(b,c->d) n(a,d->x).
  bool full_assoc = n <= assoc_full_limit;
  AxiomAcc assoc(full_assoc ? "associativity" : "associativity (sampled)", ex);
  auto check_assoc = [&](int a, int b, int c) {
    if (ex) {
      std::map<int, Rat> lhs, rhs;
      for (const Term& t : T.pairs(a, b))
        for (const Term& u : T.pairs(t.c, c)) {
          auto [it, fresh] = lhs.try_emplace(u.c, Rat(0));
          it->second = it->second + t.r * u.r;
        }
      for (const Term& t : T.pairs(b, c))
        for (const Term& u : T.pairs(a, t.c)) {
          auto [it, fresh] = rhs.try_emplace(u.c, Rat(0));
          it->second = it->second + t.r * u.r;
        }
      if (lhs.size() != rhs.size()) { assoc.miss(1); return; }
      for (auto& [x, v] : lhs) {
        auto it = rhs.find(x);
        if (it == rhs.end() || it->second != v) { assoc.miss(1); return; }
      }
    } else {
      std::map<int, double> lhs, rhs;
      for (const Term& t : T.pairs(a, b))
        for (const Term& u : T.pairs(t.c, c)) lhs[u.c] += t.v * u.v;
      for (const Term& t : T.pairs(b, c))
        for (const Term& u : T.pairs(a, t.c)) rhs[u.c] += t.v * u.v;
      for (auto& [x, v] : lhs) assoc.miss(std::abs(v - rhs[x]));
      for (auto& [x, v] : rhs)
        if (!lhs.count(x)) assoc.miss(std::abs(v));
    }
  };
  if (full_assoc) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) check_assoc(a, b, c);
  } else {
    uint64_t state = 0x9e3779b97f4a7c15ull;  // deterministic sample
    int samples = 50000;
    for (int i = 0; i < samples; ++i) {
      auto next = [&] {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return int((state >> 33) % uint64_t(n));
      };
      int a = next(), b = next(), c = next();
      check_assoc(a, b, c);
    }
  }
  assoc.finish(T.tol);

  rep.axioms = {nonneg.res, comm.res,   norm.res, ident.res,
                anti.res,   rev.res,    invcomp.res, wgt.res, assoc.res};
  rep.ok = true;
  for (auto& a : rep.axioms) {
    rep.ok = rep.ok && a.pass;
    rep.max_residual = std::max(rep.max_residual, a.residual);
  }
  return rep;
}

std::vector<std::pair<int, double>> product_support(const HypergroupTable& T, int a, int b) {
  std::vector<std::pair<int, double>> out;
  for (const Term& t : T.pairs(a, b))
    if (t.v > T.tol) out.emplace_back(t.c, t.v);
  return out;
}

static SubhypergroupView make_view(const HypergroupTable& T, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  SubhypergroupView v;
  v.parent = &T;
  v.members = std::move(members);
  for (int a : v.members) v.weight_sum += T.weight[a];
  return v;
}

SubhypergroupView subhypergroup_view(const HypergroupTable& T, std::vector<int> members) {
  return make_view(T, std::move(members));
}

SubhypergroupView closure(const HypergroupTable& T, const std::vector<int>& seed) {
  std::vector<char> in(T.size, 0);
  std::vector<int> work;
  auto add = [&](int x) {
    if (!in[x]) { in[x] = 1; work.push_back(x); }
  };
  add(T.identity);
  for (int s : seed) add(s);
  for (size_t i = 0; i < work.size(); ++i) {
    int a = work[i];
    add(T.involution[a]);
    for (size_t j = 0; j <= i; ++j) {
      int b = work[j];
      for (const Term& t : T.pairs(a, b))
        if (t.v > T.tol) add(t.c);
    }
  }
  return make_view(T, work);
}

bool is_closed_subhypergroup(const HypergroupTable& T, const std::vector<int>& members) {
  std::vector<char> in(T.size, 0);
  for (int m : members) in[m] = 1;
  if (!in[T.identity]) return false;
  for (int a : members) {
    if (!in[T.involution[a]]) return false;
    for (int b : members)
      for (const Term& t : T.pairs(a, b))
        if (t.v > T.tol && !in[t.c]) return false;
  }
  return true;
}

std::vector<int> coset(const HypergroupTable& T, const SubhypergroupView& N, int a) {
  std::vector<char> in(T.size, 0);
  for (int b : N.members)
    for (const Term& t : T.pairs(a, b))
      if (t.v > T.tol) in[t.c] = 1;
  std::vector<int> out;
  for (int x = 0; x < T.size; ++x)
    if (in[x]) out.push_back(x);
  return out;
}

std::vector<SubhypergroupView> enumerate_subhypergroups(const HypergroupTable& T, int max_count) {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> work;
  auto push = [&](const SubhypergroupView& v) {
    if (seen.insert(v.members).second) {
      if (int(seen.size()) > max_count)
        throw Error("CapExceeded", "more than " + std::to_string(max_count) + " subhypergroups");
      work.push_back(v.members);
    }
  };
  push(closure(T, {}));
  for (int a = 0; a < T.size; ++a) push(closure(T, {a}));
  for (size_t i = 0; i < work.size(); ++i) {
    std::vector<int> base = work[i];
    std::vector<char> in(T.size, 0);
    for (int m : base) in[m] = 1;
    for (int x = 0; x < T.size; ++x) {
      if (in[x]) continue;
      std::vector<int> seed = base;
      seed.push_back(x);
      push(closure(T, seed));
    }
  }
  std::vector<SubhypergroupView> out;
  for (auto& m : seen) out.push_back(make_view(T, m));
  std::sort(out.begin(), out.end(), [](const SubhypergroupView& a, const SubhypergroupView& b) {
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    return a.members < b.members;
  });
  return out;
}

QuotientTable quotient(const HypergroupTable& T, const SubhypergroupView& N) {
  QuotientTable Q;
  Q.coset_of.assign(T.size, -1);
  std::map<std::vector<int>, int> index;
  for (int a = 0; a < T.size; ++a) {
    std::vector<int> cs = coset(T, N, a);
    auto [it, fresh] = index.try_emplace(cs, int(Q.cosets.size()));
    if (fresh) Q.cosets.push_back(cs);
    Q.coset_of[a] = it->second;
  }
  // Partition check: cosets must be disjoint and every element's coset must
  // contain the element itself.
  std::vector<int> owner(T.size, -1);
  for (size_t k = 0; k < Q.cosets.size(); ++k)
    for (int x : Q.cosets[k]) {
      if (owner[x] != -1)
        throw Error("RepresentativeInconsistency", "cosets of the given set do not partition the carrier");
      owner[x] = int(k);
    }
  for (int a = 0; a < T.size; ++a)
    if (owner[a] != Q.coset_of[a])
      throw Error("RepresentativeInconsistency", "element lies outside its own coset");

  const int m = int(Q.cosets.size());
  std::vector<Triple> triples;
  for (int A = 0; A < m; ++A)
    for (int B = 0; B < m; ++B) {
      // r(A,B->C) = sum_{c in C} n(a,b->c), for any representatives a,b.
      std::vector<Rat> first_exact(m, Rat(0));
      std::vector<double> first(m, 0);
      bool have_first = false;
      for (int a : Q.cosets[A])
        for (int b : Q.cosets[B]) {
          std::vector<Rat> accr(m, Rat(0));
          std::vector<double> acc(m, 0);
          for (const Term& t : T.pairs(a, b)) {
            acc[Q.coset_of[t.c]] += t.v;
            if (T.exact) accr[Q.coset_of[t.c]] = accr[Q.coset_of[t.c]] + t.r;
          }
          if (!have_first) {
            first = acc;
            first_exact = accr;
            have_first = true;
          } else {
            for (int C = 0; C < m; ++C) {
              bool bad = T.exact ? !(accr[C] == first_exact[C])
                                 : std::abs(acc[C] - first[C]) > T.tol;
              if (bad)
                throw Error("RepresentativeInconsistency",
                            "quotient constants depend on the representative");
            }
          }
        }
      for (int C = 0; C < m; ++C)
        if (T.exact ? !first_exact[C].is_zero() : first[C] > T.tol)
          triples.push_back({A, B, C, first[C], first_exact[C], T.exact});
    }

  std::vector<std::string> labels(m);
  for (int C = 0; C < m; ++C) {
    labels[C] = "[" + T.labels[Q.cosets[C][0]];
    labels[C] += "]";
  }
  Q.table = make_hypergroup(T.name + "/N", m, triples, Q.coset_of[T.identity],
                            {}, std::move(labels), T.tol);
  // Coset weights must match total weight ratios.
  for (int C = 0; C < m; ++C) {
    double wsum = 0;
    for (int x : Q.cosets[C]) wsum += T.weight[x];
    if (std::abs(Q.table.weight[C] - wsum / N.weight_sum) > T.tol * std::max(1.0, wsum))
      throw Error("RepresentativeInconsistency",
                  "coset weight disagrees with weight-sum ratio");
  }
  return Q;
}

bool is_automorphism(const HypergroupTable& T, const std::vector<int>& map, double* residual) {
  if (int(map.size()) != T.size) return false;
  std::vector<char> hit(T.size, 0);
  for (int v : map) {
    if (v < 0 || v >= T.size || hit[v]) return false;
    hit[v] = 1;
  }
  double res = 0;
  if (map[T.identity] != T.identity) return false;
  for (int a = 0; a < T.size; ++a) {
    if (map[T.involution[a]] != T.involution[map[a]]) return false;
    for (int b = 0; b < T.size; ++b) {
      for (const Term& t : T.pairs(a, b))
        res = std::max(res, std::abs(T.n3(map[a], map[b], map[t.c]) - t.v));
      for (const Term& t : T.pairs(map[a], map[b])) {
        // surjectivity of supports: image support must not exceed source's
        bool found = false;
        for (const Term& u : T.pairs(a, b))
          if (map[u.c] == t.c) { found = true; break; }
        if (!found) res = std::max(res, t.v);
      }
    }
  }
  if (residual) *residual = res;
  return res <= T.tol;
}

bool is_morphism_into_invertibles(const HypergroupTable& S, const HypergroupTable& T,
                                  const std::vector<int>& map) {
  if (int(map.size()) != S.size) return false;
  for (int v : map)
    if (!T.invertible(v))
      throw Error("Unsupported", "morphism target element is not invertible");
  if (map[S.identity] != T.identity) return false;
  for (int a = 0; a < S.size; ++a) {
    if (map[S.involution[a]] != T.involution[map[a]]) return false;
    for (int b = 0; b < S.size; ++b) {
      // product of invertibles has a single outcome
      auto p = T.pairs(map[a], map[b]);
      if (p.size() != 1) return false;
      for (const Term& t : S.pairs(a, b))
        if (t.v > S.tol && map[t.c] != p[0].c) return false;
    }
  }
  return true;
}

namespace {

struct AutoSearch {
  const HypergroupTable& T;
  const HypergroupTable& U;  // target (== T for automorphisms)
  std::vector<int> img;
  std::vector<char> used;
  std::vector<std::vector<int>> found;
  size_t cap;
  bool stop_at_first;

  AutoSearch(const HypergroupTable& t, const HypergroupTable& u, size_t c, bool first)
      : T(t), U(u), img(t.size, -1), used(u.size, 0), cap(c), stop_at_first(first) {}

  bool weights_match(int a, int v) const {
    return std::abs(T.weight[a] - U.weight[v]) <= std::max(T.tol, U.tol) * std::max(1.0, T.weight[a]);
  }

  bool consistent(int k) const {
    // check all structure constants among assigned elements involving k
    for (int a = 0; a <= k; ++a) {
      if (img[a] < 0) continue;
      for (int b : {a, k}) {
        if (img[b] < 0) continue;
        auto p = T.pairs(a, b), q = U.pairs(img[a], img[b]);
        if (p.size() != q.size()) return false;
        for (const Term& t : p) {
          if (img[t.c] < 0) continue;
          bool ok = false;
          for (const Term& u : q)
            if (u.c == img[t.c] && std::abs(u.v - t.v) <= std::max(T.tol, U.tol)) ok = true;
          if (!ok) return false;
        }
      }
    }
    return true;
  }

  bool recurse(int k) {
    if (k == T.size) {
      found.push_back(img);
      if (found.size() >= cap) return true;
      return stop_at_first;
    }
    if (img[k] >= 0) return recurse(k + 1);
    for (int v = 0; v < U.size; ++v) {
      if (used[v] || !weights_match(k, v)) continue;
      int kb = T.involution[k], vb = U.involution[v];
      int saved_kb = img[kb];
      if (saved_kb >= 0 && saved_kb != vb) continue;
      if (kb == k && vb != v) continue;
      bool set_kb = saved_kb < 0 && kb != k;
      if (set_kb && used[vb]) continue;
      img[k] = v;
      used[v] = 1;
      if (set_kb) { img[kb] = vb; used[vb] = 1; }
      if (consistent(k) && (!set_kb || consistent(kb))) {
        if (recurse(k + 1)) return true;
      }
      img[k] = -1;
      used[v] = 0;
      if (set_kb) { img[kb] = -1; used[vb] = 0; }
    }
    return false;
  }
};

}  // namespace

std::vector<std::vector<int>> enumerate_automorphisms(const HypergroupTable& T, size_t cap) {
  AutoSearch s(T, T, cap, false);
  s.img[T.identity] = T.identity;
  s.used[T.identity] = 1;
  s.recurse(0);
  // final full verification (the search prunes, this confirms)
  std::vector<std::vector<int>> out;
  for (auto& m : s.found)
    if (is_automorphism(T, m)) out.push_back(m);
  return out;
}

std::vector<int> find_isomorphism(const HypergroupTable& A, const HypergroupTable& B) {
  if (A.size != B.size) return {};
  AutoSearch s(A, B, 1, true);
  s.img[A.identity] = B.identity;
  s.used[B.identity] = 1;
  s.recurse(0);
  for (auto& m : s.found) {
    // verify against B's constants
    bool ok = true;
    for (int a = 0; a < A.size && ok; ++a)
      for (int b = 0; b < A.size && ok; ++b) {
        auto p = A.pairs(a, b);
        auto q = B.pairs(m[a], m[b]);
        if (p.size() != q.size()) { ok = false; break; }
        for (const Term& t : p)
          if (std::abs(B.n3(m[a], m[b], m[t.c]) - t.v) > std::max(A.tol, B.tol)) ok = false;
      }
    if (ok) return m;
  }
  return {};
}

HypergroupTable tensor_product(const HypergroupTable& A, const HypergroupTable& B,
                               const std::string& name) {
  const int n = A.size * B.size;
  std::vector<Triple> triples;
  triples.reserve(A.terms.size() * B.terms.size());
  for (int a1 = 0; a1 < A.size; ++a1)
    for (int b1 = 0; b1 < B.size; ++b1)
      for (int a2 = 0; a2 < A.size; ++a2)
        for (int b2 = 0; b2 < B.size; ++b2)
          for (const Term& t : A.pairs(a1, a2))
            for (const Term& u : B.pairs(b1, b2))
              triples.push_back({a1 * B.size + b1, a2 * B.size + b2, t.c * B.size + u.c,
                                 t.v * u.v, t.r * u.r, A.exact && B.exact});
  std::vector<std::string> labels(n);
  for (int a = 0; a < A.size; ++a)
    for (int b = 0; b < B.size; ++b)
      labels[a * B.size + b] = "(" + A.labels[a] + "," + B.labels[b] + ")";
  HypergroupTable T = make_hypergroup(name.empty() ? A.name + "x" + B.name : name, n, triples,
                                      A.identity * B.size + B.identity, {}, std::move(labels),
                                      std::max(A.tol, B.tol));
  T.exact = A.exact && B.exact;
  return T;
}

}  // namespace hyperstab
