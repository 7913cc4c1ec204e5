#include "hyperstab/characters.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace hyperstab {

namespace {

inline double rng_unit(std::mt19937_64& g) {
  // top 53 bits -> [0,1); avoids implementation-defined distributions
  return double(g() >> 11) * 0x1.0p-53;
}

// X_a in the weighted basis: X_a[z][y] = sqrt(w_y/w_z) n(a,y->z).  These are
// commuting normal matrices (X_a^dag = X_abar), simultaneously diagonal in
// the character basis, with eigenvector components v[y] ~ sqrt(w_y) conj X(y).
Eigen::MatrixXcd x_operator(const HypergroupTable& T, int a) {
  const int n = T.size;
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
  for (int y = 0; y < n; ++y)
    for (const Term& t : T.pairs(a, y))
      M(t.c, y) += std::sqrt(T.weight[y] / T.weight[t.c]) * t.v;
  return M;
}

std::vector<complex> extract_character(const HypergroupTable& T,
                                       const Eigen::VectorXcd& v) {
  // v[y] = K sqrt(w_y) conj(X(y)); anchor at the identity where X = 1.
  const int n = T.size;
  complex ve = v(T.identity);
  std::vector<complex> row(n);
  if (std::abs(ve) < 1e-12) return {};  // bad mixing; caller retries
  for (int y = 0; y < n; ++y)
    row[y] = std::conj(v(y) / (ve * std::sqrt(T.weight[y])));
  return row;
}

double row_residual_sampled(const HypergroupTable& T, const std::vector<complex>& row,
                            int full_limit) {
  const int n = T.size;
  double res = 0;
  auto check = [&](int a, int b) {
    complex lhs = row[a] * row[b], rhs = 0;
    for (const Term& t : T.pairs(a, b)) rhs += t.v * row[t.c];
    res = std::max(res, std::abs(lhs - rhs));
  };
  if (n <= full_limit) {
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) check(a, b);
  } else {
    uint64_t s = 0x9e3779b97f4a7c15ull;
    for (int i = 0; i < 20000; ++i) {
      s = s * 6364136223846793005ull + 1442695040888963407ull;
      int a = int((s >> 33) % uint64_t(n));
      s = s * 6364136223846793005ull + 1442695040888963407ull;
      int b = int((s >> 33) % uint64_t(n));
      check(a, b);
    }
  }
  return res;
}

}  // namespace

CharacterTable compute_characters(const HypergroupTable& T, uint64_t seed) {
  const int n = T.size;
  const double cluster_tol = 1e-7;
  const int max_retries = 5;

  CharacterTable C;
  C.parent = &T;
  C.size = n;

  std::string last_err = "eigenvalues failed to separate";
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    std::mt19937_64 gen(seed + 0x9e37 * uint64_t(attempt));
    // Random combination sum_a c_a X_a with c_abar = conj(c_a): Hermitian.
    std::vector<complex> coef(n);
    for (int a = 0; a < n; ++a) coef[a] = complex(2 * rng_unit(gen) - 1, 2 * rng_unit(gen) - 1);
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
    for (int a = 0; a < n; ++a) {
      complex g = coef[a] + std::conj(coef[T.involution[a]]);
      if (g == complex(0, 0)) continue;
      const int abar = T.involution[a];
      for (int y = 0; y < n; ++y)
        for (const Term& t : T.pairs(a, y))
          A(t.c, y) += g * std::sqrt(T.weight[y] / T.weight[t.c]) * t.v;
      (void)abar;
    }
    A = (A + A.adjoint()).eval() / 2.0;  // scrub float asymmetry

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
    if (es.info() != Eigen::Success) { last_err = "eigen solver failed"; continue; }
    const auto& ev = es.eigenvalues();
    bool clustered = false;
    for (int i = 1; i < n; ++i)
      if (std::abs(ev(i) - ev(i - 1)) < cluster_tol) clustered = true;
    if (clustered) { last_err = "eigenvalue cluster below 1e-7"; continue; }

    std::vector<std::vector<complex>> rows;
    rows.reserve(n);
    bool bad = false;
    double worst = 0;
    for (int k = 0; k < n && !bad; ++k) {
      std::vector<complex> row = extract_character(T, es.eigenvectors().col(k));
      if (row.empty()) { bad = true; last_err = "vanishing identity component"; break; }
      worst = std::max(worst, row_residual_sampled(T, row, 64));
      rows.push_back(std::move(row));
    }
    if (bad) continue;
    if (worst > std::max(T.tol, 1e-8) * 10) {
      last_err = "character equation residual too large";
      continue;
    }

    // Order: trivial first, then lexicographic on rounded (re, im) pairs.
    auto rounded_key = [&](const std::vector<complex>& r) {
      std::vector<std::pair<long long, long long>> k(n);
      for (int i = 0; i < n; ++i)
        k[i] = {llround(r[i].real() * 1e9), llround(r[i].imag() * 1e9)};
      return k;
    };
    int triv = -1;
    for (int k = 0; k < n; ++k) {
      bool all1 = true;
      for (int a = 0; a < n; ++a)
        if (std::abs(rows[k][a] - complex(1, 0)) > 1e-6) all1 = false;
      if (all1) { triv = k; break; }
    }
    if (triv < 0) { last_err = "trivial character not found"; continue; }

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::vector<std::vector<std::pair<long long, long long>>> keys(n);
    for (int i = 0; i < n; ++i) keys[i] = rounded_key(rows[i]);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      if (x == triv || y == triv) return x == triv;
      return keys[x] < keys[y];
    });

    C.chi.resize(n);
    C.char_weight.assign(n, 0);
    for (int i = 0; i < n; ++i) C.chi[i] = rows[order[i]];
    C.trivial = 0;
    C.max_residual = worst;
    for (int mu = 0; mu < n; ++mu) {
      double s = 0;
      for (int a = 0; a < n; ++a) s += T.weight[a] * std::norm(C.chi[mu][a]);
      C.char_weight[mu] = T.total_weight / s;
    }
    // Conjugation permutation: chi_mubar = conj(chi_mu) entrywise.  Exact
    // rounded-key lookup is too brittle here: on large tables the per-entry
    // eigenvector error exceeds any fixed rounding grid, so match each
    // conjugated row to the nearest row in sup norm instead.  Distinct
    // characters are orthogonal and far apart, so the first row within
    // tolerance is the partner.
    const double pair_tol = 1e-6;
    C.conj.assign(n, -1);
    bool conj_ok = true;
    for (int mu = 0; mu < n && conj_ok; ++mu) {
      int match = -1;
      for (int nu = 0; nu < n; ++nu) {
        double d = 0;
        for (int a = 0; a < n; ++a) {
          d = std::max(d, std::abs(std::conj(C.chi[mu][a]) - C.chi[nu][a]));
          if (d > pair_tol) break;
        }
        if (d <= pair_tol) { match = nu; break; }
      }
      if (match < 0) conj_ok = false;
      else C.conj[mu] = match;
    }
    // Guard against a mismatch slipping through: conjugation must square to
    // the identity permutation.
    if (conj_ok)
      for (int mu = 0; mu < n; ++mu)
        if (C.conj[C.conj[mu]] != mu) { conj_ok = false; break; }
    if (!conj_ok) { last_err = "conjugate character rows do not pair up"; continue; }
    return C;
  }
  throw Error("DegenerateSpectrum", last_err);
}

double character_equation_residual(const HypergroupTable& T, const CharacterTable& C,
                                   int pair_full_limit) {
  double res = 0;
  for (int mu = 0; mu < C.size; ++mu)
    res = std::max(res, row_residual_sampled(T, C.chi[mu], pair_full_limit));
  return res;
}

OrthogonalityReport verify_orthogonality(const HypergroupTable& T, const CharacterTable& C,
                                         int max_subhypergroups) {
  const int n = T.size;
  OrthogonalityReport rep;

  // (a) sum_a (w_a w_Xmu / W) X_mu(a) conj X_nu(a) = delta_{mu,nu}
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu) {
      complex s = 0;
      for (int a = 0; a < n; ++a)
        s += T.weight[a] * C.chi[mu][a] * std::conj(C.chi[nu][a]);
      s *= C.char_weight[mu] / T.total_weight;
      rep.row_residual = std::max(rep.row_residual, std::abs(s - (mu == nu ? 1.0 : 0.0)));
    }

  auto subs = enumerate_subhypergroups(T, max_subhypergroups);
  for (const auto& N : subs) {
    // restriction classes: mu ~ nu iff X_mu == X_nu on N
    auto restr_key = [&](int mu) {
      std::vector<std::pair<long long, long long>> k;
      for (int a : N.members)
        k.emplace_back(llround(C.chi[mu][a].real() * 1e9), llround(C.chi[mu][a].imag() * 1e9));
      return k;
    };
    // Characters with equal restriction form one annihilator coset; its
    // weight in the quotient of the dual enters the first sum.
    std::map<std::vector<std::pair<long long, long long>>, double> coset_char_weight;
    for (int mu = 0; mu < n; ++mu) coset_char_weight[restr_key(mu)] += C.char_weight[mu];
    double ann_weight = T.total_weight / N.weight_sum;  // total weight of the annihilator

    // (b) sum_{x in N} (wdual(nu-coset) w_x / weight(N)) conj X_mu(x) X_nu(x)
    //     = [restrictions equal]
    for (int mu = 0; mu < n; ++mu)
      for (int nu = 0; nu < n; ++nu) {
        complex s = 0;
        for (int a : N.members)
          s += T.weight[a] * std::conj(C.chi[mu][a]) * C.chi[nu][a];
        s *= coset_char_weight[restr_key(nu)] / ann_weight / N.weight_sum;
        double target = restr_key(mu) == restr_key(nu) ? 1.0 : 0.0;
        rep.sub_restriction = std::max(rep.sub_restriction, std::abs(s - target));
      }
    // (c) over the annihilator: sum_{mu in ann} w_Xmu X_mu(x) conj X_mu(y)
    //     = (W / weight(xN)) [xN == yN]
    std::vector<int> ann = annihilator(T, C, N.members);
    std::vector<int> cs(n);
    std::vector<double> coset_weight(n, 0);
    {
      std::map<std::vector<int>, int> idx;
      for (int x = 0; x < n; ++x) {
        auto c = coset(T, N, x);
        auto [it, fresh] = idx.try_emplace(c, int(idx.size()));
        cs[x] = it->second;
      }
      for (int x = 0; x < n; ++x) coset_weight[cs[x]] += T.weight[x];
    }
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        complex s = 0;
        for (int mu : ann)
          s += C.char_weight[mu] * std::conj(C.chi[mu][x]) * C.chi[mu][y];
        s *= coset_weight[cs[y]] / T.total_weight;
        double target = cs[x] == cs[y] ? 1.0 : 0.0;
        rep.sub_dual = std::max(rep.sub_dual, std::abs(s - target));
      }
  }
  double tol = std::max(T.tol, 1e-9);
  rep.ok = rep.row_residual <= tol && rep.sub_restriction <= tol && rep.sub_dual <= tol;
  return rep;
}

DualTable dual_hypergroup(const HypergroupTable& T, const CharacterTable& C) {
  const int n = T.size;
  DualTable D;
  const double drop = 5e-13;

  std::vector<std::vector<Triple>> rows(n);
  std::vector<double> row_imag(n, 0);
#pragma omp parallel for schedule(dynamic)
  for (int mu = 0; mu < n; ++mu) {
    std::vector<complex> prod(n);
    for (int nu = 0; nu <= mu; ++nu) {
      for (int a = 0; a < n; ++a) prod[a] = C.chi[mu][a] * C.chi[nu][a];
      for (int g = 0; g < n; ++g) {
        complex m = 0;
        for (int a = 0; a < n; ++a)
          m += T.weight[a] * std::conj(C.chi[g][a]) * prod[a];
        m *= C.char_weight[g] / T.total_weight;
        row_imag[mu] = std::max(row_imag[mu], std::abs(m.imag()));
        if (std::abs(m) > drop)
          rows[mu].push_back({mu, nu, g, m.real(), Rat(0), false});
      }
    }
  }
  std::vector<Triple> triples;
  bool signed_flag = false;
  for (int mu = 0; mu < n; ++mu) {
    D.max_imag = std::max(D.max_imag, row_imag[mu]);
    for (auto& t : rows[mu]) {
      if (t.v < -T.tol) signed_flag = true;
      triples.push_back(t);
      if (t.a != t.b) triples.push_back({t.b, t.a, t.c, t.v, t.r, false});
    }
  }
  D.signed_flag = signed_flag;

  std::vector<std::string> labels(n);
  for (int mu = 0; mu < n; ++mu) labels[mu] = "X" + std::to_string(mu);
  D.table = make_hypergroup(T.name + "*", n, triples, C.trivial, {}, std::move(labels), T.tol);
  D.table.exact = false;

  // reconstruction check: X_mu X_nu = sum_g m X_g pointwise
  double res = 0;
  auto check = [&](int mu, int nu) {
    for (int a = 0; a < n; ++a) {
      complex lhs = C.chi[mu][a] * C.chi[nu][a], rhs = 0;
      for (const Term& t : D.table.pairs(mu, nu)) rhs += t.v * C.chi[t.c][a];
      res = std::max(res, std::abs(lhs - rhs));
    }
  };
  if (n <= 64) {
    for (int mu = 0; mu < n; ++mu)
      for (int nu = mu; nu < n; ++nu) check(mu, nu);
  } else {
    uint64_t s = 12345;
    for (int i = 0; i < 5000; ++i) {
      s = s * 6364136223846793005ull + 1442695040888963407ull;
      int mu = int((s >> 33) % uint64_t(n));
      s = s * 6364136223846793005ull + 1442695040888963407ull;
      int nu = int((s >> 33) % uint64_t(n));
      check(mu, nu);
    }
  }
  D.solve_residual = res;
  if (res > std::max(T.tol, 1e-9) * 10)
    throw Error("IllConditioned", "dual structure constants fail to reconstruct products");
  // weight consistency: the dual table's derived weights must match Eq.-7 weights
  for (int mu = 0; mu < n; ++mu)
    if (std::abs(D.table.weight[mu] - C.char_weight[mu]) >
        std::max(T.tol, 1e-9) * 100 * std::max(1.0, C.char_weight[mu]))
      throw Error("IllConditioned", "dual weights disagree with character weights");
  return D;
}

std::vector<int> double_dual_iso(const HypergroupTable& T, const CharacterTable& C,
                                 const DualTable& D) {
  const int n = T.size;
  CharacterTable D2 = compute_characters(D.table);
  // match a -> row [mu -> conj X_mu(a)]
  auto key_of = [&](const std::vector<complex>& r) {
    std::vector<std::pair<long long, long long>> k(n);
    for (int i = 0; i < n; ++i)
      k[i] = {llround(r[i].real() * 1e6), llround(r[i].imag() * 1e6)};
    return k;
  };
  std::map<std::vector<std::pair<long long, long long>>, std::vector<int>> buckets;
  for (int mu = 0; mu < n; ++mu) buckets[key_of(D2.chi[mu])].push_back(mu);

  std::vector<int> map(n, -1);
  std::vector<char> used(n, 0);
  double tol = std::max(T.tol, 1e-7);
  for (int a = 0; a < n; ++a) {
    std::vector<complex> target(n);
    for (int mu = 0; mu < n; ++mu) target[mu] = std::conj(C.chi[mu][a]);
    auto it = buckets.find(key_of(target));
    int hit = -1;
    if (it != buckets.end()) {
      for (int cand : it->second) {
        double d = 0;
        for (int mu = 0; mu < n; ++mu) d = std::max(d, std::abs(D2.chi[cand][mu] - target[mu]));
        if (d <= tol) {
          if (hit >= 0) throw Error("NoMatch", "ambiguous double-dual row for element " + std::to_string(a));
          hit = cand;
        }
      }
    }
    if (hit < 0 || used[hit])
      throw Error("NoMatch", "no double-dual character row matches element " + std::to_string(a));
    used[hit] = 1;
    map[a] = hit;
  }
  return map;
}

std::vector<int> annihilator(const HypergroupTable& T, const CharacterTable& C,
                             const std::vector<int>& members) {
  std::vector<int> out;
  for (int mu = 0; mu < C.size; ++mu) {
    bool ok = true;
    for (int a : members)
      if (std::abs(C.chi[mu][a] - complex(1, 0)) > std::max(T.tol, 1e-9) * 10) { ok = false; break; }
    if (ok) out.push_back(mu);
  }
  return out;
}

}  // namespace hyperstab
