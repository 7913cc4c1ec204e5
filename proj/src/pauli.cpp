#include "hyperstab/pauli.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

namespace hyperstab {

namespace {

// Side-symmetric accessors.  The calculus over T and over T* is formally the
// same once "points" and "duals" are read against the side: at Side::Elem the
// points are elements and the duals are characters; at Side::Char the points
// are characters and the duals are elements acting by evaluation (double
// duality identifies T** with T).
struct SpaceView {
  const HypergroupTable* T;
  const CharacterTable* C;
  Side side;

  int n() const { return T->size; }
  double weight(int p) const {
    return side == Side::Elem ? T->weight[p] : C->char_weight[p];
  }
  double weight_dual(int d) const {
    return side == Side::Elem ? C->char_weight[d] : T->weight[d];
  }
  int conj_pt(int p) const {
    return side == Side::Elem ? T->involution[p] : C->conj[p];
  }
  int conj_dual(int d) const {
    return side == Side::Elem ? C->conj[d] : T->involution[d];
  }
  complex eval(int d, int p) const {
    return side == Side::Elem ? C->chi[d][p] : C->chi[p][d];
  }
  bool invertible_pt(int p) const { return std::abs(weight(p) - 1.0) <= 1e-7; }
  bool invertible_dual(int d) const { return std::abs(weight_dual(d) - 1.0) <= 1e-7; }
  double total() const {
    double s = 0;
    for (int p = 0; p < n(); ++p) s += weight(p);
    return s;
  }
};

// The dual index whose evaluations match `values` over all points.
int dual_index_of(const SpaceView& sv, const std::vector<complex>& values, double tol) {
  return sv.side == Side::Elem ? character_index_of(*sv.C, values, tol)
                               : element_index_of(*sv.C, values, tol);
}

// Partition of the points of the current space into cosets of N, detected by
// the annihilating duals (which are constant on cosets and separate them),
// plus the restriction-equality classes on the dual side (which are the
// cosets of the annihilator).  Everything comes out of the character table,
// so the same code serves both sides.
struct SideCosets {
  std::vector<int> kernel;                     // duals that are 1 on all of N
  std::vector<std::vector<int>> classes;       // point cosets
  std::vector<int> class_of;                   // point -> coset index
  std::vector<std::vector<int>> dual_classes;  // dual restriction classes
  std::vector<int> dual_class_of;
};

SideCosets side_cosets(const SpaceView& sv, const std::vector<int>& members) {
  const double tol = 1e-6;
  int n = sv.n();
  SideCosets sc;
  for (int d = 0; d < n; ++d) {
    bool ann = true;
    for (int a : members)
      if (std::abs(sv.eval(d, a) - 1.0) > tol) { ann = false; break; }
    if (ann) sc.kernel.push_back(d);
  }
  // Cluster points by their kernel evaluations (no quantized keys: compare
  // against one representative per class so boundary rounding can't split a
  // class).
  sc.class_of.assign(n, -1);
  for (int p = 0; p < n; ++p) {
    for (size_t k = 0; k < sc.classes.size(); ++k) {
      int rep = sc.classes[k][0];
      bool same = true;
      for (int d : sc.kernel)
        if (std::abs(sv.eval(d, p) - sv.eval(d, rep)) > tol) { same = false; break; }
      if (same) { sc.class_of[p] = int(k); sc.classes[k].push_back(p); break; }
    }
    if (sc.class_of[p] < 0) {
      sc.class_of[p] = int(sc.classes.size());
      sc.classes.push_back({p});
    }
  }
  sc.dual_class_of.assign(n, -1);
  for (int d = 0; d < n; ++d) {
    for (size_t k = 0; k < sc.dual_classes.size(); ++k) {
      int rep = sc.dual_classes[k][0];
      bool same = true;
      for (int a : members)
        if (std::abs(sv.eval(d, a) - sv.eval(rep, a)) > tol) { same = false; break; }
      if (same) { sc.dual_class_of[d] = int(k); sc.dual_classes[k].push_back(d); break; }
    }
    if (sc.dual_class_of[d] < 0) {
      sc.dual_class_of[d] = int(sc.dual_classes.size());
      sc.dual_classes.push_back({d});
    }
  }
  return sc;
}

}  // namespace

int character_index_of(const CharacterTable& C, const std::vector<complex>& values,
                       double tol) {
  int hit = -1;
  for (int mu = 0; mu < C.size; ++mu) {
    bool same = true;
    for (int a = 0; a < C.size && same; ++a)
      same = std::abs(C.chi[mu][a] - values[a]) <= tol;
    if (same) {
      if (hit >= 0) throw Error("NoMatch", "value vector matches two characters");
      hit = mu;
    }
  }
  if (hit < 0) throw Error("NoMatch", "value vector is not a character of the table");
  return hit;
}

int element_index_of(const CharacterTable& C, const std::vector<complex>& values,
                     double tol) {
  int hit = -1;
  for (int x = 0; x < C.size; ++x) {
    bool same = true;
    for (int mu = 0; mu < C.size && same; ++mu)
      same = std::abs(C.chi[mu][x] - values[mu]) <= tol;
    if (same) {
      if (hit >= 0) throw Error("NoMatch", "value vector matches two elements");
      hit = x;
    }
  }
  if (hit < 0) throw Error("NoMatch", "value vector is not an evaluation at any element");
  return hit;
}

int char_product_index(const CharacterTable& C, int mu, int nu) {
  std::vector<complex> values(C.size);
  for (int a = 0; a < C.size; ++a) values[a] = C.chi[mu][a] * C.chi[nu][a];
  return character_index_of(C, values);
}

Eigen::MatrixXcd dense_pauli(const HypergroupTable& T, const CharacterTable& C,
                             const PauliTerm& t, const DualTable* D) {
  int n = T.size;
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
  if (t.kind == PKind::Z) {
    // Diagonal in its own basis: character values at elements, or evaluation
    // values at characters.
    for (int p = 0; p < n; ++p)
      M(p, p) = (t.side == Side::Elem ? C.chi[t.param][p] : C.chi[p][t.param]);
  } else if (t.side == Side::Elem) {
    for (int y = 0; y < n; ++y)
      for (const Term& e : T.pairs(t.param, y))
        M(e.c, y) += std::sqrt(T.weight[y] / T.weight[e.c]) * e.v;
  } else {
    if (!D)
      throw Error("Unsupported",
                  "character-side X operators need the dual structure constants");
    for (int nu = 0; nu < n; ++nu)
      for (const Term& e : D->table.pairs(t.param, nu))
        M(e.c, nu) += std::sqrt(C.char_weight[nu] / C.char_weight[e.c]) * e.v;
  }
  return t.phase * M;
}

bool commutes(const HypergroupTable& T, const CharacterTable& C, int a, int mu) {
  (void)T;
  return std::abs(C.chi[mu][a] - 1.0) <= 1e-7;
}

std::vector<PauliTerm> conjugate_term(const HypergroupTable& T, const CharacterTable& C,
                                      const PauliTerm& t, const Gate& g) {
  SpaceView sv{&T, &C, t.side};
  switch (g.kind) {
    case GateKind::PauliX: {
      if (!sv.invertible_pt(g.param))
        throw Error("Unsupported", "X gate parameter " + std::to_string(g.param) +
                                       " is not invertible");
      if (t.kind == PKind::X) return {t};  // X operators commute
      PauliTerm r = t;
      r.phase *= sv.eval(t.param, sv.conj_pt(g.param));
      return {r};
    }
    case GateKind::PauliZ: {
      if (!sv.invertible_dual(g.param))
        throw Error("Unsupported", "Z gate parameter " + std::to_string(g.param) +
                                       " is not invertible");
      if (t.kind == PKind::Z) return {t};  // diagonal against diagonal
      PauliTerm r = t;
      r.phase *= sv.eval(g.param, t.param);
      return {r};
    }
    case GateKind::Automorphism: {
      int n = sv.n();
      if (int(g.alpha.size()) != n)
        throw Error("Malformed", "automorphism map has the wrong size");
      if (t.kind == PKind::X) {
        PauliTerm r = t;
        r.param = g.alpha[t.param];
        return {r};
      }
      std::vector<int> ainv(n, -1);
      for (int p = 0; p < n; ++p) ainv[g.alpha[p]] = p;
      std::vector<complex> values(n);
      for (int p = 0; p < n; ++p) values[p] = sv.eval(t.param, ainv[p]);
      PauliTerm r = t;
      r.param = dual_index_of(sv, values, 1e-6);
      return {r};
    }
    case GateKind::Quadratic: {
      if (t.kind == PKind::Z) return {t};
      PauliTerm x = t;
      x.phase *= g.xi[t.param];
      PauliTerm z;
      z.side = t.side;
      z.kind = PKind::Z;
      z.param = g.beta[t.param];
      return {x, z};
    }
    case GateKind::QFT: {
      PauliTerm r;
      r.side = (t.side == Side::Elem) ? Side::Char : Side::Elem;
      r.phase = t.phase;
      if (t.kind == PKind::X) {
        r.kind = PKind::Z;
        r.param = t.param;
      } else {
        r.kind = PKind::X;
        r.param = sv.conj_dual(t.param);
      }
      return {r};
    }
  }
  throw Error("Unsupported", "unknown gate kind");
}

std::pair<bool, bool> css_invertible_flags(const HypergroupTable& T, const CharacterTable& C,
                                           const CssStabilizer& st) {
  SpaceView sv{&T, &C, st.side};
  return {sv.invertible_pt(st.s), sv.invertible_dual(st.sig)};
}

StabilizedSpace css_normal_form(const HypergroupTable& T, const CharacterTable& C,
                                const CssStabilizer& st, const DualTable* D) {
  SpaceView sv{&T, &C, st.side};
  int n = sv.n();
  SideCosets sc = side_cosets(sv, st.members);
  const std::vector<int>& sN = sc.classes[sc.class_of[st.s]];
  auto [s_inv, sig_inv] = css_invertible_flags(T, C, st);

  if (s_inv || sig_inv) {
    int sigbar = sv.conj_dual(st.sig);
    double coset_w = 0;
    for (int x : sN) coset_w += sv.weight(x);
    double wN = 0;
    for (int a : st.members) wN += sv.weight(a);
    double du = 0;
    for (int d : sc.dual_classes[sc.dual_class_of[sigbar]]) du += sv.weight_dual(d);
    double u = du * wN / sv.total();  // dual-coset weight of sigbar's class
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    for (int x : sN) v(x) = std::sqrt(sv.weight(x) * u / coset_w) * sv.eval(sigbar, x);
    double nrm = v.norm();
    if (nrm < 1e-10) throw Error("EmptySpace", "closed-form stabilized state vanished");
    StabilizedSpace out;
    out.dim = 1;
    out.basis = v / nrm;
    return out;
  }

  // Neither parameter invertible: span of psi_y(x) = sqrt(w_x) *
  // sum_{b in N} n(x, ybar -> b) X_sigbar(b) over y in the coset of s.
  const HypergroupTable* prod = nullptr;
  if (st.side == Side::Elem) {
    prod = &T;
  } else {
    if (!D)
      throw Error("Unsupported",
                  "character-side stabilized space without an invertible parameter "
                  "needs the dual structure constants");
    prod = &D->table;
  }
  int sigbar = sv.conj_dual(st.sig);
  std::vector<char> inN(n, 0);
  for (int a : st.members) inN[a] = 1;
  Eigen::MatrixXcd Psi = Eigen::MatrixXcd::Zero(n, int(sN.size()));
  for (size_t j = 0; j < sN.size(); ++j) {
    int ybar = sv.conj_pt(sN[j]);
    for (int x = 0; x < n; ++x) {
      complex acc = 0;
      for (const Term& e : prod->pairs(x, ybar))
        if (inN[e.c]) acc += e.v * sv.eval(sigbar, e.c);
      Psi(x, int(j)) = std::sqrt(sv.weight(x)) * acc;
    }
  }
  if (Psi.norm() < 1e-10)
    throw Error("EmptySpace", "all spanning functions vanished (inconsistent eigenvalues)");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Psi, Eigen::ComputeThinU);
  double cut = 1e-7 * std::max(1.0, svd.singularValues()(0));
  int rank = 0;
  while (rank < svd.singularValues().size() && svd.singularValues()(rank) > cut) ++rank;
  if (rank == 0)
    throw Error("EmptySpace", "all spanning functions vanished (inconsistent eigenvalues)");
  StabilizedSpace out;
  out.dim = rank;
  out.basis = svd.matrixU().leftCols(rank);
  return out;
}

Eigen::VectorXcd canonical_css_state(const HypergroupTable& T, const CharacterTable& C,
                                     const CssStabilizer& st) {
  auto [s_inv, sig_inv] = css_invertible_flags(T, C, st);
  if (!s_inv && !sig_inv)
    throw Error("Unsupported", "closed form needs an invertible coset label or character");
  return css_normal_form(T, C, st).basis.col(0);
}

void css_dense_generators(const HypergroupTable& T, const CharacterTable& C,
                          const CssStabilizer& st, const DualTable* D,
                          std::vector<Eigen::MatrixXcd>& gens, std::vector<complex>& lam) {
  SpaceView sv{&T, &C, st.side};
  gens.clear();
  lam.clear();
  for (int a : st.members) {
    gens.push_back(dense_pauli(T, C, PauliTerm{st.side, PKind::X, a, 1.0}, D));
    lam.push_back(sv.eval(st.sig, a));
  }
  for (int d = 0; d < sv.n(); ++d) {
    bool ann = true;
    for (int a : st.members)
      if (std::abs(sv.eval(d, a) - 1.0) > 1e-6) { ann = false; break; }
    if (!ann) continue;
    gens.push_back(dense_pauli(T, C, PauliTerm{st.side, PKind::Z, d, 1.0}, D));
    lam.push_back(sv.eval(d, st.s));
  }
}

StabilizedSpace dense_stabilized_space(int dim, const std::vector<Eigen::MatrixXcd>& gens,
                                       const std::vector<complex>& lam, double svd_tol) {
  Eigen::MatrixXcd B = Eigen::MatrixXcd::Identity(dim, dim);
  for (size_t i = 0; i < gens.size() && B.cols() > 0; ++i) {
    Eigen::MatrixXcd A =
        gens[i] * B - lam[i] * B;  // constraint restricted to the current span
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
    double top = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    double cut = svd_tol * std::max(1.0, top);
    int rank = 0;
    while (rank < svd.singularValues().size() && svd.singularValues()(rank) > cut) ++rank;
    // Kernel of A within the span: trailing right-singular directions.
    B = B * svd.matrixV().rightCols(B.cols() - rank);
  }
  StabilizedSpace out;
  out.dim = int(B.cols());
  out.basis = B;
  return out;
}

CosetSplit coset_probabilities(const HypergroupTable& T, const SubhypergroupView& N,
                               const Eigen::VectorXcd& psi) {
  CosetSplit cs;
  cs.coset_of.assign(T.size, -1);
  for (int a = 0; a < T.size; ++a) {
    if (cs.coset_of[a] >= 0) continue;
    std::vector<int> c = coset(T, N, a);
    for (int x : c) cs.coset_of[x] = int(cs.cosets.size());
    cs.cosets.push_back(std::move(c));
  }
  cs.prob.assign(cs.cosets.size(), 0.0);
  for (int x = 0; x < T.size; ++x) cs.prob[cs.coset_of[x]] += std::norm(psi(x));
  return cs;
}

SyndromeOutcome syndrome_measure_Z(const HypergroupTable& T, const SubhypergroupView& N,
                                   const Eigen::VectorXcd& psi, std::mt19937_64& rng) {
  CosetSplit cs = coset_probabilities(T, N, psi);
  double u = double(rng() >> 11) * 0x1.0p-53;
  int pick = -1;
  double acc = 0;
  for (size_t i = 0; i < cs.prob.size(); ++i) {
    acc += cs.prob[i];
    if (u < acc && cs.prob[i] > 0) { pick = int(i); break; }
  }
  if (pick < 0) {  // numerical slack: fall back to the heaviest coset
    pick = int(std::max_element(cs.prob.begin(), cs.prob.end()) - cs.prob.begin());
  }
  SyndromeOutcome out;
  out.coset = pick;
  out.prob = cs.prob[pick];
  out.post = Eigen::VectorXcd::Zero(T.size);
  for (int x : cs.cosets[pick]) out.post(x) = psi(x);
  out.post /= out.post.norm();
  return out;
}

}  // namespace hyperstab
