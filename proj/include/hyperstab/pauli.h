#pragma once
// Hypergroup Pauli operators and CSS stabilizer triples.
//
// On a register with basis labeled by a hypergroup T (or, after a QFT, by its
// dual T*), the X-operators implement the hyperoperation,
//   X(a)|y> = sum_z sqrt(w_y/w_z) n(a,y->z) |z>,
// and the Z-operators multiply by character values.  They are commuting
// normal matrices but in general neither unitary nor monomial: X(a) is
// invertible only when a is.  Conjugation by normalizer gates (Pauli gates
// with invertible parameters, automorphisms, quadratic phases, the QFT) sends
// X/Z operators to short products of X/Z operators, which is what makes
// symbolic stabilizer tracking work.

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "hyperstab/characters.h"
#include "hyperstab/hypergroup.h"

namespace hyperstab {

// Which basis currently labels a register: elements of T or characters of T.
enum class Side { Elem, Char };

enum class PKind { X, Z };

// One symbolic Pauli factor.  The integer parameter indexes elements or
// characters depending on (side, kind):
//   (Elem, X): element a      -> X_T(a)
//   (Elem, Z): character mu   -> Z_T(X_mu)
//   (Char, X): character mu   -> X_T*(X_mu)
//   (Char, Z): element x      -> Z_T*(x), multiplication by the evaluation
//                                character X_mu -> X_mu(x) of T*
struct PauliTerm {
  Side side = Side::Elem;
  PKind kind = PKind::X;
  int param = 0;
  complex phase = 1.0;
};

enum class GateKind { PauliX, PauliZ, Automorphism, Quadratic, QFT };

// A normalizer gate over one register, read against the same basis side as
// the terms it conjugates.  Pauli parameters follow the PauliTerm convention
// and must be invertible.  `alpha` permutes the current basis.  Quadratic
// gates carry the diagonal values `xi` plus the derived homomorphism `beta`
// into invertible characters of the current space (beta[g] indexes the dual
// side, like a Z parameter).
struct Gate {
  GateKind kind = GateKind::QFT;
  int param = -1;
  std::vector<int> alpha;
  std::vector<complex> xi;
  std::vector<int> beta;
};

// Dense matrix of the defining action on the term's current basis.  X terms
// on the character side expand in the dual structure constants and need D.
Eigen::MatrixXcd dense_pauli(const HypergroupTable& T, const CharacterTable& C,
                             const PauliTerm& t, const DualTable* D = nullptr);

// X(a) and Z(X_mu) commute iff X_mu(a) = 1.
bool commutes(const HypergroupTable& T, const CharacterTable& C, int a, int mu);

// G t G^dagger as an ordered product of one or two terms (a quadratic gate
// sends an X term to [X, Z]; everything else stays a single term).  Throws
// Unsupported when a Pauli gate parameter is not invertible, NoMatch when a
// dual index (alpha^{-*} image, beta value) cannot be resolved.
std::vector<PauliTerm> conjugate_term(const HypergroupTable& T, const CharacterTable& C,
                                      const PauliTerm& t, const Gate& g);

// Maximal CSS stabilizer pair in triple form: X-constraints {X(a), a in N}
// with eigenvalues X_sig(a), Z-constraints over the annihilator of N with
// eigenvalues read at s.  Over a Char-side register the same data is read
// against T*: members/s index characters and sig indexes an element.
struct CssStabilizer {
  Side side = Side::Elem;
  std::vector<int> members;  // subhypergroup N of the current space, sorted
  int s = 0;                 // coset representative in the current space
  int sig = 0;               // dual-side index: character the X-constraints take
};

// (s invertible, sig invertible) for the triple's current side.
std::pair<bool, bool> css_invertible_flags(const HypergroupTable& T, const CharacterTable& C,
                                           const CssStabilizer& st);

struct StabilizedSpace {
  int dim = 0;
  Eigen::MatrixXcd basis;  // orthonormal columns over the current basis
};

// The space stabilized by the triple.  With s or sig invertible this is the
// unique closed-form state
//   |psi> = sum_{x in sN} sqrt(w_x * u / weight(sN)) X_sigbar(x) |x>,
// u being the dual-coset weight of X_sigbar's restriction class on N.
// Otherwise the space is spanned by the vectors
//   psi_y(x) = sqrt(w_x) sum_{b in N} n(x,ybar->b) X_sigbar(b),  y in sN,
// orthonormalized with a singular-value cutoff; the Char-side version of that
// span needs the dual structure constants D.  Throws EmptySpace when every
// psi_y vanishes.
StabilizedSpace css_normal_form(const HypergroupTable& T, const CharacterTable& C,
                                const CssStabilizer& st, const DualTable* D = nullptr);

// Just the closed-form unique state; Unsupported when neither s nor sig is
// invertible.
Eigen::VectorXcd canonical_css_state(const HypergroupTable& T, const CharacterTable& C,
                                     const CssStabilizer& st);

// Dense generator matrices and eigenvalues realizing the triple's
// constraints, for cross-checks against the symbolic normal form.
void css_dense_generators(const HypergroupTable& T, const CharacterTable& C,
                          const CssStabilizer& st, const DualTable* D,
                          std::vector<Eigen::MatrixXcd>& gens, std::vector<complex>& lam);

// Joint eigenspace: intersect ker(U - lambda I) over all generators by
// successive SVD projection (singular values below svd_tol * max(1, sigma_0)
// count as kernel).  Dimension 0 is allowed; no generators means the full
// dim-dimensional space.
StabilizedSpace dense_stabilized_space(int dim, const std::vector<Eigen::MatrixXcd>& gens,
                                       const std::vector<complex>& lam,
                                       double svd_tol = 1e-7);

// Coset decomposition of an element-basis state: disjoint cosets of N and
// the probability mass |psi|^2 each carries.
struct CosetSplit {
  std::vector<std::vector<int>> cosets;
  std::vector<int> coset_of;
  std::vector<double> prob;
};
CosetSplit coset_probabilities(const HypergroupTable& T, const SubhypergroupView& N,
                               const Eigen::VectorXcd& psi);

// Projective syndrome measurement of the Z-stabilizers of N: samples a coset
// with its |P psi|^2 probability and returns the renormalized projection.
struct SyndromeOutcome {
  int coset = 0;
  double prob = 0;
  Eigen::VectorXcd post;
};
SyndromeOutcome syndrome_measure_Z(const HypergroupTable& T, const SubhypergroupView& N,
                                   const Eigen::VectorXcd& psi, std::mt19937_64& rng);

// Index of the character whose values are the pointwise product
// X_mu * X_nu; requires one factor invertible so the product is again a
// character.  Throws NoMatch otherwise.
int char_product_index(const CharacterTable& C, int mu, int nu);

// Character index resolving a value vector over elements (and the element
// resolving a value vector over characters); exact up to `tol`, unique match
// required.  Used for dual automorphisms and beta extraction.
int character_index_of(const CharacterTable& C, const std::vector<complex>& values,
                       double tol = 1e-6);
int element_index_of(const CharacterTable& C, const std::vector<complex>& values,
                     double tol = 1e-6);

}  // namespace hyperstab
