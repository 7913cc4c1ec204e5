#pragma once
// Characters of a finite abelian hypergroup and the dual hypergroup T*.
//
// A character is a nonzero function X: T -> C with
//   X(a) X(b) = sum_c n(a,b->c) X(c).
// There are exactly |T| of them; they carry weights
//   w_X = W / sum_a w_a |X(a)|^2
// and the pointwise products X_mu X_nu expand back in the character basis
// with coefficients m[mu][nu][gamma] that form the (possibly signed) dual
// hypergroup.

#include <cstdint>
#include <vector>

#include "hyperstab/hypergroup.h"

namespace hyperstab {

struct CharacterTable {
  const HypergroupTable* parent = nullptr;
  int size = 0;                            // number of characters == |T|
  std::vector<std::vector<complex>> chi;   // chi[mu][a]
  std::vector<double> char_weight;         // w_Xmu
  int trivial = 0;                         // index of the all-ones row
  std::vector<int> conj;                   // mu -> index of conj(X_mu)
  double max_residual = 0;                 // worst character-equation residual seen
};

// Simultaneously diagonalizes the regular-representation multiplication
// matrices via one random combination (conjugate-paired coefficients make the
// weighted combination Hermitian), reads one character off each eigenvector,
// and orders rows trivial-first then lexicographically by rounded values.
// Deterministic for a fixed seed.  Throws DegenerateSpectrum when eigenvalue
// clusters persist after the retry budget.
CharacterTable compute_characters(const HypergroupTable& T, uint64_t seed = 0x5eedf00d);

// Max residual of the character equation over all (mu, a, b); full scan for
// |T| <= pair_full_limit, deterministic sampling above.
double character_equation_residual(const HypergroupTable& T, const CharacterTable& C,
                                   int pair_full_limit = 64);

struct OrthogonalityReport {
  bool ok = false;
  double row_residual = 0;        // pairwise character orthogonality
  double sub_restriction = 0;     // restriction sums over subhypergroups
  double sub_dual = 0;            // annihilator sums against coset indicators
};

// Verifies: (a) sum_a (w_a/W) X_mu(a) conj X_nu(a) = delta/w_Xmu; for every
// enumerated subhypergroup N, (b) the N-restricted sums detect equality of
// restrictions, and (c) sums over the annihilator detect coset equality with
// value W/weight(xN).
OrthogonalityReport verify_orthogonality(const HypergroupTable& T, const CharacterTable& C,
                                         int max_subhypergroups = 64);

struct DualTable {
  HypergroupTable table;    // carrier = character indices, float constants
  bool signed_flag = false; // some m < -tol
  double max_imag = 0;      // largest imaginary part dropped from m
  double solve_residual = 0;// worst pointwise-product reconstruction residual
};

// m[mu][nu][gamma] = (w_Xgamma / W) sum_a w_a conj(X_gamma(a)) X_mu(a) X_nu(a);
// throws IllConditioned when products fail to reconstruct within tolerance.
DualTable dual_hypergroup(const HypergroupTable& T, const CharacterTable& C);

// Matches each a to the dual-dual character row mu -> conj(X_mu(a)).
// Throws NoMatch when a row is missing or ambiguous.
std::vector<int> double_dual_iso(const HypergroupTable& T, const CharacterTable& C,
                                 const DualTable& D);

// Character indices mu with |X_mu(a) - 1| <= tol for all members a.
std::vector<int> annihilator(const HypergroupTable& T, const CharacterTable& C,
                             const std::vector<int>& members);

}  // namespace hyperstab
