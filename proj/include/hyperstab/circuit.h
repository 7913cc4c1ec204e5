#pragma once
// Normalizer circuits over finite abelian hypergroups.
//
// A circuit acts on registers whose basis can be the hypergroup itself or its
// character set; every quantum Fourier transform flips that per-register tag.
// Gate parameters are always read against the tags at the gate's position.
// Alongside exact dense simulation (the oracle) the module offers a symbolic
// CSS stabilizer tracker, a monomial-times-QFT normal form, and a classical
// outcome sampler, all desk-scale.

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "hyperstab/characters.h"
#include "hyperstab/hypergroup.h"
#include "hyperstab/pauli.h"

namespace hyperstab {

// One circuit wire.  `dual` may be left null; dual tables are then computed
// once per distinct table and cached for the life of the process, so the
// pointed-to tables must stay alive that long (catalog tables do).
struct Register {
  const HypergroupTable* table = nullptr;
  const CharacterTable* chars = nullptr;
  const DualTable* dual = nullptr;
};

enum class CGate { PauliX, PauliZ, Automorphism, Quadratic, QFT, PartialQFT };

struct CircuitGate {
  CGate kind = CGate::QFT;
  std::vector<int> regs;    // targets; empty for the global QFT
  int param = -1;           // PauliX point / PauliZ dual index on the target
  std::vector<int> map;     // automorphism of the targets' product, row-major
  std::vector<complex> xi;  // quadratic phase values over the targets' product
};

// The register's dual table: the supplied one, or a cached computation.
const DualTable& register_dual(const Register& r);

CircuitGate gate_px(int reg, int elem);
CircuitGate gate_pz(int reg, int chr);
CircuitGate gate_auto(std::vector<int> regs, std::vector<int> map);
CircuitGate gate_quad(std::vector<int> regs, std::vector<complex> xi);
CircuitGate gate_qft();
CircuitGate gate_pqft(int reg);

struct Circuit {
  std::vector<Register> regs;
  std::vector<Side> initial_tags;  // basis of each register at time zero
  std::vector<CircuitGate> gates;
};

// Row-major flattening of per-register indices, matching tensor_product.
int product_index(const std::vector<int>& sizes, const std::vector<int>& tuple);
std::vector<int> product_tuple(const std::vector<int>& sizes, int index);

// The product space of the registers' current bases: a tag of Elem
// contributes the register's own table, Char the dual hypergroup on its
// characters.  `chars` is synthesized componentwise, so character index k of
// this space equals point index k of the opposite-tag space, which is what
// makes the QFT bookkeeping a pure relabeling.
struct ProductSpace {
  HypergroupTable table;
  CharacterTable chars;
  std::vector<int> sizes;
  std::vector<Side> tags;
};
void build_product_space(const Circuit& c, const std::vector<Side>& tags, ProductSpace* out);

struct CircuitReport {
  bool ok = true;
  std::vector<Side> final_tags;
  std::vector<std::string> problems;  // one line per finding, with gate index
};

// Replays basis tags through the gate list and flags out-of-range targets,
// parameter/basis mismatches, non-invertible Pauli parameters, non-bijective
// or non-structure-preserving automorphisms, and non-quadratic phase tables.
// Report-valued: never throws.
CircuitReport validate_circuit(const Circuit& c);

struct DenseState {
  Eigen::VectorXcd amps;
  std::vector<Side> tags;
};

// Exact state-vector simulation from a basis-state input (one label per
// register, read against the initial tags).  Throws CapExceeded when the
// product dimension exceeds `cap`, Unsupported on a non-invertible Pauli
// parameter, Malformed on bad input labels.
DenseState simulate_dense(const Circuit& c, const std::vector<int>& input, int cap = 4096);

// Full circuit unitary, one simulate_dense per basis column.
Eigen::MatrixXcd dense_unitary(const Circuit& c, int cap = 4096);

// A unit-modulus function that is quadratic: constant on every product
// support, with defect B(a,b) = xi(ab)/(xi(a)xi(b)) a character in each
// argument, realized by a homomorphism beta into the invertible characters
// (B(a,b) = X_{beta(a)}(b)).
struct QuadraticFunction {
  std::vector<complex> xi;
  std::vector<std::vector<complex>> pairing;  // B(a,b)
  std::vector<int> beta;                      // invertible character indices
  double max_residual = 0;
};

// Checks the three quadraticity identities and extracts B and beta.  Throws
// NotQuadratic naming the first violated identity.
QuadraticFunction validate_quadratic(const HypergroupTable& T, const CharacterTable& C,
                                     const std::vector<complex>& xi);

// Initial stabilizer triple of the basis state |idx> of one register.
CssStabilizer basis_point_stabilizer(const Register& r, Side tag, int idx);

// Symbolic circuit output: a CSS triple over the final product space (side
// Elem relative to that space) plus any trailing diagonal gates that were
// absorbed rather than tracked.
struct TrackedCss {
  std::vector<Side> tags;
  std::vector<int> members;
  int s = 0;
  int sig = 0;
  std::vector<CircuitGate> trailing;
};

// Tracks one CSS triple per register (sides must match the initial tags)
// through global QFTs, automorphisms, and Pauli gates.  A quadratic gate is
// accepted only when every gate from it onward is diagonal; those gates land
// in `trailing`.  Throws UnsupportedGate otherwise (partial QFTs included,
// except on single-register circuits where they are the global QFT).
TrackedCss track_stabilizers(const Circuit& c, const std::vector<CssStabilizer>& inputs);

// Dense state described by a tracked triple: the canonical stabilized state
// with the trailing diagonal gates applied.
Eigen::VectorXcd tracked_state(const Circuit& c, const TrackedCss& t, int cap = 4096);

// C = P . A . F: Pauli terms (first entry applied last), one product
// automorphism, and at most one global QFT, all over the final product space.
struct NormalForm {
  std::vector<Side> final_tags;
  bool has_qft = false;
  std::vector<PauliTerm> paulis;
  std::vector<int> perm;
};

// Rewrites a global-QFT/automorphism/Pauli circuit into the layered form by
// conjugating every prefix gate leftward; consecutive QFT pairs collapse into
// the basis involution.  Throws UnsupportedGate on quadratic gates and on
// partial QFTs over more than one register.
NormalForm normal_form(const Circuit& c);

// Exact final-basis measurement distribution over product indices, computed
// classically from the normal form: the per-register post-QFT distributions
// pushed through the monomial layer's permutation.  Trailing diagonal gates
// are ignored (they do not move probability).  Throws like normal_form, plus
// CapExceeded past `cap`.
std::vector<double> outcome_distribution(const Circuit& c, const std::vector<int>& input,
                                         int cap = 4096);

struct ShotCounts {
  std::vector<Side> tags;
  std::vector<std::vector<int>> outcomes;  // distinct outcome tuples, sorted
  std::vector<long long> counts;
};

// Draws `shots` samples from the same distribution without materializing it
// register-by-register.  Deterministic for fixed (seed, jobs); jobs > 1
// splits the shots across parallel workers with derived seeds.
ShotCounts sample_outcomes(const Circuit& c, const std::vector<int>& input, long long shots,
                           uint64_t seed, int jobs = 1);

}  // namespace hyperstab
