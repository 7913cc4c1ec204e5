#pragma once
// Finite abelian hypergroups as validated structure-constant tables.
//
// A hypergroup here is a finite carrier {0..n-1} with a commutative
// "collision" product a*b = sum_c n(a,b->c) c, where each n(a,b->c) >= 0 and
// sum_c n(a,b->c) = 1.  There is an identity e, an involution a -> abar with
// n(a,abar->e) > 0, and weights w_a = 1/n(a,abar->e).  Conjugacy classes of a
// finite group under class multiplication are the motivating example; abelian
// groups are the special case where every product has a single outcome.

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperstab/rational.h"

namespace hyperstab {

using complex = std::complex<double>;

// Default comparison tolerance: 1e-9, overridable via HYPERSTAB_TOL.
double default_tol();

// Library errors carry a short machine-readable kind ("CapExceeded",
// "DegenerateSpectrum", ...) plus a human message.
struct Error : std::runtime_error {
  std::string kind;
  Error(std::string k, const std::string& msg)
      : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};

// One nonzero structure constant: n(a,b->c) = v (= r when the table is exact).
struct Term {
  int c = 0;
  double v = 0;
  Rat r;
};

struct HypergroupTable {
  std::string name;
  int size = 0;
  int identity = 0;
  std::vector<int> involution;      // a -> abar
  std::vector<std::string> labels;  // element display names
  bool exact = false;               // every constant is a stored rational

  // CSR storage of the rank-3 tensor: entries for the pair (a,b) live in
  // terms[off[a*size+b] .. off[a*size+b+1]).  Dense n^3 storage would be
  // hopeless for the largest catalog table (991 classes).
  std::vector<uint32_t> off;
  std::vector<Term> terms;

  std::vector<double> weight;    // w_a
  std::vector<Rat> weight_exact; // valid when exact
  double total_weight = 0;       // sum of w_a
  double tol = 1e-9;

  std::span<const Term> pairs(int a, int b) const {
    size_t k = size_t(a) * size + b;
    return {terms.data() + off[k], terms.data() + off[k + 1]};
  }
  double n3(int a, int b, int c) const;
  Rat n3_exact(int a, int b, int c) const;
  bool invertible(int a) const { return std::abs(weight[a] - 1.0) <= tol; }
  const std::string& label(int a) const { return labels[a]; }
};

// Sparse triple used when assembling tables.
struct Triple {
  int a, b, c;
  double v;
  Rat r;
  bool exact;
};

// Build a table from triples; derives identity (when identity < 0) and the
// involution (when `involution` is empty) from the table itself.  Throws
// Error("Malformed", ...) on an empty carrier or when derivation fails; an
// explicitly supplied identity/involution is accepted as-is so that broken
// tables can still be constructed and then reported on by validate().
// Labels default to x0..x{n-1}.
HypergroupTable make_hypergroup(std::string name, int size,
                                const std::vector<Triple>& triples,
                                int identity = -1,
                                std::vector<int> involution = {},
                                std::vector<std::string> labels = {},
                                double tol = -1);

struct AxiomResult {
  std::string axiom;
  bool pass = false;
  double residual = 0;
};

struct ValidationReport {
  bool ok = false;
  double max_residual = 0;
  std::vector<AxiomResult> axioms;
};

// Checks every hypergroup axiom (commutativity, associativity, normalization,
// identity, anti-element, reversibility, involution compatibility, weight
// consistency).  Exact tables are checked in rational arithmetic (residual 0
// or fail).  For carriers larger than `assoc_full_limit` the associativity
// check runs on a deterministic sample of triples and says so in the report.
ValidationReport validate(const HypergroupTable& T, int assoc_full_limit = 64);

// Support of a*b: all (c, n(a,b->c)) with coefficient > tol.
std::vector<std::pair<int, double>> product_support(const HypergroupTable& T, int a, int b);

struct SubhypergroupView {
  const HypergroupTable* parent = nullptr;
  std::vector<int> members;  // sorted, contains identity
  double weight_sum = 0;     // total weight of the members
};

// Smallest subhypergroup containing `seed` (plus the identity), closed under
// involution and product support.
SubhypergroupView closure(const HypergroupTable& T, const std::vector<int>& seed);

// Wrap an explicit member set (sorted/deduped here) as a view; no closure
// check — use is_closed_subhypergroup when that matters.
SubhypergroupView subhypergroup_view(const HypergroupTable& T, std::vector<int> members);

bool is_closed_subhypergroup(const HypergroupTable& T, const std::vector<int>& members);

// Support of a*N: the coset of N containing a.
std::vector<int> coset(const HypergroupTable& T, const SubhypergroupView& N, int a);

// All subhypergroups, found by closing singletons and then repeatedly
// adjoining single elements to known subhypergroups and re-closing (complete:
// every subhypergroup arises from some generator chain).  Throws CapExceeded
// when more than max_count exist.
std::vector<SubhypergroupView> enumerate_subhypergroups(const HypergroupTable& T,
                                                        int max_count = 64);

struct QuotientTable {
  HypergroupTable table;                // carrier = cosets
  std::vector<std::vector<int>> cosets; // disjoint, cover the parent
  std::vector<int> coset_of;            // parent element -> coset index
};

// Quotient T/N: cosets as elements, r(aN,bN->cN) = sum over cN of n(a,b->c),
// checked to be representative-independent (RepresentativeInconsistency).
QuotientTable quotient(const HypergroupTable& T, const SubhypergroupView& N);

struct HypergroupMorphism {
  const HypergroupTable* source = nullptr;
  const HypergroupTable* target = nullptr;
  std::vector<int> map;
};

// Validates f as an automorphism of T (bijective, preserves identity,
// involution, and all structure constants within tol).
bool is_automorphism(const HypergroupTable& T, const std::vector<int>& map, double* residual = nullptr);

// Validates a map into the invertible elements of the target: f(e)=e,
// f(abar)=f(a)bar, and f(c) = f(a)*f(b) for every c in supp(a*b).
// Throws Error("Unsupported", ...) when the target values are not invertible.
bool is_morphism_into_invertibles(const HypergroupTable& S, const HypergroupTable& T,
                                  const std::vector<int>& map);

// All automorphisms of T, by backtracking with weight/involution pruning.
std::vector<std::vector<int>> enumerate_automorphisms(const HypergroupTable& T,
                                                      size_t cap = 4096);

// Isomorphism A -> B as an index map, or empty if none exists.
std::vector<int> find_isomorphism(const HypergroupTable& A, const HypergroupTable& B);

// Tensor product: carrier = pairs (row-major a*|B|+b), constants multiply.
HypergroupTable tensor_product(const HypergroupTable& A, const HypergroupTable& B,
                               const std::string& name = "");

}  // namespace hyperstab
