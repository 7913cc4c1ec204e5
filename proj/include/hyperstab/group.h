#pragma once
// Finite groups as dense multiplication tables (or an explicit product law
// for the one catalog group too large to tabulate), their conjugacy-class
// hypergroups, irrep data recovered from hypergroup characters, and oracle
// wrappers that turn functions on a group into label functions on classes.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hyperstab/characters.h"
#include "hyperstab/hypergroup.h"

namespace hyperstab {

inline constexpr int kDenseGroupCap = 5000;

struct FiniteGroup {
  std::string name;
  int order = 0;
  int identity = 0;
  std::vector<int> inverse;         // g -> g^-1
  std::vector<int> generators;      // may be empty = treat every element as one
  std::vector<std::string> labels;  // element display names
  std::vector<int> table;           // dense law, built whenever order <= cap
  std::function<int(int, int)> law; // used when the table is absent

  int mul(int a, int b) const {
    return table.empty() ? law(a, b) : table[size_t(a) * order + b];
  }
  const std::string& label(int g) const { return labels[g]; }
};

// Dense table input; checks the group axioms (associativity fully up to
// order 256, on a deterministic sample above).  Throws Error("Malformed").
FiniteGroup group_from_table(std::string name, int order, std::vector<int> table,
                             std::vector<std::string> labels = {});

// Product law input; identity/inverse behavior is verified on the whole
// carrier and associativity on a deterministic sample.  A dense table is
// tabulated when order <= kDenseGroupCap; larger groups keep the law and
// must supply `inv` and `generators`.
FiniteGroup group_from_law(std::string name, int order, int identity,
                           std::function<int(int, int)> law,
                           std::function<int(int)> inv = nullptr,
                           std::vector<int> generators = {},
                           std::vector<std::string> labels = {});

// Closure of permutation generators over a common domain under composition.
// Throws Error("CapExceeded") past `cap` elements.
FiniteGroup from_permutation_generators(const std::vector<std::vector<int>>& gens,
                                        std::string name = "", int cap = kDenseGroupCap);

FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B,
                           std::string name = "");

struct ConjugacyPartition {
  std::vector<std::vector<int>> classes;  // ascending members; identity class first
  std::vector<int> representative;        // smallest member of each class
  std::vector<int> class_of;              // element -> class index
  std::vector<int> pos_of;                // element -> position inside its class
  int element(int cls, int pos) const { return classes[cls][pos]; }
};

ConjugacyPartition conjugacy_partition(const FiniteGroup& G);

// Exact class structure constants n(C,D->E) = #{c in C : c^-1 e0 in D} |E| /
// (|C||D|).  The two kernels return identical triples; the parallel one
// splits the (C,E) loop across threads.
std::vector<Triple> class_constants_serial(const FiniteGroup& G, const ConjugacyPartition& P);
std::vector<Triple> class_constants_parallel(const FiniteGroup& G, const ConjugacyPartition& P);

struct ClassTable {
  HypergroupTable table;
  ConjugacyPartition part;
};

// Conjugacy-class hypergroup: weights are the class sizes.
ClassTable class_hypergroup(const FiniteGroup& G);

// Quotient group G/N by a normal subgroup given as an element set.
// Throws Error("Malformed") when N is not a normal subgroup.
FiniteGroup quotient_group(const FiniteGroup& G, const std::vector<int>& members,
                           std::string name = "");

struct IrrepData {
  std::vector<int> dim;                   // d_mu = sqrt of the character weight
  std::vector<std::vector<complex>> chi;  // full irrep character d_mu * X_mu per class
};

// Recovers irrep dimensions from character weights; requires |d^2 - w| <= eps
// and sum d^2 = |G|.  Throws Error("NonIntegralDimension") otherwise.
IrrepData group_irrep_data(const FiniteGroup& G, const CharacterTable& C);

struct ClassOracle {
  std::function<int(int)> label;  // class index -> label
  std::vector<int> hidden;        // hidden subhypergroup as class indices (test handle)
};

// Wraps f: G -> label as an oracle on class indices.  f must be constant on
// classes (checked on representatives plus one random conjugate each) and its
// level sets must be the cosets of a subhypergroup of Conj(G).
// Throws Error("NotClassFunction") / Error("Malformed").
ClassOracle wrap_class_function_oracle(const FiniteGroup& G, const ConjugacyPartition& P,
                                       const HypergroupTable& T,
                                       const std::function<int(int)>& f,
                                       uint64_t seed = 1);

// Wraps a homomorphism f: G -> H; labels are H-class indices, the hidden
// subhypergroup is the kernel's classes.  The homomorphism property is
// checked on all pairs, or generators x all elements when generators are
// known.  Throws Error("NotHomomorphism").
ClassOracle wrap_homomorphism_oracle(const FiniteGroup& G, const ConjugacyPartition& PG,
                                     const HypergroupTable& TG,
                                     const FiniteGroup& H, const ConjugacyPartition& PH,
                                     const std::function<int(int)>& f);

// Isometries into the |G|-dimensional group space:
//   |C>    -> (1/sqrt|C|) sum_{x in C} |x>
//   |X_mu> -> (d_mu/sqrt|G|) sum_x conj(X_mu(C_x)) |x>
std::vector<complex> embed_class_state(const FiniteGroup& G, const ConjugacyPartition& P,
                                       const std::vector<complex>& amp);
std::vector<complex> embed_character_state(const FiniteGroup& G, const ConjugacyPartition& P,
                                           const CharacterTable& C,
                                           const std::vector<complex>& amp);

}  // namespace hyperstab
