#pragma once
// Hidden-subhypergroup Fourier sampling.
//
// The simulated quantum routine: start from the trivial-character state,
// inverse-QFT into the weighted superposition over the carrier, evaluate a
// hiding oracle and discard its value -- projecting onto a random coset of
// the hidden subhypergroup N with probability proportional to the coset's
// total weight -- then QFT and measure a character label.  The outcome law
// is
//   Pr(X_mu) = w_Xmu * sum_{cosets aN} (w_aN / W_{T/N})^2 |X_mu(a)|^2,
// supported on the annihilator of N.  Intersecting the kernels of sampled
// characters recovers N when that law cooperates; it does not always (for
// the Heisenberg groups it concentrates on characters whose kernels all
// contain the center).  The adaptive algorithm below restricts sampling to
// progressively smaller subhypergroups K, where for class hypergroups of
// p-groups the trivial outcome has probability <= 1/2 until K reaches N.
//
// Oracles are plain label functions on class indices.  The algorithms see
// nothing else: level sets are observed by evaluating the oracle across the
// current space, never by peeking at the hidden subhypergroup.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hyperstab/characters.h"
#include "hyperstab/group.h"
#include "hyperstab/hypergroup.h"

namespace hyperstab {

// Probability per outcome index: ambient character indices for the full-space
// laws, dual-coset indices for the restricted ones.
struct OutcomeDistribution {
  std::vector<double> prob;
  int trivial = 0;  // index of the trivial outcome
};

double trivial_character_probability(const OutcomeDistribution& d);

// One sampling round.  `space` indexes AlgorithmTrace::spaces; `probs` is the
// exact law the outcome was drawn from (`trivial` marks its trivial entry);
// `kernel` is the sampled character's kernel within the round's space.
// akr_run records the conditional character law given the measured coset;
// nilpotent_run records the level's mixture law over dual cosets.
struct RoundRecord {
  int space = 0;
  int level = 0;  // restrictions performed before this round
  std::vector<double> probs;
  int trivial = 0;
  int sample = -1;
  std::vector<int> kernel;
};

struct AlgorithmTrace {
  // Restriction chain; strictly decreasing along each descent (adaptive runs
  // over a direct-product decomposition restart the chain per factor, and
  // recursive runs store subgroup elements instead of class indices).
  std::vector<std::vector<int>> spaces;
  std::vector<RoundRecord> rounds;
  std::vector<int> answer;           // final subhypergroup, class indices
  std::vector<int> answer_elements;  // group elements when a group context exists
  long long oracle_calls = 0;        // classical label evaluations performed
  uint64_t seed = 0;
};

// Canonical hiding oracle for a subhypergroup: label(a) = smallest member of
// the coset aN, so the level sets are exactly the cosets of N.
std::vector<int> coset_labels(const HypergroupTable& T, const SubhypergroupView& N);

// Analytic outcome law of one full-space sampling round against hidden N.
// Zero off the annihilator of N; sums to 1.  Throws Malformed when N is not
// closed.
OutcomeDistribution akr_distribution(const HypergroupTable& T, const CharacterTable& C,
                                     const SubhypergroupView& N);

// Full-space sampling run: observe the oracle's level sets, then per round
// draw a coset with probability weight(coset)/W, draw a character from the
// dense conditional law |<X_mu|F|coset>|^2, and intersect kernels.  `answer`
// is the set of classes lying in every sampled kernel (all classes when
// samples == 0).  Reproducible from `seed`.
AlgorithmTrace akr_run(const HypergroupTable& T, const CharacterTable& C,
                       const std::function<int(int)>& oracle, int samples, uint64_t seed);

// Characters of a subhypergroup K presented as cosets of its annihilator in
// the ambient dual: two ambient characters lie in the same coset exactly when
// they restrict equally to K.  Carries the restricted QFT
//   F(j, i) = sqrt(w_{K[i]} * coset_weight[j] / W_K) * X_j(K[i]),
// which is unitary, and the isometry embedding each coset state
// sum_{mu in coset} sqrt(w_Xmu / W_coset) |X_mu> into the ambient character
// basis; the ambient QFT restricted to K factors through these columns.
// Throws IllConditioned when the restrictions fail to split into |K| cosets.
struct DualCosetBasis {
  std::vector<int> members;              // K's classes, sorted
  std::vector<std::vector<int>> cosets;  // ambient character indices, by coset
  std::vector<int> rep;                  // smallest ambient index per coset
  std::vector<int> coset_of;             // ambient character -> coset
  std::vector<double> coset_weight;      // character weights of K's dual
  int trivial = 0;                       // coset containing the trivial character
  Eigen::MatrixXcd qft;                  // cosets x members
  Eigen::MatrixXcd embed;                // ambient characters x cosets
};
DualCosetBasis subhypergroup_coset_basis(const HypergroupTable& T, const CharacterTable& C,
                                         const SubhypergroupView& K);

// Outcome law of one sampling round run inside K: prepare the weighted
// superposition over K's classes, evaluate the oracle and discard, measure in
// the dual coset basis.  Entries index subhypergroup_coset_basis(T,C,K)
// cosets.  `oracle_calls`, when given, is incremented per label evaluation.
OutcomeDistribution restricted_distribution(const HypergroupTable& T, const CharacterTable& C,
                                            const SubhypergroupView& K,
                                            const std::function<int(int)>& oracle,
                                            long long* oracle_calls = nullptr);

// Classes of K on which X_nu is 1 (within tol), as a subhypergroup.  Kernels
// of genuine characters are closed; a non-closed result signals numerical
// failure and throws NotClosed.
SubhypergroupView kernel_restricted(const HypergroupTable& T, const CharacterTable& C,
                                    int nu, const SubhypergroupView& K, double tol = 1e-6);

// Adaptive run for class hypergroups of p-groups, and of nilpotent groups
// when `decomposition` lists the internal direct factors (element sets, one
// p-group per prime).  Per factor: maintain K (initially the factor's
// classes); each round draw from the restricted law over K; a nontrivial
// sample shrinks K to the sampled character's kernel; after
// `repeats_per_round` consecutive trivial samples K is accepted.  Factor
// answers combine by closure.  The default draws each round directly from
// the exact mixture law; shot_mode draws coset-then-character through the
// same conditionals instead (identical law, noisier path).  Throws
// MissingDecomposition when |G| is not a prime power and no decomposition is
// given, NotPGroup when a factor's order is not a prime power, Malformed for
// structurally invalid decompositions.
AlgorithmTrace nilpotent_run(const FiniteGroup& G, const ClassTable& CT,
                             const CharacterTable& C,
                             const std::function<int(int)>& oracle,
                             int repeats_per_round, uint64_t seed,
                             const std::vector<std::vector<int>>& decomposition = {},
                             bool shot_mode = false);

// One descent step of the recursive algorithm works on the subgroup K as a
// group in its own right; the caller's factory supplies a fresh class-label
// oracle for each K encountered (empty function -> OracleUnavailable).
struct SubgroupProblem {
  FiniteGroup group;          // K with a local dense table
  ClassTable classes;         // K's own class hypergroup
  std::vector<int> elements;  // K's elements as original-group indices
};
using OracleFactory = std::function<std::function<int(int)>(const SubgroupProblem&)>;

// Recursive descent: run `samples_per_level` full-space rounds over Conj(K),
// replace K by the intersection of the sampled kernels, and stop when a full
// level samples only the trivial character (the intersection is then K
// itself).  See AlgorithmTrace for how these runs fill the trace.
AlgorithmTrace recursive_subgroup_run(const FiniteGroup& G, const OracleFactory& factory,
                                      int samples_per_level, uint64_t seed);

// Outcome law of the same experiment run in the |G|-dimensional group space:
// uniform superposition over G, oracle evaluation and discard (projecting
// onto a union-of-classes level set), then resolution against the embedded
// character states.  For class-function oracles this equals akr_distribution
// on Conj(G); the conjugation-invariant subspace carries the whole state.
OutcomeDistribution hrt_embedded_distribution(const FiniteGroup& G, const ConjugacyPartition& P,
                                              const HypergroupTable& T, const CharacterTable& C,
                                              const std::function<int(int)>& oracle);

// Trivial-outcome mass of the restricted law at subhypergroup K with a
// trivial hidden subhypergroup, sum over K of (w_C / W_K)^2 -- the quantity
// whose distance from 1 decides whether adaptive descent makes progress.
struct SubhypergroupCheck {
  std::string hypergroup;    // catalog hypergroup name
  std::vector<int> members;  // the subhypergroup K
  double trivial_prob = 0;
  bool bound_applies = false;  // K larger than {e}: descent is expected to progress
};

// Sweep the dihedral catalog (every subhypergroup of each conj-d4..conj-d32)
// and the affine catalog (K = commutator subgroup of affine p=5,7,13): the
// dihedral rows stay <= 2/3, while the affine rows exceed it -- one nearly
// full-weight class makes the trivial outcome dominate, the failure mode of
// the descent.  Report only; callers assert.
struct DihedralAffineReport {
  std::vector<SubhypergroupCheck> dihedral;
  double dihedral_max = 0;  // over rows with bound_applies
  bool dihedral_ok = false; // dihedral_max <= 2/3
  std::vector<SubhypergroupCheck> affine;
};
DihedralAffineReport dihedral_and_affine_checks();

// Independent seeded runs i = 0..runs-1 with seeds seed0+i; `jobs` > 1
// splits them across threads (results identical either way).
std::vector<AlgorithmTrace> seeded_sweep(int runs, uint64_t seed0, int jobs,
                                         const std::function<AlgorithmTrace(uint64_t)>& run);

}  // namespace hyperstab
