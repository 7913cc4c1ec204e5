// Hidden-subhypergroup sampling: analytic outcome laws against a dense
// transform simulation, frozen small-case values, restricted dual bases,
// kernel intersection runs, the nilpotent descent, and the recursive
// element-level variant.
#include "doctest.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <gsl/gsl_cdf.h>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "hyperstab/catalog.h"
#include "hyperstab/characters.h"
#include "hyperstab/group.h"
#include "hyperstab/hshp.h"
#include "hyperstab/hypergroup.h"

using namespace hyperstab;

namespace {

// F with rows indexed by characters: F(mu,a) = sqrt(w~_mu w_a / W) X_mu(a).
Eigen::MatrixXcd qft_matrix(const HypergroupTable& T, const CharacterTable& C) {
  int n = T.size;
  Eigen::MatrixXcd F(n, n);
  for (int mu = 0; mu < n; ++mu)
    for (int a = 0; a < n; ++a)
      F(mu, a) = std::sqrt(C.char_weight[mu] * T.weight[a] / T.total_weight) * C.chi[mu][a];
  return F;
}

// Four-step simulation with explicit vectors: prepare each coset state of N,
// apply the dense transform, and mix the outcome laws by coset weight.
OutcomeDistribution dense_akr(const HypergroupTable& T, const CharacterTable& C,
                              const SubhypergroupView& N) {
  Eigen::MatrixXcd F = qft_matrix(T, C);
  std::vector<int> lab = coset_labels(T, N);
  std::map<int, std::vector<int>> by;
  for (int a = 0; a < T.size; ++a) by[lab[a]].push_back(a);
  OutcomeDistribution d;
  d.prob.assign(T.size, 0.0);
  d.trivial = C.trivial;
  for (const auto& [l, cos] : by) {
    double wc = 0;
    for (int y : cos) wc += T.weight[y];
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(T.size);
    for (int y : cos) psi(y) = std::sqrt(T.weight[y] / wc);
    Eigen::VectorXcd phi = F * psi;
    for (int mu = 0; mu < T.size; ++mu) d.prob[mu] += (wc / T.total_weight) * std::norm(phi(mu));
  }
  return d;
}

std::function<int(int)> label_oracle(const std::vector<int>& lab) {
  return [lab](int x) { return lab.at(size_t(x)); };
}

std::string thrown_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind;
  }
  return "none";
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double tv = 0;
  for (size_t i = 0; i < a.size(); ++i) tv += std::abs(a[i] - b[i]);
  return tv / 2;
}

// Landmarks of the quaternion class hypergroup, located structurally.
struct Q8 {
  const HypergroupTable& T = catalog_hypergroup("conj-q8");
  const CharacterTable& C = catalog_characters("conj-q8");
  int zc = -1;             // the invertible non-identity class
  std::vector<int> heavy;  // the three weight-2 classes
  int x2 = -1;             // the weight-4 character

  Q8() {
    REQUIRE(T.size == 5);
    for (int a = 0; a < 5; ++a) {
      if (a != T.identity && std::abs(T.weight[a] - 1.0) <= 1e-9) zc = a;
      if (std::abs(T.weight[a] - 2.0) <= 1e-9) heavy.push_back(a);
    }
    REQUIRE(zc >= 0);
    REQUIRE(heavy.size() == 3);
    for (int m = 0; m < 5; ++m)
      if (std::abs(C.char_weight[m] - 4.0) <= 1e-9) x2 = m;
    REQUIRE(x2 >= 0);
  }

  // The sign character that is +1 at heavy class a and -1 at the other two.
  int sig_of(int a) const {
    for (int m = 0; m < 5; ++m) {
      if (m == C.trivial || std::abs(C.char_weight[m] - 1.0) > 1e-9) continue;
      if (std::abs(C.chi[m][a] - 1.0) <= 1e-9) return m;
    }
    REQUIRE(false);
    return -1;
  }
};

}  // namespace

TEST_SUITE("hshp") {

TEST_CASE("outcome law matches a dense transform simulation on every subobject") {
  for (const char* name : {"conj-q8", "conj-heisenberg3", "conj-s3", "conj-d8",
                           "conj-d12", "z6", "z12"}) {
    const HypergroupTable& T = catalog_hypergroup(name);
    const CharacterTable& C = catalog_characters(name);
    for (const auto& N : enumerate_subhypergroups(T)) {
      OutcomeDistribution got = akr_distribution(T, C, N);
      OutcomeDistribution want = dense_akr(T, C, N);
      REQUIRE(got.prob.size() == size_t(T.size));
      CHECK(got.trivial == C.trivial);
      double sum = 0;
      for (int mu = 0; mu < T.size; ++mu) {
        CHECK(std::abs(got.prob[mu] - want.prob[mu]) <= 1e-9);
        CHECK(got.prob[mu] >= 0.0);
        sum += got.prob[mu];
      }
      CHECK(std::abs(sum - 1.0) <= 1e-9);
      // Characters not constant 1 on N never occur, exactly.
      std::set<int> ann;
      for (int mu : annihilator(T, C, N.members)) ann.insert(mu);
      for (int mu = 0; mu < T.size; ++mu)
        if (!ann.count(mu)) CHECK(got.prob[mu] == 0.0);
    }
  }
}

TEST_CASE("order-27 extraspecial law: frozen outcome values") {
  const HypergroupTable& T = catalog_hypergroup("conj-heisenberg3");
  const CharacterTable& C = catalog_characters("conj-heisenberg3");
  REQUIRE(T.size == 11);
  OutcomeDistribution d = akr_distribution(T, C, subhypergroup_view(T, {T.identity}));
  int ones = 0, threes = 0;
  double mass_ones = 0;
  for (int mu = 0; mu < T.size; ++mu) {
    if (std::abs(C.char_weight[mu] - 1.0) <= 1e-9) {
      CHECK(std::abs(d.prob[mu] - 75.0 / 729.0) <= 1e-12);
      mass_ones += d.prob[mu];
      ++ones;
    } else {
      CHECK(std::abs(C.char_weight[mu] - 9.0) <= 1e-9);
      CHECK(std::abs(d.prob[mu] - 27.0 / 729.0) <= 1e-12);
      ++threes;
    }
  }
  CHECK(ones == 9);
  CHECK(threes == 2);
  CHECK(std::abs(mass_ones - 675.0 / 729.0) <= 1e-11);
  CHECK(std::abs(trivial_character_probability(d) - 75.0 / 729.0) <= 1e-12);
}

TEST_CASE("small-case frozen outcome values") {
  Q8 q;
  // Hiding the center of the quaternions: uniform over the four sign characters.
  OutcomeDistribution dz =
      akr_distribution(q.T, q.C, subhypergroup_view(q.T, {q.T.identity, q.zc}));
  for (int mu = 0; mu < 5; ++mu) {
    if (mu == q.x2)
      CHECK(dz.prob[mu] == 0.0);
    else
      CHECK(std::abs(dz.prob[mu] - 0.25) <= 1e-12);
  }
  // Hiding the trivial subobject.
  OutcomeDistribution de = akr_distribution(q.T, q.C, subhypergroup_view(q.T, {q.T.identity}));
  for (int mu = 0; mu < 5; ++mu) {
    double want = (mu == q.x2) ? 1.0 / 8.0 : 7.0 / 32.0;
    CHECK(std::abs(de.prob[mu] - want) <= 1e-12);
  }

  const HypergroupTable& Td8 = catalog_hypergroup("conj-d8");
  const CharacterTable& Cd8 = catalog_characters("conj-d8");
  OutcomeDistribution d8 = akr_distribution(Td8, Cd8, subhypergroup_view(Td8, {Td8.identity}));
  for (int mu = 0; mu < Td8.size; ++mu) {
    double want = (std::abs(Cd8.char_weight[mu] - 4.0) <= 1e-9) ? 1.0 / 8.0 : 7.0 / 32.0;
    CHECK(std::abs(d8.prob[mu] - want) <= 1e-12);
  }

  const HypergroupTable& Ts3 = catalog_hypergroup("conj-s3");
  const CharacterTable& Cs3 = catalog_characters("conj-s3");
  OutcomeDistribution ds3 = akr_distribution(Ts3, Cs3, subhypergroup_view(Ts3, {Ts3.identity}));
  for (int mu = 0; mu < 3; ++mu) {
    double want = (std::abs(Cs3.char_weight[mu] - 4.0) <= 1e-9) ? 8.0 / 36.0 : 14.0 / 36.0;
    CHECK(std::abs(ds3.prob[mu] - want) <= 1e-12);
  }

  const HypergroupTable& Tz6 = catalog_hypergroup("z6");
  const CharacterTable& Cz6 = catalog_characters("z6");
  SubhypergroupView half = closure(Tz6, {3});
  REQUIRE(half.members == std::vector<int>({0, 3}));
  OutcomeDistribution dz6 = akr_distribution(Tz6, Cz6, half);
  int live = 0;
  for (int mu = 0; mu < 6; ++mu) {
    if (dz6.prob[mu] == 0.0) continue;
    CHECK(std::abs(dz6.prob[mu] - 1.0 / 3.0) <= 1e-12);
    ++live;
  }
  CHECK(live == 3);

  // Non-closed member sets are rejected.
  CHECK(thrown_kind([&] {
          akr_distribution(q.T, q.C, subhypergroup_view(q.T, {q.T.identity, q.heavy[0]}));
        }) == "Malformed");
}

TEST_CASE("coset labels name each coset by its smallest member") {
  const HypergroupTable& T = catalog_hypergroup("z6");
  std::vector<int> lab = coset_labels(T, closure(T, {3}));
  CHECK(lab == std::vector<int>({0, 1, 2, 0, 1, 2}));
  Q8 q;
  std::vector<int> lq = coset_labels(q.T, subhypergroup_view(q.T, {q.T.identity, q.zc}));
  // Center cosets: {1,z} and each heavy class alone.
  CHECK(lq[q.T.identity] == std::min(q.T.identity, q.zc));
  CHECK(lq[q.zc] == lq[q.T.identity]);
  for (int h : q.heavy) CHECK(lq[h] == h);
}

TEST_CASE("dual coset basis: quaternion center and extraspecial center fixtures") {
  Q8 q;
  DualCosetBasis B =
      subhypergroup_coset_basis(q.T, q.C, subhypergroup_view(q.T, {q.T.identity, q.zc}));
  REQUIRE(B.members.size() == 2);
  REQUIRE(B.cosets.size() == 2);
  CHECK(B.cosets[B.trivial].size() == 4);    // all four sign characters restrict to (1,1)
  CHECK(B.cosets[1 - B.trivial].size() == 1);
  CHECK(B.cosets[1 - B.trivial][0] == q.x2);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(B.qft(B.trivial, 0) - r) <= 1e-9);
  CHECK(std::abs(B.qft(B.trivial, 1) - r) <= 1e-9);
  CHECK(std::abs(B.qft(1 - B.trivial, 0) - r) <= 1e-9);
  CHECK(std::abs(B.qft(1 - B.trivial, 1) + r) <= 1e-9);
  CHECK(std::abs(B.coset_weight[B.trivial] - 1.0) <= 1e-9);
  CHECK(std::abs(B.coset_weight[1 - B.trivial] - 1.0) <= 1e-9);

  const HypergroupTable& Th = catalog_hypergroup("conj-heisenberg3");
  const CharacterTable& Ch = catalog_characters("conj-heisenberg3");
  std::vector<int> central;
  for (int a = 0; a < Th.size; ++a)
    if (std::abs(Th.weight[a] - 1.0) <= 1e-9) central.push_back(a);
  REQUIRE(central.size() == 3);
  DualCosetBasis Bh = subhypergroup_coset_basis(Th, Ch, subhypergroup_view(Th, central));
  REQUIRE(Bh.cosets.size() == 3);
  std::vector<size_t> sizes;
  for (const auto& c : Bh.cosets) sizes.push_back(c.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<size_t>({1, 1, 9}));
  const double s = 1.0 / std::sqrt(3.0);
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) CHECK(std::abs(std::abs(Bh.qft(j, i)) - s) <= 1e-9);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(Bh.qft(Bh.trivial, i) - s) <= 1e-9);
}

TEST_CASE("dual coset basis: unitarity, ambient compatibility, weight relation") {
  for (const char* name : {"conj-q8", "conj-d8", "conj-d12", "conj-heisenberg3",
                           "conj-s3", "conj-z3xq8", "z12"}) {
    const HypergroupTable& T = catalog_hypergroup(name);
    const CharacterTable& C = catalog_characters(name);
    Eigen::MatrixXcd F = qft_matrix(T, C);
    for (const auto& K : enumerate_subhypergroups(T)) {
      DualCosetBasis B = subhypergroup_coset_basis(T, C, K);
      const int m = int(B.members.size());
      REQUIRE(int(B.cosets.size()) == m);
      CHECK((B.qft * B.qft.adjoint() - Eigen::MatrixXcd::Identity(m, m)).norm() <= 1e-9);
      CHECK((B.embed.adjoint() * B.embed - Eigen::MatrixXcd::Identity(m, m)).norm() <= 1e-9);
      // Transforming inside K then embedding the dual cosets equals
      // transforming in the ambient table.
      for (int i = 0; i < m; ++i) {
        Eigen::VectorXcd via = B.embed * B.qft.col(i);
        CHECK((via - F.col(B.members[i])).norm() <= 1e-9);
      }
      // Ambient weight of a dual coset is its local weight rescaled by the
      // total-weight ratio.
      double WK = 0;
      for (int x : B.members) WK += T.weight[x];
      for (int j = 0; j < m; ++j) {
        double amb = 0;
        for (int mu : B.cosets[j]) amb += C.char_weight[mu];
        CHECK(std::abs(amb - B.coset_weight[j] * T.total_weight / WK) <=
              1e-9 * std::max(1.0, amb));
      }
    }
  }
}

TEST_CASE("dual coset basis of the full table is the plain character basis") {
  const HypergroupTable& T = catalog_hypergroup("conj-s4");
  const CharacterTable& C = catalog_characters("conj-s4");
  std::vector<int> all(T.size);
  std::iota(all.begin(), all.end(), 0);
  DualCosetBasis B = subhypergroup_coset_basis(T, C, subhypergroup_view(T, all));
  REQUIRE(int(B.cosets.size()) == T.size);
  for (int j = 0; j < T.size; ++j) {
    CHECK(B.rep[j] == j);
    CHECK(B.cosets[j] == std::vector<int>({j}));
    CHECK(std::abs(B.coset_weight[j] - C.char_weight[j]) <= 1e-9);
  }
  CHECK(B.trivial == C.trivial);
  CHECK((B.qft - qft_matrix(T, C)).norm() <= 1e-9);
  CHECK((B.embed - Eigen::MatrixXcd::Identity(T.size, T.size)).norm() <= 1e-9);
}

TEST_CASE("character kernels restricted to a subobject") {
  Q8 q;
  std::vector<int> all(q.T.size);
  std::iota(all.begin(), all.end(), 0);
  SubhypergroupView full = subhypergroup_view(q.T, all);
  CHECK(kernel_restricted(q.T, q.C, q.C.trivial, full).members == all);
  for (int h : q.heavy) {
    std::vector<int> want = {q.T.identity, q.zc, h};
    std::sort(want.begin(), want.end());
    CHECK(kernel_restricted(q.T, q.C, q.sig_of(h), full).members == want);
  }
  // A loose tolerance pulls in the heavy classes where X vanishes; that set
  // is not closed and is rejected.
  CHECK(thrown_kind([&] { kernel_restricted(q.T, q.C, q.x2, full, 1.5); }) == "NotClosed");
  CHECK(thrown_kind([&] { kernel_restricted(q.T, q.C, 99, full); }) == "Malformed");

  const HypergroupTable& Th = catalog_hypergroup("conj-heisenberg3");
  const CharacterTable& Ch = catalog_characters("conj-heisenberg3");
  std::vector<int> allh(Th.size);
  std::iota(allh.begin(), allh.end(), 0);
  for (int mu = 0; mu < Th.size; ++mu)
    if (std::abs(Ch.char_weight[mu] - 9.0) <= 1e-9)
      CHECK(kernel_restricted(Th, Ch, mu, subhypergroup_view(Th, allh)).members ==
            std::vector<int>({Th.identity}));
}

TEST_CASE("trivial-character probability: unit for the full subobject, else at most 1/2") {
  for (const CatalogEntry& e : catalog_list()) {
    if (e.kind != "hypergroup") continue;
    if (e.name == "conj-q8-3") continue;  // enumeration alone exceeds the desk budget
    const HypergroupTable& T = catalog_hypergroup(e.name);
    const CharacterTable& C = catalog_characters(e.name);
    for (const auto& N : enumerate_subhypergroups(T, 512)) {
      double p = trivial_character_probability(akr_distribution(T, C, N));
      if (int(N.members.size()) == T.size)
        CHECK(std::abs(p - 1.0) <= 1e-9);
      else
        CHECK(p <= 0.5 + 1e-9);
    }
  }
}

TEST_CASE("kernel-intersection runs recover the hidden subobject") {
  const HypergroupTable& Tz6 = catalog_hypergroup("z6");
  const CharacterTable& Cz6 = catalog_characters("z6");
  SubhypergroupView half = closure(Tz6, {3});
  std::function<int(int)> oz6 = label_oracle(coset_labels(Tz6, half));
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    AlgorithmTrace tr = akr_run(Tz6, Cz6, oz6, 10, seed);
    CHECK(tr.answer == half.members);
    CHECK(tr.rounds.size() == 10);
    CHECK(tr.oracle_calls == 6);
    CHECK(tr.seed == seed);
    for (const RoundRecord& r : tr.rounds) {
      CHECK(r.sample >= 0);
      CHECK(r.probs[r.sample] > 0);
      CHECK(std::includes(r.kernel.begin(), r.kernel.end(), half.members.begin(),
                          half.members.end()));
    }
  }

  Q8 q;
  SubhypergroupView center = subhypergroup_view(q.T, {q.T.identity, q.zc});
  std::function<int(int)> oq = label_oracle(coset_labels(q.T, center));
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    AlgorithmTrace tr = akr_run(q.T, q.C, oq, 12, seed);
    CHECK(tr.answer == center.members);
  }

  // Same seed, same trace.
  AlgorithmTrace a = akr_run(q.T, q.C, oq, 12, 7);
  AlgorithmTrace b = akr_run(q.T, q.C, oq, 12, 7);
  REQUIRE(a.rounds.size() == b.rounds.size());
  for (size_t i = 0; i < a.rounds.size(); ++i) CHECK(a.rounds[i].sample == b.rounds[i].sample);

  CHECK(thrown_kind([&] { akr_run(q.T, q.C, oq, -1, 1); }) == "Malformed");
}

TEST_CASE("restriction to the full table reproduces the plain outcome law") {
  for (const char* name : {"conj-q8", "conj-s3", "z6"}) {
    const HypergroupTable& T = catalog_hypergroup(name);
    const CharacterTable& C = catalog_characters(name);
    std::vector<int> all(T.size);
    std::iota(all.begin(), all.end(), 0);
    SubhypergroupView full = subhypergroup_view(T, all);
    DualCosetBasis B = subhypergroup_coset_basis(T, C, full);
    for (const auto& N : enumerate_subhypergroups(T)) {
      std::function<int(int)> oracle = label_oracle(coset_labels(T, N));
      long long calls = 0;
      OutcomeDistribution res = restricted_distribution(T, C, full, oracle, &calls);
      OutcomeDistribution plain = akr_distribution(T, C, N);
      CHECK(calls == T.size);
      CHECK(res.trivial == B.coset_of[C.trivial]);
      for (int mu = 0; mu < T.size; ++mu)
        CHECK(std::abs(res.prob[B.coset_of[mu]] - plain.prob[mu]) <= 1e-9);
    }
  }
}

TEST_CASE("nilpotent descent recovers every normal subobject of the p-group catalog") {
  struct Case {
    const char* group;
    const char* hg;
  };
  for (const Case& cs : {Case{"q8", "conj-q8"}, Case{"d8", "conj-d8"},
                         Case{"heisenberg3", "conj-heisenberg3"}}) {
    const FiniteGroup& G = catalog_group(cs.group);
    const ClassTable& CT = catalog_class_table(cs.group);
    const CharacterTable& C = catalog_characters(cs.hg);
    for (const auto& N : enumerate_subhypergroups(CT.table)) {
      std::function<int(int)> oracle = label_oracle(coset_labels(CT.table, N));
      for (uint64_t seed : {1, 2, 3}) {
        AlgorithmTrace tr = nilpotent_run(G, CT, C, oracle, 6, seed);
        CHECK(tr.answer == N.members);
        // Element-level answer covers exactly the classes found.
        size_t elems = 0;
        for (int cls : tr.answer) elems += CT.part.classes[cls].size();
        CHECK(tr.answer_elements.size() == elems);
        for (const RoundRecord& r : tr.rounds) {
          double sum = 0;
          for (double p : r.probs) sum += p;
          CHECK(std::abs(sum - 1.0) <= 1e-9);
          // Above the answer the trivial outcome carries at most half the mass.
          if (tr.spaces[r.space] != tr.answer)
            CHECK(r.probs[r.trivial] <= 0.5 + 1e-9);
          CHECK(std::includes(tr.spaces[r.space].begin(), tr.spaces[r.space].end(),
                              r.kernel.begin(), r.kernel.end()));
        }
      }
    }
  }
}

TEST_CASE("nilpotent descent on a two-prime direct product") {
  const FiniteGroup& G = catalog_group("z3xq8");
  const ClassTable& CT = catalog_class_table("z3xq8");
  const CharacterTable& C = catalog_characters("conj-z3xq8");
  REQUIRE(CT.table.size == 15);
  std::vector<int> f3 = {0, 8, 16};
  std::vector<int> f8 = {0, 1, 2, 3, 4, 5, 6, 7};
  const std::vector<std::vector<int>> decomp = {f3, f8};

  // Hidden candidates: trivial, each factor, the center, and the whole group.
  std::vector<std::vector<int>> hidden_elements;
  hidden_elements.push_back({G.identity});
  hidden_elements.push_back(f3);
  hidden_elements.push_back(f8);
  std::vector<int> z = {G.identity};
  for (int g = 0; g < G.order; ++g) {
    bool central = true;
    for (int h = 0; h < G.order && central; ++h) central = G.mul(g, h) == G.mul(h, g);
    if (central) z.push_back(g);
  }
  std::sort(z.begin(), z.end());
  z.erase(std::unique(z.begin(), z.end()), z.end());
  REQUIRE(z.size() == 6);
  hidden_elements.push_back(z);
  std::vector<int> whole(G.order);
  std::iota(whole.begin(), whole.end(), 0);
  hidden_elements.push_back(whole);

  for (const auto& elems : hidden_elements) {
    std::set<int> cls;
    for (int g : elems) cls.insert(CT.part.class_of[g]);
    SubhypergroupView N =
        subhypergroup_view(CT.table, std::vector<int>(cls.begin(), cls.end()));
    REQUIRE(is_closed_subhypergroup(CT.table, N.members));
    std::function<int(int)> oracle = label_oracle(coset_labels(CT.table, N));
    for (uint64_t seed : {1, 2}) {
      AlgorithmTrace tr = nilpotent_run(G, CT, C, oracle, 6, seed, decomp);
      CHECK(tr.answer == N.members);
      CHECK(tr.answer_elements == elems);
    }
  }

  std::function<int(int)> id = [](int c) { return c; };
  CHECK(thrown_kind([&] { nilpotent_run(G, CT, C, id, 6, 1); }) == "MissingDecomposition");
  CHECK(thrown_kind([&] { nilpotent_run(G, CT, C, id, 6, 1, {whole}); }) == "NotPGroup");
  CHECK(thrown_kind([&] { nilpotent_run(G, CT, C, id, 6, 1, {f3, f3}); }) == "Malformed");
  CHECK(thrown_kind([&] { nilpotent_run(G, CT, C, id, 6, 1, {f3}); }) == "Malformed");
  std::vector<int> notsub = {0, 1, 2, 3, 4, 5, 6};
  CHECK(thrown_kind([&] { nilpotent_run(G, CT, C, id, 6, 1, {f3, notsub}); }) == "Malformed");
  CHECK(thrown_kind([&] { nilpotent_run(G, CT, C, id, 0, 1, decomp); }) == "Malformed");

  const FiniteGroup& S3 = catalog_group("s3");
  const ClassTable& CTs = catalog_class_table("s3");
  const CharacterTable& Cs = catalog_characters("conj-s3");
  CHECK(thrown_kind([&] { nilpotent_run(S3, CTs, Cs, id, 6, 1); }) == "MissingDecomposition");
}

TEST_CASE("nilpotent descent: shot-by-shot sampling agrees on the answer") {
  Q8 q;
  const FiniteGroup& G = catalog_group("q8");
  const ClassTable& CT = catalog_class_table("q8");
  SubhypergroupView center = subhypergroup_view(CT.table, {CT.table.identity, q.zc});
  std::function<int(int)> oracle = label_oracle(coset_labels(CT.table, center));
  for (uint64_t seed : {5, 6, 7, 8}) {
    AlgorithmTrace analytic = nilpotent_run(G, CT, q.C, oracle, 6, seed, {}, false);
    AlgorithmTrace shots = nilpotent_run(G, CT, q.C, oracle, 6, seed, {}, true);
    CHECK(analytic.answer == center.members);
    CHECK(shots.answer == center.members);
    // Shot mode still snapshots the level mixture as the recorded law.
    REQUIRE(!shots.rounds.empty());
    double sum = 0;
    for (double p : shots.rounds[0].probs) sum += p;
    CHECK(std::abs(sum - 1.0) <= 1e-9);
  }
}

TEST_CASE("recursive run drills down to the hidden subgroup by elements") {
  const FiniteGroup& H3 = catalog_group("heisenberg3");
  OracleFactory distinguish_all = [](const SubgroupProblem& p) -> std::function<int(int)> {
    (void)p;
    return [](int c) { return c; };
  };
  for (uint64_t seed : {1, 2, 3}) {
    AlgorithmTrace tr = recursive_subgroup_run(H3, distinguish_all, 8, seed);
    CHECK(tr.answer_elements == std::vector<int>({H3.identity}));
    CHECK(tr.spaces.size() <= 5);
    for (size_t i = 1; i < tr.spaces.size(); ++i)
      CHECK(tr.spaces[i].size() < tr.spaces[i - 1].size());
    CHECK(tr.oracle_calls > 0);
  }

  // D8 with an oracle hiding the center at every level.
  const FiniteGroup& D8 = catalog_group("d8");
  std::vector<int> zel;
  for (int g = 0; g < D8.order; ++g) {
    bool central = true;
    for (int h = 0; h < D8.order && central; ++h) central = D8.mul(g, h) == D8.mul(h, g);
    if (central) zel.push_back(g);
  }
  REQUIRE(zel.size() == 2);
  OracleFactory hide_center = [&zel](const SubgroupProblem& p) -> std::function<int(int)> {
    std::vector<int> mem;
    for (int c = 0; c < p.classes.table.size; ++c) {
      bool inside = true;
      for (int local : p.classes.part.classes[c])
        if (!std::binary_search(zel.begin(), zel.end(), p.elements[local])) {
          inside = false;
          break;
        }
      if (inside) mem.push_back(c);
    }
    std::vector<int> lab = coset_labels(p.classes.table, subhypergroup_view(p.classes.table, mem));
    return [lab](int c) { return lab.at(size_t(c)); };
  };
  const ConjugacyPartition PD8 = conjugacy_partition(D8);
  std::vector<int> zcls;
  for (int g : zel) zcls.push_back(PD8.class_of[g]);
  std::sort(zcls.begin(), zcls.end());
  for (uint64_t seed : {1, 2, 3}) {
    AlgorithmTrace tr = recursive_subgroup_run(D8, hide_center, 8, seed);
    CHECK(tr.answer_elements == zel);
    CHECK(tr.answer == zcls);
    CHECK(tr.spaces.back() == zel);
  }

  // A constant oracle stops at the whole group.
  OracleFactory constant = [](const SubgroupProblem&) -> std::function<int(int)> {
    return [](int) { return 0; };
  };
  AlgorithmTrace tr = recursive_subgroup_run(D8, constant, 4, 9);
  CHECK(tr.spaces.size() == 1);
  CHECK(tr.answer_elements.size() == size_t(D8.order));
  CHECK(tr.answer.size() == PD8.classes.size());

  // Missing oracle below the top level.
  OracleFactory top_only = [&H3](const SubgroupProblem& p) -> std::function<int(int)> {
    if (int(p.elements.size()) == H3.order) return [](int c) { return c; };
    return {};
  };
  CHECK(thrown_kind([&] { recursive_subgroup_run(H3, top_only, 8, 5); }) ==
        "OracleUnavailable");
  CHECK(thrown_kind([&] { recursive_subgroup_run(D8, constant, 0, 1); }) == "Malformed");
}

TEST_CASE("element-space embedding reproduces the class-space law exactly") {
  for (const CatalogEntry& e : catalog_list()) {
    if (e.kind != "group" || e.size > 27) continue;
    const FiniteGroup& G = catalog_group(e.name);
    const ClassTable& CT = catalog_class_table(e.name);
    const HypergroupTable& T = CT.table;
    const CharacterTable& C = catalog_characters("conj-" + e.name);
    for (const auto& N : enumerate_subhypergroups(T, 512)) {
      std::function<int(int)> oracle = label_oracle(coset_labels(T, N));
      OutcomeDistribution lifted = hrt_embedded_distribution(G, CT.part, T, C, oracle);
      OutcomeDistribution flat = akr_distribution(T, C, N);
      CHECK(lifted.trivial == flat.trivial);
      CHECK(total_variation(lifted.prob, flat.prob) <= 1e-9);
    }
  }
}

TEST_CASE("sampled outcome frequencies match the analytic law") {
  const HypergroupTable& Th = catalog_hypergroup("conj-heisenberg3");
  const CharacterTable& Ch = catalog_characters("conj-heisenberg3");
  SubhypergroupView triv = subhypergroup_view(Th, {Th.identity});
  std::function<int(int)> oh = label_oracle(coset_labels(Th, triv));
  const int shots = 100000;
  AlgorithmTrace tr = akr_run(Th, Ch, oh, shots, 0xfeedbeef);
  OutcomeDistribution law = akr_distribution(Th, Ch, triv);
  std::vector<int> count(Th.size, 0);
  for (const RoundRecord& r : tr.rounds) ++count[r.sample];
  double chi2 = 0;
  int dof = -1;
  for (int mu = 0; mu < Th.size; ++mu) {
    double exp = law.prob[mu] * shots;
    if (exp <= 0) {
      CHECK(count[mu] == 0);
      continue;
    }
    chi2 += (count[mu] - exp) * (count[mu] - exp) / exp;
    ++dof;
  }
  REQUIRE(dof == 10);
  CHECK(gsl_cdf_chisq_Q(chi2, double(dof)) > 0.001);

  Q8 q;
  SubhypergroupView center = subhypergroup_view(q.T, {q.T.identity, q.zc});
  std::function<int(int)> oq = label_oracle(coset_labels(q.T, center));
  AlgorithmTrace tq = akr_run(q.T, q.C, oq, shots, 0xfeedbeef);
  OutcomeDistribution lq = akr_distribution(q.T, q.C, center);
  std::vector<int> cq(5, 0);
  for (const RoundRecord& r : tq.rounds) ++cq[r.sample];
  CHECK(cq[q.x2] == 0);
  double chi2q = 0;
  int dofq = -1;
  for (int mu = 0; mu < 5; ++mu) {
    if (lq.prob[mu] <= 0) continue;
    double exp = lq.prob[mu] * shots;
    chi2q += (cq[mu] - exp) * (cq[mu] - exp) / exp;
    ++dofq;
  }
  REQUIRE(dofq == 3);
  CHECK(gsl_cdf_chisq_Q(chi2q, double(dofq)) > 0.001);
}

TEST_CASE("dihedral survey stays under two thirds; affine rows are exact") {
  DihedralAffineReport rep = dihedral_and_affine_checks();
  CHECK(rep.dihedral_ok);
  CHECK(std::abs(rep.dihedral_max - 5.0 / 9.0) <= 1e-12);
  CHECK(!rep.dihedral.empty());
  for (const SubhypergroupCheck& row : rep.dihedral)
    if (row.bound_applies) CHECK(row.trivial_prob <= 2.0 / 3.0 + 1e-9);
  REQUIRE(rep.affine.size() == 3);
  const double want[3] = {17.0 / 25.0, 37.0 / 49.0, 145.0 / 169.0};
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(rep.affine[i].trivial_prob - want[i]) <= 1e-12);
    CHECK(rep.affine[i].trivial_prob > 2.0 / 3.0);
    CHECK(rep.affine[i].members.size() == 2);
  }
  CHECK(rep.affine[0].trivial_prob < rep.affine[1].trivial_prob);
  CHECK(rep.affine[1].trivial_prob < rep.affine[2].trivial_prob);
}

TEST_CASE("seeded sweeps are reproducible and job-count independent") {
  Q8 q;
  SubhypergroupView center = subhypergroup_view(q.T, {q.T.identity, q.zc});
  std::function<int(int)> oracle = label_oracle(coset_labels(q.T, center));
  auto one = [&](uint64_t seed) { return akr_run(q.T, q.C, oracle, 12, seed); };
  std::vector<AlgorithmTrace> serial = seeded_sweep(8, 100, 1, one);
  std::vector<AlgorithmTrace> parallel = seeded_sweep(8, 100, 3, one);
  REQUIRE(serial.size() == 8);
  REQUIRE(parallel.size() == 8);
  for (int i = 0; i < 8; ++i) {
    CHECK(serial[i].seed == 100 + uint64_t(i));
    CHECK(serial[i].answer == parallel[i].answer);
    REQUIRE(serial[i].rounds.size() == parallel[i].rounds.size());
    for (size_t r = 0; r < serial[i].rounds.size(); ++r)
      CHECK(serial[i].rounds[r].sample == parallel[i].rounds[r].sample);
  }
  CHECK(seeded_sweep(0, 1, 1, one).empty());
  CHECK(thrown_kind([&] { seeded_sweep(-1, 1, 1, one); }) == "Malformed");
  // Errors inside workers surface once the sweep finishes.
  auto boom = [&](uint64_t) -> AlgorithmTrace { throw Error("Malformed", "boom"); };
  CHECK(thrown_kind([&] { seeded_sweep(3, 1, 2, boom); }) == "Malformed");
}

}  // TEST_SUITE("hshp")
