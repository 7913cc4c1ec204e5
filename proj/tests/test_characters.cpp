// Character solver checked against closed-form roots of unity on cyclic
// tables and a hand-derived table for the quaternion class hypergroup.
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "hyperstab/characters.h"
#include "hyperstab/hypergroup.h"

using namespace hyperstab;

namespace {

HypergroupTable cyclic_hypergroup(int n) {
  std::vector<Triple> tr;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) tr.push_back({a, b, (a + b) % n, 1.0, Rat(1), true});
  return make_hypergroup("z" + std::to_string(n), n, tr);
}

// Quaternion class hypergroup over (1, -1, i-pair, j-pair, k-pair), constants
// as counted in the hypergroup suite.
HypergroupTable quaternion_class_table() {
  std::vector<Triple> tr;
  auto one = [&](int a, int b, int c) { tr.push_back({a, b, c, 1.0, Rat(1), true}); };
  auto half = [&](int a, int b, int c) { tr.push_back({a, b, c, 0.5, Rat(1, 2), true}); };
  for (int b = 0; b < 5; ++b) {
    one(0, b, b);
    if (b) one(b, 0, b);
  }
  one(1, 1, 0);
  for (int ax = 2; ax <= 4; ++ax) {
    one(1, ax, ax);
    one(ax, 1, ax);
    half(ax, ax, 0);
    half(ax, ax, 1);
  }
  one(2, 3, 4); one(3, 2, 4);
  one(2, 4, 3); one(4, 2, 3);
  one(3, 4, 2); one(4, 3, 2);
  return make_hypergroup("conj-q8", 5, tr);
}

// Index of the computed character matching `want` pointwise, or -1.
int find_row(const CharacterTable& C, const std::vector<complex>& want, double tol = 1e-8) {
  for (int mu = 0; mu < C.size; ++mu) {
    double d = 0;
    for (int a = 0; a < C.size; ++a) d = std::max(d, std::abs(C.chi[mu][a] - want[a]));
    if (d <= tol) return mu;
  }
  return -1;
}

}  // namespace

TEST_SUITE("characters") {

TEST_CASE("cyclic characters are the roots of unity") {
  const int n = 6;
  HypergroupTable T = cyclic_hypergroup(n);
  CharacterTable C = compute_characters(T);
  REQUIRE(C.size == n);

  CHECK(C.trivial == 0);
  for (int a = 0; a < n; ++a) CHECK(std::abs(C.chi[0][a] - 1.0) < 1e-12);

  // Every exp(2 pi i k a / n) row appears exactly once.
  std::vector<int> hit(n, 0);
  for (int k = 0; k < n; ++k) {
    std::vector<complex> want(n);
    for (int a = 0; a < n; ++a)
      want[a] = std::exp(complex(0, 2 * M_PI * k * a / n));
    int mu = find_row(C, want);
    REQUIRE(mu >= 0);
    ++hit[mu];
    CHECK(C.char_weight[mu] == doctest::Approx(1.0));
  }
  for (int mu = 0; mu < n; ++mu) CHECK(hit[mu] == 1);

  // Conjugation pairing: conj row of X_k is X_{n-k}.
  for (int mu = 0; mu < n; ++mu) {
    int nu = C.conj[mu];
    for (int a = 0; a < n; ++a)
      CHECK(std::abs(std::conj(C.chi[mu][a]) - C.chi[nu][a]) < 1e-9);
  }

  CHECK(character_equation_residual(T, C) < 1e-9);
  OrthogonalityReport orth = verify_orthogonality(T, C);
  CHECK(orth.ok);
  CHECK(orth.row_residual < 1e-9);
}

TEST_CASE("same seed, same table") {
  HypergroupTable T = cyclic_hypergroup(12);
  CharacterTable a = compute_characters(T, 17);
  CharacterTable b = compute_characters(T, 17);
  REQUIRE(a.size == b.size);
  for (int mu = 0; mu < a.size; ++mu)
    for (int x = 0; x < a.size; ++x) CHECK(a.chi[mu][x] == b.chi[mu][x]);
}

TEST_CASE("quaternion class characters") {
  HypergroupTable T = quaternion_class_table();
  CharacterTable C = compute_characters(T);
  REQUIRE(C.size == 5);

  // Four invertible characters from the abelianization, one of weight 4 from
  // the two-dimensional representation.
  std::vector<std::vector<complex>> want = {
      {1, 1, 1, 1, 1},
      {1, 1, 1, -1, -1},
      {1, 1, -1, 1, -1},
      {1, 1, -1, -1, 1},
      {1, -1, 0, 0, 0},
  };
  std::vector<double> want_weight = {1, 1, 1, 1, 4};
  for (size_t k = 0; k < want.size(); ++k) {
    int mu = find_row(C, want[k]);
    REQUIRE_MESSAGE(mu >= 0, "row " << k << " missing");
    CHECK(C.char_weight[mu] == doctest::Approx(want_weight[k]));
    CHECK(C.conj[mu] == mu);  // all real here
  }
  CHECK(C.max_residual < 1e-8);
  CHECK(character_equation_residual(T, C) < 1e-8);
  CHECK(verify_orthogonality(T, C).ok);
}

TEST_CASE("dual of a group table is its character group") {
  HypergroupTable T = cyclic_hypergroup(6);
  CharacterTable C = compute_characters(T);
  DualTable D = dual_hypergroup(T, C);
  REQUIRE(D.table.size == 6);
  CHECK(!D.signed_flag);
  CHECK(D.max_imag < 1e-9);
  CHECK(D.solve_residual < 1e-9);
  for (int mu = 0; mu < 6; ++mu) CHECK(D.table.weight[mu] == doctest::Approx(1.0));
  CHECK(validate(D.table).ok);
  CHECK(!find_isomorphism(D.table, T).empty());
}

TEST_CASE("dual of the quaternion class table") {
  HypergroupTable T = quaternion_class_table();
  CharacterTable C = compute_characters(T);
  DualTable D = dual_hypergroup(T, C);
  REQUIRE(D.table.size == 5);
  CHECK(!D.signed_flag);
  CHECK(validate(D.table).ok);
  CHECK(D.table.total_weight == doctest::Approx(8.0));

  // The weight-4 character times itself spreads uniformly over the four
  // invertible characters; times an invertible one it reproduces itself.
  int two = -1;
  for (int mu = 0; mu < 5; ++mu)
    if (std::abs(C.char_weight[mu] - 4.0) < 1e-9) two = mu;
  REQUIRE(two >= 0);
  double sum = 0;
  for (int g = 0; g < 5; ++g) {
    double m = D.table.n3(two, two, g);
    if (g == two) {
      CHECK(std::abs(m) < 1e-9);
    } else {
      CHECK(m == doctest::Approx(0.25));
    }
    sum += m;
  }
  CHECK(sum == doctest::Approx(1.0));
  for (int mu = 0; mu < 5; ++mu)
    if (mu != two) CHECK(D.table.n3(two, mu, two) == doctest::Approx(1.0));

  // Double dual matches the original carrier bijectively.
  std::vector<int> back = double_dual_iso(T, C, D);
  REQUIRE(back.size() == 5);
  std::vector<int> sorted = back;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("annihilators") {
  HypergroupTable Z6 = cyclic_hypergroup(6);
  CharacterTable C6 = compute_characters(Z6);
  std::vector<int> ann = annihilator(Z6, C6, {0, 2, 4});
  CHECK(ann.size() == 2);
  CHECK(std::find(ann.begin(), ann.end(), C6.trivial) != ann.end());
  CHECK(annihilator(Z6, C6, {0}).size() == 6);
  CHECK(annihilator(Z6, C6, {0, 1, 2, 3, 4, 5}).size() == 1);

  HypergroupTable Q = quaternion_class_table();
  CharacterTable CQ = compute_characters(Q);
  CHECK(annihilator(Q, CQ, {0, 1}).size() == 4);
}

TEST_CASE("corrupted character data is rejected") {
  HypergroupTable T = quaternion_class_table();
  CharacterTable C = compute_characters(T);
  C.chi[4][2] += 0.3;
  CHECK_THROWS_AS(dual_hypergroup(T, C), Error);
}

}  // TEST_SUITE
