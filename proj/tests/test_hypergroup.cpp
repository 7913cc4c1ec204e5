// Hypergroup table construction and axiom checks, exercised against tables
// counted by hand from explicit group multiplication laws.  The expected
// structure constants in here are derived inside the test from the raw laws
// (quaternion units, permutations), independently of the library's own
// class-counting code.
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "hyperstab/hypergroup.h"

using namespace hyperstab;

namespace {

HypergroupTable group_hypergroup(const std::string& name, int n,
                                 const std::vector<std::vector<int>>& mul) {
  std::vector<Triple> tr;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) tr.push_back({a, b, mul[a][b], 1.0, Rat(1), true});
  return make_hypergroup(name, n, tr);
}

std::vector<std::vector<int>> cyclic_mul(int n) {
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mul[a][b] = (a + b) % n;
  return mul;
}

// Quaternion units encoded as 2*axis + (sign < 0), axes 0=1, 1=i, 2=j, 3=k:
// 0:+1 1:-1 2:+i 3:-i 4:+j 5:-j 6:+k 7:-k.
int quat_mul(int x, int y) {
  static const int ax[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sg[4][4] = {
      {1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  int a = x / 2, b = y / 2;
  int s = ((x % 2) ? -1 : 1) * ((y % 2) ? -1 : 1) * sg[a][b];
  return 2 * ax[a][b] + (s < 0 ? 1 : 0);
}

struct ClassOracle {
  std::vector<std::vector<int>> classes;  // sorted member lists, identity class first
  std::vector<Triple> triples;            // exact class structure constants
};

// Conjugacy classes and their normalized structure constants, counted
// directly from the multiplication law: n(C,D->E) = #{(c,d): cd = e0} |E| /
// (|C||D|) for any fixed e0 in E.
ClassOracle class_constants(int n, const std::function<int(int, int)>& mul) {
  int e = -1;
  for (int x = 0; x < n && e < 0; ++x) {
    bool ok = true;
    for (int y = 0; y < n && ok; ++y) ok = mul(x, y) == y && mul(y, x) == y;
    if (ok) e = x;
  }
  REQUIRE(e >= 0);
  std::vector<int> inv(n, -1);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (mul(x, y) == e) inv[x] = y;
  std::vector<int> cls(n, -1);
  ClassOracle out;
  for (int x = 0; x < n; ++x) {
    if (cls[x] >= 0) continue;
    std::vector<int> c;
    for (int g = 0; g < n; ++g) {
      int y = mul(mul(g, x), inv[g]);
      if (cls[y] < 0) {
        cls[y] = int(out.classes.size());
        c.push_back(y);
      }
    }
    std::sort(c.begin(), c.end());
    out.classes.push_back(c);
  }
  int m = int(out.classes.size());
  for (int C = 0; C < m; ++C)
    for (int D = 0; D < m; ++D)
      for (int E = 0; E < m; ++E) {
        long long cnt = 0;
        for (int c : out.classes[C])
          for (int d : out.classes[D])
            if (mul(c, d) == out.classes[E][0]) ++cnt;
        if (!cnt) continue;
        Rat r = Rat(cnt * (long long)out.classes[E].size(),
                    (long long)out.classes[C].size() * out.classes[D].size());
        out.triples.push_back({C, D, E, r.to_double(), r, true});
      }
  return out;
}

const AxiomResult& axiom(const ValidationReport& rep, const std::string& name) {
  for (const auto& a : rep.axioms)
    if (a.axiom == name) return a;
  static AxiomResult missing;
  REQUIRE_MESSAGE(false, "axiom not in report: " << name);
  return missing;
}

// The six permutations of {0,1,2} and their composition, for the S3 oracle.
int s3_mul(int x, int y) {
  static const int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                 {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  int z[3];
  for (int i = 0; i < 3; ++i) z[i] = perm[x][perm[y][i]];
  for (int k = 0; k < 6; ++k)
    if (z[0] == perm[k][0] && z[1] == perm[k][1] && z[2] == perm[k][2]) return k;
  return -1;
}

}  // namespace

TEST_SUITE("hypergroup") {

TEST_CASE("cyclic group tables validate exactly") {
  HypergroupTable T = group_hypergroup("z6", 6, cyclic_mul(6));
  CHECK(T.identity == 0);
  CHECK(T.exact);
  for (int a = 0; a < 6; ++a) {
    CHECK(T.involution[a] == (6 - a) % 6);
    CHECK(T.weight[a] == doctest::Approx(1.0));
    CHECK(T.invertible(a));
  }
  CHECK(T.total_weight == doctest::Approx(6.0));

  ValidationReport rep = validate(T);
  CHECK(rep.ok);
  CHECK(rep.max_residual == 0);  // all-exact table: residuals must vanish identically
  for (const auto& a : rep.axioms) CHECK_MESSAGE(a.pass, a.axiom);
  CHECK(axiom(rep, "associativity").pass);  // order 6 => full check, not sampled
}

TEST_CASE("quaternion class table: constants, weights, axioms") {
  ClassOracle q = class_constants(8, quat_mul);
  REQUIRE(q.classes.size() == 5);
  // Classes in discovery order: {1}, {-1}, {i,-i}, {j,-j}, {k,-k}.
  CHECK(q.classes[0] == std::vector<int>{0});
  CHECK(q.classes[1] == std::vector<int>{1});
  CHECK(q.classes[2] == std::vector<int>{2, 3});
  CHECK(q.classes[3] == std::vector<int>{4, 5});
  CHECK(q.classes[4] == std::vector<int>{6, 7});

  HypergroupTable T = make_hypergroup("conj-q8", 5, q.triples);
  CHECK(T.identity == 0);
  for (int a = 0; a < 5; ++a) CHECK(T.involution[a] == a);  // every class closed under inverse
  CHECK(T.weight[0] == doctest::Approx(1));
  CHECK(T.weight[1] == doctest::Approx(1));
  CHECK(T.weight[2] == doctest::Approx(2));
  CHECK(T.weight[3] == doctest::Approx(2));
  CHECK(T.weight[4] == doctest::Approx(2));
  CHECK(T.total_weight == doctest::Approx(8));

  // Hand values: i*i = -1 so Ci*Ci spreads over {1,-1}; i*j = k exactly.
  CHECK(T.n3_exact(2, 2, 0) == Rat(1, 2));
  CHECK(T.n3_exact(2, 2, 1) == Rat(1, 2));
  CHECK(T.n3_exact(2, 3, 4) == Rat(1));
  CHECK(T.n3_exact(1, 2, 2) == Rat(1));
  CHECK(T.n3(2, 2, 2) == 0);

  ValidationReport rep = validate(T);
  CHECK(rep.ok);
  CHECK(rep.max_residual == 0);
}

TEST_CASE("symmetric group class table from permutation counting") {
  ClassOracle s = class_constants(6, s3_mul);
  REQUIRE(s.classes.size() == 3);
  HypergroupTable T = make_hypergroup("conj-s3", 3, s.triples);
  // Discovery order: {e}, rotations {1,2}, transpositions {3,4,5}.
  CHECK(T.weight[0] == doctest::Approx(1));
  CHECK(T.weight[1] == doctest::Approx(2));
  CHECK(T.weight[2] == doctest::Approx(3));
  CHECK(T.n3_exact(2, 2, 0) == Rat(1, 3));
  CHECK(T.n3_exact(2, 2, 1) == Rat(2, 3));
  CHECK(T.n3_exact(1, 1, 0) == Rat(1, 2));
  CHECK(T.n3_exact(1, 1, 1) == Rat(1, 2));
  CHECK(T.n3_exact(1, 2, 2) == Rat(1));
  CHECK(validate(T).ok);
}

TEST_CASE("forced violations are reported per axiom") {
  auto id_rows = [](int n) {
    std::vector<Triple> tr;
    for (int b = 0; b < n; ++b) {
      tr.push_back({0, b, b, 1.0, Rat(1), true});
      if (b) tr.push_back({b, 0, b, 1.0, Rat(1), true});
    }
    return tr;
  };

  SUBCASE("negative constant") {
    auto tr = id_rows(2);
    tr.push_back({1, 1, 0, 1.5, Rat(3, 2), true});
    tr.push_back({1, 1, 1, -0.5, Rat(-1, 2), true});
    HypergroupTable T = make_hypergroup("bad", 2, tr, 0, {0, 1});
    ValidationReport rep = validate(T);
    CHECK(!rep.ok);
    CHECK(!axiom(rep, "nonnegativity").pass);
    CHECK(axiom(rep, "normalization").pass);  // row still sums to one
  }

  SUBCASE("row does not sum to one") {
    auto tr = id_rows(2);
    tr.push_back({1, 1, 0, 0.6, Rat(3, 5), true});
    tr.push_back({1, 1, 1, 0.6, Rat(3, 5), true});
    HypergroupTable T = make_hypergroup("bad", 2, tr, 0, {0, 1});
    ValidationReport rep = validate(T);
    CHECK(!rep.ok);
    CHECK(axiom(rep, "nonnegativity").pass);
    CHECK(!axiom(rep, "normalization").pass);
    CHECK(axiom(rep, "normalization").residual == doctest::Approx(0.2));
  }

  SUBCASE("non-commutative table") {
    auto tr = id_rows(3);
    tr.push_back({1, 2, 0, 1.0, Rat(1), true});
    tr.push_back({2, 1, 1, 1.0, Rat(1), true});
    tr.push_back({1, 1, 2, 1.0, Rat(1), true});
    tr.push_back({2, 2, 1, 1.0, Rat(1), true});
    HypergroupTable T = make_hypergroup("bad", 3, tr, 0, {0, 2, 1});
    ValidationReport rep = validate(T);
    CHECK(!rep.ok);
    CHECK(!axiom(rep, "commutativity").pass);
  }

  SUBCASE("non-associative table") {
    // z3 with 1*1 redirected to 0: (1*1)*2 = 2 but 1*(1*2) = 1.
    auto tr = id_rows(3);
    tr.push_back({1, 1, 0, 1.0, Rat(1), true});
    tr.push_back({1, 2, 0, 1.0, Rat(1), true});
    tr.push_back({2, 1, 0, 1.0, Rat(1), true});
    tr.push_back({2, 2, 1, 1.0, Rat(1), true});
    HypergroupTable T = make_hypergroup("bad", 3, tr, 0, {0, 2, 1});
    ValidationReport rep = validate(T);
    CHECK(!rep.ok);
    CHECK(!axiom(rep, "associativity").pass);
  }

  SUBCASE("no mass on the identity against the involution partner") {
    auto tr = id_rows(2);
    tr.push_back({1, 1, 1, 1.0, Rat(1), true});  // x*x = x, so nothing reaches e
    HypergroupTable T = make_hypergroup("bad", 2, tr, 0, {0, 1});
    ValidationReport rep = validate(T);
    CHECK(!rep.ok);
    CHECK(!axiom(rep, "anti-element").pass);
  }
}

TEST_CASE("malformed input throws") {
  std::vector<Triple> dup = {{0, 0, 0, 0.5, Rat(1, 2), true}, {0, 0, 0, 0.5, Rat(1, 2), true}};
  CHECK_THROWS_AS(make_hypergroup("dup", 1, dup), Error);
  try {
    make_hypergroup("dup", 1, dup);
  } catch (const Error& e) {
    CHECK(e.kind == "Malformed");
  }
  std::vector<Triple> oor = {{0, 0, 3, 1.0, Rat(1), true}};
  CHECK_THROWS_AS(make_hypergroup("oor", 2, oor), Error);
}

TEST_CASE("closure, cosets and quotients on z12") {
  HypergroupTable T = group_hypergroup("z12", 12, cyclic_mul(12));

  SubhypergroupView N = closure(T, {4});
  CHECK(N.members == std::vector<int>{0, 4, 8});
  CHECK(closure(T, {2}).members == std::vector<int>{0, 2, 4, 6, 8, 10});
  CHECK(closure(T, {}).members == std::vector<int>{0});

  CHECK(coset(T, N, 1) == std::vector<int>{1, 5, 9});
  CHECK(coset(T, N, 8) == std::vector<int>{0, 4, 8});

  QuotientTable Q = quotient(T, N);
  REQUIRE(Q.table.size == 4);
  for (int x = 0; x < 12; ++x) CHECK(Q.coset_of[x] == Q.coset_of[(x + 4) % 12]);
  CHECK(validate(Q.table).ok);
  HypergroupTable Z4 = group_hypergroup("z4", 4, cyclic_mul(4));
  CHECK(!find_isomorphism(Q.table, Z4).empty());

  auto subs = enumerate_subhypergroups(T);
  REQUIRE(subs.size() == 6);  // one per divisor of 12
  std::multiset<size_t> sizes;
  for (const auto& s : subs) sizes.insert(s.members.size());
  CHECK(sizes == std::multiset<size_t>{1, 2, 3, 4, 6, 12});

  CHECK_THROWS_AS(enumerate_subhypergroups(T, 3), Error);
}

TEST_CASE("quaternion class table: subobjects and quotient") {
  ClassOracle q = class_constants(8, quat_mul);
  HypergroupTable T = make_hypergroup("conj-q8", 5, q.triples);

  auto subs = enumerate_subhypergroups(T);
  CHECK(subs.size() == 6);  // {e}, {e,-1}, {e,-1,axis} for three axes, everything

  SubhypergroupView center = closure(T, {1});
  CHECK(center.members == std::vector<int>{0, 1});
  QuotientTable Q = quotient(T, center);
  REQUIRE(Q.table.size == 4);
  // The quotient collapses each axis class to a point: it is the Klein group.
  std::vector<std::vector<int>> klein(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) klein[a][b] = a ^ b;
  CHECK(!find_isomorphism(Q.table, group_hypergroup("klein", 4, klein)).empty());
}

TEST_CASE("automorphisms and isomorphisms") {
  HypergroupTable Z5 = group_hypergroup("z5", 5, cyclic_mul(5));
  auto autos = enumerate_automorphisms(Z5);
  CHECK(autos.size() == 4);  // multiplication by 1..4
  for (const auto& f : autos) CHECK(is_automorphism(Z5, f));

  HypergroupTable Z6 = group_hypergroup("z6", 6, cyclic_mul(6));
  CHECK(enumerate_automorphisms(Z6).size() == 2);

  ClassOracle q = class_constants(8, quat_mul);
  HypergroupTable Q8c = make_hypergroup("conj-q8", 5, q.triples);
  CHECK(enumerate_automorphisms(Q8c).size() == 6);  // free permutation of the axis classes

  // Non-example: z4 and the Klein group have equal weights but no isomorphism.
  std::vector<std::vector<int>> klein(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) klein[a][b] = a ^ b;
  CHECK(find_isomorphism(group_hypergroup("z4", 4, cyclic_mul(4)),
                         group_hypergroup("klein", 4, klein))
            .empty());

  // Identity map fails on a mismatched table (wrong structure constants).
  std::vector<int> ident = {0, 1, 2, 3, 4};
  CHECK(is_automorphism(Z5, ident));
  std::vector<int> shift = {0, 2, 1, 3, 4};
  CHECK(!is_automorphism(Z5, shift));
}

TEST_CASE("tensor products") {
  HypergroupTable Z2 = group_hypergroup("z2", 2, cyclic_mul(2));
  HypergroupTable Z3 = group_hypergroup("z3", 3, cyclic_mul(3));
  HypergroupTable P = tensor_product(Z2, Z3);
  REQUIRE(P.size == 6);
  CHECK(validate(P).ok);
  CHECK(!find_isomorphism(P, group_hypergroup("z6", 6, cyclic_mul(6))).empty());

  ClassOracle q = class_constants(8, quat_mul);
  HypergroupTable Q8c = make_hypergroup("conj-q8", 5, q.triples);
  HypergroupTable QQ = tensor_product(Q8c, Q8c);
  REQUIRE(QQ.size == 25);
  CHECK(validate(QQ).ok);
  CHECK(QQ.total_weight == doctest::Approx(64.0));
  // Weight of a pair is the product of the member weights.
  CHECK(QQ.weight[2 * 5 + 3] == doctest::Approx(4.0));
  CHECK(QQ.exact);
}

TEST_CASE("morphisms into invertible elements") {
  HypergroupTable Z4 = group_hypergroup("z4", 4, cyclic_mul(4));
  HypergroupTable Z2 = group_hypergroup("z2", 2, cyclic_mul(2));
  CHECK(is_morphism_into_invertibles(Z4, Z2, {0, 1, 0, 1}));
  CHECK(!is_morphism_into_invertibles(Z4, Z2, {0, 1, 1, 0}));

  // Mapping into a non-invertible target is rejected outright.
  ClassOracle q = class_constants(8, quat_mul);
  HypergroupTable Q8c = make_hypergroup("conj-q8", 5, q.triples);
  CHECK_THROWS_AS(is_morphism_into_invertibles(Z2, Q8c, {0, 2}), Error);
}

}  // TEST_SUITE
