// Validation of homotopy structures: the square-zero condition, the
// primitivity test for the commutative kind, unitality, conversions
// between flavours, and morphism checking.
#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace infty;
using namespace infty::fixtures;

TEST_CASE("strict associative structures square to zero") {
  CHECK(validate_square_zero(dual_numbers(), 6).ok);
  CHECK(validate_square_zero(truncated_cubic(), 6).ok);
  CHECK(validate_square_zero(noncommutative_pair(), 6).ok);
  CHECK(validate_square_zero(ground_field(), 8).ok);
  Structure zero;
  zero.basis.names = {"a"};
  zero.basis.vdeg = {0};
  zero.comp.resize(1);
  CHECK(validate_square_zero(zero, 4).ok);
}

TEST_CASE("a non-associative product is caught with a weight-3 witness") {
  auto rep = validate_square_zero(magma(), 6);
  REQUIRE_FALSE(rep.ok);
  bool found = false;
  for (const auto& v : rep.violations)
    if (v.weight == 3 && !v.witness.empty()) found = true;
  CHECK(found);
}

TEST_CASE("the non-strict commutative fixture is valid and primitive") {
  auto S = nonstrict_cinfty();
  CHECK(validate_square_zero(S, 8).ok);
  CHECK(check_cinfty(S).ok);
}

TEST_CASE("primitivity check separates commutative from noncommutative") {
  CHECK(check_cinfty(dual_numbers()).ok);
  CHECK(check_cinfty(truncated_cubic()).ok);
  auto rep = check_cinfty(noncommutative_pair());
  REQUIRE_FALSE(rep.ok);
  CHECK(rep.violations[0].weight == 2);
  // Weight-1 values are always primitive.
  Structure diff_only;
  diff_only.basis.names = {"p", "q"};
  diff_only.basis.vdeg = {1, 0};
  diff_only.comp.resize(2);
  diff_only.comp[1][1] = LinComb{{Word{0}, Rat(1)}};
  CHECK(check_cinfty(diff_only).ok);
  // The Lie kind is rejected.
  Structure L;
  L.kind = Kind::Linf;
  L.basis.names = {"a"};
  L.basis.vdeg = {0};
  L.comp.resize(1);
  CHECK_THROWS_AS(check_cinfty(L), InftyError);
}

TEST_CASE("unitality") {
  CHECK(check_unital(dual_numbers()).ok);
  CHECK(check_unital(truncated_cubic()).ok);
  CHECK(check_unital(ground_field()).ok);

  // Declaring x as the unit of the dual numbers fails (x*x = 0 != x).
  auto bad = dual_numbers();
  bad.basis.unit = 1;
  CHECK_FALSE(check_unital(bad).ok);

  // A zero structure with a declared unit misses the unit terms.
  Structure zero;
  zero.basis.names = {"tau", "x"};
  zero.basis.vdeg = {0, 0};
  zero.basis.unit = 0;
  zero.comp.resize(2);
  CHECK_FALSE(check_unital(zero).ok);

  // No declared unit at all.
  auto anon = noncommutative_pair();
  try {
    check_unital(anon);
    FAIL("expected NoUnitDeclared");
  } catch (const InftyError& e) {
    CHECK(e.code == "NoUnitDeclared");
  }
}

TEST_CASE("conversion from the commutative to the associative kind") {
  auto S = dual_numbers();
  auto A = convert(S, Kind::Ainf);
  CHECK(A.kind == Kind::Ainf);
  CHECK(A.comp == S.comp);
  CHECK(validate_square_zero(A, 6).ok);
}

TEST_CASE("a minimal commutative structure converts to the trivial Lie structure") {
  auto S = nonstrict_cinfty();
  auto L = convert(S, Kind::Linf);
  CHECK(L.kind == Kind::Linf);
  for (const auto& per_g : L.comp) CHECK(per_g.empty());
}

TEST_CASE("a symmetric product converts to the abelian Lie structure") {
  auto L = convert(dual_numbers(), Kind::Linf);
  for (const auto& per_g : L.comp) CHECK(per_g.empty());
}

TEST_CASE("a noncommutative product converts to its commutator bracket") {
  auto A = noncommutative_pair();
  auto L = convert(A, Kind::Linf);
  CHECK(L.kind == Kind::Linf);
  // [e,n] = n is the only bracket: the dual value on n is the symmetric
  // word en; the odd square ee dies in the symmetrization.
  CHECK(L.comp[0].empty());
  REQUIRE(L.comp[1].count(2) == 1);
  CHECK(L.comp[1].at(2) == LinComb{{Word{0, 1}, Rat(1)}});
  CHECK(validate_square_zero(L, 6).ok);
}

TEST_CASE("illegal conversion directions") {
  auto A = noncommutative_pair();
  CHECK_THROWS_AS(convert(A, Kind::Ainf), InftyError);
  auto L = convert(A, Kind::Linf);
  CHECK_THROWS_AS(convert(L, Kind::Ainf), InftyError);
  CHECK_THROWS_AS(convert(L, Kind::Linf), InftyError);
  try {
    convert(L, Kind::Ainf);
  } catch (const InftyError& e) {
    CHECK(e.code == "IllegalDirection");
  }
}

TEST_CASE("identity morphism passes") {
  auto S = dual_numbers();
  Morphism id;
  id.comp.resize(2);
  id.comp[0][1] = LinComb{{Word{0}, Rat(1)}};
  id.comp[1][1] = LinComb{{Word{1}, Rat(1)}};
  auto rep = check_morphism(id, S, S, 6);
  CHECK(rep.ok);
  CHECK(rep.phi1_chain_map);
}

TEST_CASE("a non-multiplicative linear isomorphism fails at weight 2") {
  auto S = dual_numbers();
  Morphism phi;
  phi.comp.resize(2);
  phi.comp[0][1] = LinComb{{Word{0}, Rat(1)}};
  phi.comp[1][1] = LinComb{{Word{1}, Rat(1)}, {Word{0}, Rat(1)}};  // x -> x+1
  auto rep = check_morphism(phi, S, S, 6);
  REQUIRE_FALSE(rep.ok);
  CHECK(rep.phi1_chain_map);  // there is no differential to violate
  CHECK(rep.violations[0].weight == 2);
}

// Two-generator dg fixture: d(a) = b with |a| = 1, |b| = 0 and no products;
// conjugating by the algebra automorphism a -> a + bb produces a twisted
// structure for which the identity is multiplicative only after adding the
// weight-2 correction.
static Structure twisted_target() {
  Structure T;
  T.basis.names = {"a", "b"};
  T.basis.vdeg = {1, 0};
  T.comp.resize(2);
  T.comp[1][1] = LinComb{{Word{0}, Rat(1)}};  // value of m on b is a
  T.max_arity = 1;
  return T;
}

static Structure twisted_source() {
  Structure F = twisted_target();
  // Conjugated structure: m(b) = a - bb, m(a) = ab - ba.
  F.comp[1][2] = LinComb{{Word{1, 1}, Rat(-1)}};
  F.comp[0][2] = LinComb{{Word{0, 1}, Rat(1)}, {Word{1, 0}, Rat(-1)}};
  F.max_arity = 2;
  return F;
}

TEST_CASE("a weight-2 correction turns a chain map into a morphism") {
  Structure T = twisted_target(), F = twisted_source();
  REQUIRE(validate_square_zero(F, 8).ok);
  REQUIRE(validate_square_zero(T, 8).ok);

  Morphism phi1;  // the identity on generators, no correction
  phi1.comp.resize(2);
  phi1.comp[0][1] = LinComb{{Word{0}, Rat(1)}};
  phi1.comp[1][1] = LinComb{{Word{1}, Rat(1)}};
  auto rep1 = check_morphism(phi1, F, T, 6);
  CHECK_FALSE(rep1.ok);
  CHECK(rep1.phi1_chain_map);  // it is a chain map, just not multiplicative

  // Brute-force the weight-2 correction coefficient on a -> a + c*bb.
  int solutions = 0;
  Rat solution;
  for (int c = -3; c <= 3; ++c) {
    Morphism phi = phi1;
    phi.comp[0][2] = LinComb{{Word{1, 1}, Rat(c)}};
    if (check_morphism(phi, F, T, 6).ok) {
      ++solutions;
      solution = Rat(c);
    }
  }
  CHECK(solutions == 1);
  CHECK(solution == 1);
}

TEST_CASE("morphism values must preserve degree") {
  auto S = dual_numbers();
  Morphism phi;
  phi.comp.resize(2);
  phi.comp[0][1] = LinComb{{Word{0}, Rat(1)}};
  phi.comp[1][2] = LinComb{{Word{0, 1}, Rat(1)}};  // degree 2 value on x
  CHECK_THROWS_AS(check_morphism(phi, S, S, 4), InftyError);
}

TEST_CASE("conversion commutes with validation") {
  auto S = nonstrict_cinfty();
  auto A = convert(S, Kind::Ainf);
  CHECK(validate_square_zero(A, 8).ok == validate_square_zero(S, 8).ok);
}

TEST_CASE("misfiled components are rejected") {
  Structure S;
  S.basis.names = {"a"};
  S.basis.vdeg = {0};
  S.comp.resize(1);
  S.comp[0][3] = LinComb{{Word{0, 0}, Rat(1)}};  // weight-2 word filed at 3
  CHECK_THROWS_AS(validate_square_zero(S, 4), InftyError);
}
