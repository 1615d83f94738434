#include "cluster/laurent.hpp"
#include "doctest.h"

#include <random>

using namespace cluster;

namespace {

LaurentPoly z(std::int64_t a, std::int64_t b, long long c = 1) { return LaurentPoly::monomial({a, b}, Rational(c)); }

LaurentPoly random_poly(std::mt19937_64& rng, int terms) {
  std::uniform_int_distribution<int> e(-2, 2), c(-3, 3);
  LaurentPoly p(2);
  for (int t = 0; t < terms; ++t) p.add_term({e(rng), e(rng)}, Rational(c(rng)));
  return p;
}

}  // namespace

TEST_CASE("arithmetic") {
  const LaurentPoly f = z(0, 0) + z(1, 0);
  CHECK((f * f).coefficient({1, 0}) == 2);
  CHECK((f - f).is_zero());
  CHECK(f.pow(3).size() == 4);
  CHECK(f.to_string() == "1*z^(0,0) + 1*z^(1,0)");
  CHECK_THROWS_AS(f + LaurentPoly::constant(3, Rational(1)), ClusterError);
}

TEST_CASE("exact division") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const LaurentPoly a = random_poly(rng, 3);
    const LaurentPoly b = random_poly(rng, 3);
    if (a.is_zero() || b.is_zero()) continue;
    const auto q = (a * b).divide_exact(b);
    REQUIRE(q);
    CHECK(*q == a);
  }
  CHECK_FALSE((z(0, 0) + z(2, 0)).divide_exact(z(0, 0) + z(1, 0)));
  CHECK((z(0, 0) - z(2, 0)).divide_exact(z(0, 0) + z(1, 0)) == z(0, 0) - z(1, 0));
}

TEST_CASE("rational functions cancel and compare") {
  const LaurentPoly b = z(0, 0) + z(1, 0);
  const RationalFn f(b * z(0, 1), {{b, 1}});
  CHECK(f.denominator().empty());
  CHECK(f == RationalFn(z(0, 1)));
  const RationalFn g(z(0, 0), {{z(1, 0) + z(2, 0), 1}});
  // 1 / (z1 + z1^2) = z1^-1 / (1 + z1)
  CHECK(g.numerator() == z(-1, 0));
  CHECK(g.denominator().begin()->first == b);
  CHECK((g + g) == RationalFn(z(-1, 0, 2), {{b, 1}}));
  CHECK((g * RationalFn(b)) == RationalFn(z(-1, 0)));
  CHECK((g.inverse() * g) == RationalFn(z(0, 0)));
  CHECK(g.pow(-2) == RationalFn((z(1, 0) + z(2, 0)).pow(2)));
  CHECK_THROWS_AS(RationalFn(LaurentPoly(2)).inverse(), ClusterError);
}

TEST_CASE("mutation pullback and its inverse") {
  const Exponent u{1, 0}, psi{0, 1};
  const RationalFn x = RationalFn::monomial({1, 0});
  const RationalFn y = mutation_pullback(x, u, psi);
  CHECK(y == RationalFn(z(1, 0), {{z(0, 0) + z(0, 1), 1}}));
  CHECK(inverse_mutation_pullback(y, u, psi) == x);
  CHECK(mutation_pullback(RationalFn::monomial({0, 1}), u, psi) == RationalFn::monomial({0, 1}));
  CHECK_THROWS_AS(mutation_pullback(x, u, Exponent{1, 0}), ClusterError);

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const RationalFn f(random_poly(rng, 3));
    CHECK(inverse_mutation_pullback(mutation_pullback(f, u, psi), u, psi) == f);
  }
}

TEST_CASE("valuations and multiplicities") {
  const LaurentPoly b = z(0, 0) + z(1, 0);
  CHECK(factor_multiplicity(b.pow(3) * z(0, 1), {1, 0}) == 3);
  CHECK(factor_multiplicity(z(0, 1), {1, 0}) == 0);
  CHECK_THROWS_AS(factor_multiplicity(LaurentPoly(2), {1, 0}), ClusterError);
  CHECK(toric_valuation(z(2, -1) + z(-1, 3), Exponent{1, 0}) == -1);
  CHECK(toric_valuation(RationalFn(z(2, 0), {{b, 1}}), Exponent{1, 0}) == 2);
  CHECK_THROWS_AS(toric_valuation(LaurentPoly(2), Exponent{1, 0}), ClusterError);
}

TEST_CASE("evaluation") {
  const RationalFn f(z(1, 0), {{z(0, 0) + z(0, 1), 1}});
  CHECK(evaluate(f, {Rational(3), Rational(2)}) == 1);
  try {
    evaluate(f, {Rational(3), Rational(-1)});
    FAIL("expected DenominatorVanishes");
  } catch (const ClusterError& e) {
    CHECK(e.kind() == ErrorKind::DenominatorVanishes);
  }
  CHECK(is_laurent(RationalFn(z(0, 0) - z(0, 2), {{z(0, 0) + z(0, 1), 1}})) == z(0, 0) - z(0, 1));
}

TEST_CASE("monomial maps") {
  MonomialMap swap{int_matrix({{0, 1}, {1, 0}}), {Rational(2), Rational(3)}};
  CHECK(swap.apply(z(1, 2)) == z(2, 1, 18));
  CHECK(swap.apply(RationalFn(z(0, 0), {{z(0, 0) + z(1, 0), 1}})) ==
        RationalFn(z(0, 0), {{z(0, 0) + z(0, 1, 2), 1}}));
}
