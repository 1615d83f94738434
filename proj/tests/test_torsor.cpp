#include "cluster/torsor.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cluster;
using cluster::testing::seed_a1f;
using cluster::testing::seed_a2;
using cluster::testing::seed_k;

namespace {

RationalFn mono(std::vector<std::int64_t> e, long long c = 1) { return RationalFn::monomial(e, Rational(c)); }

// Rank 3 seed with a one-dimensional kernel of p1, so phi and the s-shift are exercised.
Seed degenerate_seed() {
  return testing::make_seed(3, {1, 2, 3}, {3}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}});
}

}  // namespace

TEST_CASE("degrees") {
  const Seed s = seed_a1f();
  CHECK(degree_of(s, {1, 0, 0, 0}) == int_vector({1, 0}));
  CHECK(degree_of(s, {0, 0, 1, 0}) == int_vector({0, -1}));
  CHECK(degree_of(s, {1, 0, 1, 0}) == int_vector({1, -1}));
  for (int j : {1, 2}) CHECK(degree_of(s, to_exponent(p1_prin_of_index(s, j))) == int_vector({0, 0}));
}

TEST_CASE("p2 tilde") {
  const Seed s = seed_a2();
  const auto g = p2_tilde_pullback(s, mono({0, 0, 1, 0}));
  CHECK(g.value == mono({0, 1, 1, 0}));
  CHECK(g.degree == int_vector({0, 0}));
  CHECK(p2_tilde_pullback(s, mono({2, -1, 0, 0})).degree == int_vector({2, -1}));
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> d(-2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const RationalFn f = mono({d(rng), d(rng), d(rng), d(rng)}) + mono({d(rng), d(rng), d(rng), d(rng)}, 3);
    const RationalFn g2 = mono({d(rng), d(rng), d(rng), d(rng)}) - mono({0, 0, 0, 0});
    CHECK(p2_tilde_pullback(s, f * g2).value == p2_tilde_pullback(s, f).value * p2_tilde_pullback(s, g2).value);
  }
}

TEST_CASE("A_prin mutations preserve degree") {
  std::mt19937_64 rng(13);
  for (const Seed& s : {seed_a2(), seed_a1f(), seed_k()})
    for (int j : s.unfrozen_labels()) CHECK(check_prin_homogeneity(s, j, rng));
}

TEST_CASE("graded piece generators") {
  const Seed s = seed_a2();
  const auto g0 = graded_piece_generators(s, int_vector({0, 0}), 0, 1);
  CHECK(g0.size() == 9);
  const auto g1 = graded_piece_generators(s, int_vector({1, 0}), 1, 1);
  // n = 0, k = -1: z^{e1^*} (1 + z^{e1})^{-1}
  const RationalFn expected(LaurentPoly::monomial({1, 0, 0, 0}), {{LaurentPoly::binomial({0, 0, 1, 0}), 1}});
  CHECK(std::find(g1.begin(), g1.end(), expected) != g1.end());
  const auto gf = graded_piece_generators(seed_a1f(), int_vector({0, 0}), 2, 1);
  for (const auto& f : gf) {
    const Exponent& e = f.numerator().terms().begin()->first;
    CHECK(seed_a1f().pairing(int_vector({e[2], e[3]}), seed_a1f().e(2)) >= 0);
  }
  CHECK_THROWS_AS(graded_piece_generators(s, int_vector({0, 0}), 5, 1), ClusterError);
}

TEST_CASE("graded pieces match on every chart") {
  for (const Seed& s : {seed_a2(), seed_a1f(), seed_k()}) {
    std::vector<DivisorClass> ms{int_vector({0, 0})};
    for (Eigen::Index i = 0; i < 2; ++i) {
      ms.push_back(IntVector::Unit(2, i));
      ms.push_back(-IntVector::Unit(2, i));
    }
    std::vector<int> charts{0};
    charts.insert(charts.end(), s.labels.begin(), s.labels.end());
    for (const auto& m : ms)
      for (int chart : charts) {
        const auto report = verify_R(s, m, chart, 3);
        CHECK_MESSAGE(report.pass, "chart ", chart, (report.witnesses.empty() ? "" : report.witnesses.front()));
        CHECK(report.checked > 0);
      }
  }
}

TEST_CASE("shifting generators") {
  const Seed s = seed_a2();
  const FiberSpec spec = make_fiber_spec(s);
  CHECK(spec.t == TorusPoint{Rational(2), Rational(3)});
  auto [a, b] = shifting_generator(s, int_vector({1, 2}), int_vector({0, 1}), int_vector({0, 0}), spec);
  CHECK(a.is_zero());
  CHECK(b.is_zero());
  const IntVector m0 = derive_maps(s).pbar1 * int_vector({1, 0});
  auto [ixm, it] = shifting_generator(s, int_vector({1, -1}), int_vector({2, 0}), m0, spec);
  CHECK(p2_tilde_pullback(s, ixm).value == it);
  CHECK_THROWS_AS(shifting_generator(seed_k(), int_vector({0, 0}), int_vector({0, 0}), int_vector({1, 0}),
                                     make_fiber_spec(seed_k())),
                  ClusterError);
}

TEST_CASE("universal torsor identity over random trials") {
  for (const Seed& s : {seed_a2(), seed_a1f(), seed_k(), degenerate_seed()}) {
    const auto report = verify_UTor(s, 100, make_fiber_spec(s), 99);
    CHECK(report.pass);
    CHECK(report.checked == 100);
  }
  const auto control = verify_UTor(seed_a2(), 5, make_fiber_spec(seed_a2()), 99, true);
  CHECK_FALSE(control.pass);
  CHECK_FALSE(control.witnesses.empty());
}

TEST_CASE("restriction to the fiber over t") {
  const Seed s = seed_a2();
  const TorusPoint t{Rational(2), Rational(3)};
  CHECK(restrict_to_fiber_t(s, mono({0, 0, 1, 2}), t) == mono({0, 0}, 18));
  CHECK(restrict_to_fiber_t(s, mono({1, -1, 0, 0}), t) == mono({1, -1}));
  const RationalFn f = mono({1, 0, 1, 0}) + mono({0, 1, 0, -1});
  const RationalFn g = mono({0, 0, 1, 1}) - mono({2, 0, 0, 0});
  CHECK(restrict_to_fiber_t(s, f * g, t) == restrict_to_fiber_t(s, f, t) * restrict_to_fiber_t(s, g, t));
  // z^m z^n -> t^n z^{m + pbar1 n}
  for (long long a = -1; a <= 1; ++a)
    for (long long b = -1; b <= 1; ++b) {
      const IntVector n = int_vector({a, b});
      const IntVector target = int_vector({1, 0}) + derive_maps(s).pbar1 * n;
      const RationalFn composite = restrict_to_fiber_t(s, p2_tilde_pullback(s, mono({1, 0, a, b})).value, t);
      CHECK(composite == RationalFn::monomial(to_exponent(target), monomial_value({a, b}, t)));
    }
}

TEST_CASE("restriction to the X fiber") {
  const Seed s = degenerate_seed();
  const FiberSpec spec = make_fiber_spec(s);
  const auto split = default_splitting(s);
  REQUIRE(split.kernel.cols() == 1);
  const Exponent k = to_exponent(split.kernel.col(0));
  const RationalFn rk = restrict_to_X_fiber(RationalFn::monomial(k), spec, split);
  CHECK(rk == RationalFn(LaurentPoly::constant(2, spec.phi[0])));
  const Exponent n{1, -2, 1};
  CHECK(restrict_to_X_fiber(RationalFn::monomial(n + k), spec, split) ==
        restrict_to_X_fiber(RationalFn::monomial(n), spec, split) * spec.phi[0]);
  // A different complement rescales by phi^{-A nbar} only.
  XFiberSplitting other{IntMatrix(split.complement + split.kernel * int_matrix({{1, 0}})), split.kernel};
  const auto a = restrict_to_X_fiber(RationalFn::monomial(n), spec, split);
  const auto b = restrict_to_X_fiber(RationalFn::monomial(n), spec, other);
  const Exponent nbar = a.numerator().terms().begin()->first;
  CHECK(b.numerator().terms().begin()->first == nbar);
  CHECK(b == a * power(spec.phi[0], -nbar[0]));
  // K1 = 0: identity.
  const Seed a2 = seed_a2();
  CHECK(restrict_to_X_fiber(mono({2, -1}), make_fiber_spec(a2), default_splitting(a2)) == mono({2, -1}));
}
