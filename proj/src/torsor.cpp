#include "cluster/torsor.hpp"

#include <set>

namespace cluster {

namespace {

Exponent join(const IntVector& m, const IntVector& n) {
  Exponent out = to_exponent(m);
  const Exponent tail = to_exponent(n);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

std::size_t twist_rank(const Seed& seed) { return seed.index_count() + seed.rank; }

// Calls visit(n) for every n in [-radius, radius]^rank, lex order.
template <typename Visit>
void for_each_in_box(std::size_t rank, int radius, Visit&& visit) {
  const auto r = static_cast<Eigen::Index>(rank);
  IntVector x = IntVector::Constant(r, Integer(-radius));
  for (;;) {
    visit(static_cast<const IntVector&>(x));
    Eigen::Index k = r - 1;
    while (k >= 0 && x(k) == radius) x(k--) = -radius;
    if (k < 0) return;
    x(k) += 1;
  }
}

IntVector random_vector(std::mt19937_64& rng, std::size_t size, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntVector v(static_cast<Eigen::Index>(size));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = d(rng);
  return v;
}

std::string vec_string(const IntVector& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? "," : "") + v(i).str();
  return s + ")";
}

void check_chart(const Seed& seed, int chart) {
  if (chart != 0) seed.position(chart);
}

}  // namespace

IntVector degree_of(const Seed& seed, const Exponent& q) {
  const auto k = static_cast<Eigen::Index>(seed.index_count());
  if (q.size() != twist_rank(seed)) throw ClusterError(ErrorKind::RankMismatch, "degree_of: exponent length");
  const IntVector v = to_int_vector(q);
  return IntVector(v.head(k) - derive_maps(seed).pbar1 * v.tail(static_cast<Eigen::Index>(seed.rank)));
}

std::optional<IntVector> homogeneous_degree(const Seed& seed, const RationalFn& f) {
  if (f.is_zero()) return std::nullopt;
  std::optional<IntVector> deg;
  for (const auto& [e, c] : f.numerator().terms()) {
    const IntVector d = degree_of(seed, e);
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  const IntVector zero = IntVector::Zero(static_cast<Eigen::Index>(seed.index_count()));
  for (const auto& [g, k] : f.denominator())
    for (const auto& [e, c] : g.terms())
      if (degree_of(seed, e) != zero) return std::nullopt;
  return deg;
}

GradedElement make_graded(const Seed& seed, RationalFn f) {
  auto deg = homogeneous_degree(seed, f);
  return {std::move(f), std::move(deg)};
}

IntMatrix p2_tilde_matrix(const Seed& seed) {
  const auto k = static_cast<Eigen::Index>(seed.index_count());
  const auto n = static_cast<Eigen::Index>(seed.rank);
  IntMatrix L = IntMatrix::Identity(k + n, k + n);
  L.topRightCorner(k, n) = derive_maps(seed).pbar1;
  return L;
}

GradedElement p2_tilde_pullback(const Seed& seed, const RationalFn& f) {
  if (f.rank() != twist_rank(seed)) throw ClusterError(ErrorKind::RankMismatch, "p2~: function must live on M_I + N");
  return make_graded(seed, MonomialMap{p2_tilde_matrix(seed), {}}.apply(f));
}

bool check_prin_homogeneity(const Seed& seed, int label, std::mt19937_64& rng, int samples) {
  const Seed prin = principal_seed(seed).seed;
  const std::size_t r = twist_rank(seed);
  const auto k = static_cast<Eigen::Index>(seed.index_count());
  const IntMatrix pbar1 = derive_maps(seed).pbar1;
  for (int s = 0; s < samples; ++s) {
    const Exponent q = to_exponent(random_vector(rng, r, 3));
    LaurentPoly f = LaurentPoly::monomial(q);
    if (s % 2 == 1) {
      // Add a second term of the same degree: shift by (pbar1(n), n).
      const IntVector n = random_vector(rng, seed.rank, 2);
      IntVector shift(k + n.size());
      shift << pbar1 * n, n;
      f.add_term(q + to_exponent(shift), Rational(s));
    }
    const auto before = homogeneous_degree(seed, RationalFn(f));
    const auto after = homogeneous_degree(seed, mutation_step(prin, Side::A, label, RationalFn(f)));
    if (!before || !after || *before != *after) return false;
  }
  return true;
}

std::vector<RationalFn> graded_piece_generators(const Seed& seed, const DivisorClass& m, int chart, int radius) {
  check_chart(seed, chart);
  if (m.size() != static_cast<Eigen::Index>(seed.index_count()))
    throw ClusterError(ErrorKind::RankMismatch, "divisor class has wrong length");
  std::vector<RationalFn> out;
  const IntVector zero_n = IntVector::Zero(static_cast<Eigen::Index>(seed.rank));
  for_each_in_box(seed.rank, radius, [&](const IntVector& n) {
    const RationalFn base = RationalFn::monomial(join(m, n));
    if (chart == 0) {
      out.push_back(base);
      return;
    }
    const IntVector e = seed.e(chart);
    const Integer bracket = seed.pairing(n, e);
    const Integer a = m(seed.position(chart));
    if (seed.is_frozen(chart)) {
      if (bracket >= -a) out.push_back(base);
      return;
    }
    const RationalFn binomial(LaurentPoly::binomial(join(IntVector::Zero(m.size()), e)));
    for (Integer k = -a; k <= -a + radius; ++k) out.push_back(base * binomial.pow(to_int64(k - bracket)));
  });
  return out;
}

CheckReport verify_R(const Seed& seed, const DivisorClass& m, int chart, int radius) {
  CheckReport report;
  report.theorem = "R";
  const auto generators = graded_piece_generators(seed, m, chart, radius);
  const auto k = static_cast<Eigen::Index>(seed.index_count());
  const IntMatrix pbar1 = derive_maps(seed).pbar1;
  auto prin_exponent = [&](const IntVector& n) { return join(IntVector(m + pbar1 * n), n); };

  std::set<LaurentPoly> images;
  for (const auto& g : generators) {
    GradedElement image = p2_tilde_pullback(seed, g);
    if (chart != 0 && !seed.is_frozen(chart)) {
      const IntVector e = seed.e(chart);
      const IntVector ui = IntVector::Unit(k + static_cast<Eigen::Index>(seed.rank), seed.position(chart));
      image = make_graded(seed, inverse_mutation_pullback(image.value, to_exponent(ui),
                                                          to_exponent(p1_prin_of_index(seed, chart))));
    }
    ++report.checked;
    if (!image.degree || *image.degree != m) {
      report.fail("image of " + g.to_string() + " is not homogeneous of degree " + vec_string(m));
      continue;
    }
    const auto laurent = is_laurent(image.value);
    if (!laurent) {
      report.fail("image of " + g.to_string() + " is not regular on the chart: " + image.value.to_string());
      continue;
    }
    images.insert(*laurent);
  }

  std::set<LaurentPoly> direct;
  for_each_in_box(seed.rank, radius, [&](const IntVector& n) {
    const LaurentPoly z = LaurentPoly::monomial(prin_exponent(n));
    if (chart == 0) {
      direct.insert(z);
      return;
    }
    const Eigen::Index p = seed.position(chart);
    if (seed.is_frozen(chart)) {
      if (m(p) + IntVector(pbar1 * n)(p) >= 0) direct.insert(z);
      return;
    }
    const LaurentPoly wall = LaurentPoly::binomial(to_exponent(p1_prin_of_index(seed, chart)));
    for (int l = 0; l <= radius; ++l) direct.insert(z * wall.pow(static_cast<unsigned>(l)));
  });

  for (const auto& f : images)
    if (!direct.count(f)) report.fail("image " + f.to_string() + " missing from the direct degree piece");
  for (const auto& f : direct)
    if (!images.count(f)) report.fail("direct element " + f.to_string() + " not reached by p2~");
  return report;
}

FiberSpec make_fiber_spec(const Seed& seed, std::optional<TorusPoint> t) {
  if (!t) {
    t.emplace();
    for (long long p = 2; t->size() < seed.rank; ++p) {
      bool prime = true;
      for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) prime = false;
      if (prime) t->push_back(Rational(p));
    }
  }
  if (t->size() != seed.rank) throw ClusterError(ErrorKind::RankMismatch, "t must have one coordinate per basis vector of N");
  const IntMatrix K1 = derive_maps(seed).K1;
  TorusPoint phi;
  for (Eigen::Index j = 0; j < K1.cols(); ++j) phi.push_back(monomial_value(to_exponent(K1.col(j)), *t));
  return FiberSpec{*t, std::move(phi), section_of_pbar1(seed)};
}

std::pair<RationalFn, RationalFn> shifting_generator(const Seed& seed, const IntVector& m, const IntVector& n,
                                                     const IntVector& m0, const FiberSpec& spec) {
  const IntVector n0 = spec.section(m0);
  const Rational c = monomial_value(to_exponent(n0), spec.t);
  const IntVector mp = m + derive_maps(seed).pbar1 * n;
  RationalFn ixm = RationalFn::monomial(join(IntVector(m - m0), IntVector(n + n0))) - RationalFn::monomial(join(m, n), c);
  RationalFn it = RationalFn::monomial(join(mp, IntVector(n + n0))) - RationalFn::monomial(join(mp, n), c);
  return {std::move(ixm), std::move(it)};
}

CheckReport verify_UTor(const Seed& seed, int trials, const FiberSpec& spec, std::uint64_t rng_seed, bool corrupt) {
  CheckReport report;
  report.theorem = "UTor";
  std::mt19937_64 rng(rng_seed);
  const DerivedMaps maps = derive_maps(seed);
  for (int trial = 0; trial < trials; ++trial) {
    const IntVector m = random_vector(rng, seed.index_count(), 3);
    const IntVector n = random_vector(rng, seed.rank, 3);
    const IntVector m0 = maps.pbar1 * random_vector(rng, seed.rank, 2);
    auto [ixm, it] = shifting_generator(seed, m, n, m0, spec);
    if (corrupt && trial == 0) {
      const Rational c = monomial_value(to_exponent(spec.section(m0)), spec.t);
      ixm += RationalFn::monomial(join(m, n), 2 * c);
    }
    ++report.checked;
    const std::string where = "m=" + vec_string(m) + " n=" + vec_string(n) + " m0=" + vec_string(m0);
    if (p2_tilde_pullback(seed, ixm).value != it) report.fail(where + ": p2~ of the shifted generator is not the fiber generator");
    if (!restrict_to_fiber_t(seed, it, spec.t).is_zero()) report.fail(where + ": fiber generator does not vanish at t");

    if (maps.K1.cols() > 0) {
      const IntMatrix A = maps.K1 * [&] {
        IntMatrix r(maps.K1.cols(), spec.section.image_basis().cols());
        for (Eigen::Index i = 0; i < r.rows(); ++i) r.row(i) = random_vector(rng, static_cast<std::size_t>(r.cols()), 2).transpose();
        return r;
      }();
      FiberSpec shifted{spec.t, spec.phi, spec.section.shifted(A)};
      const IntVector k = shifted.section(m0) - spec.section(m0);
      const Rational phik = monomial_value(to_exponent(k), spec.t);
      const IntVector np = n + spec.section(m0);
      const RationalFn lhs = shifting_generator(seed, m, n, m0, shifted).first - shifting_generator(seed, m, n, m0, spec).first * phik;
      const RationalFn rhs = RationalFn::monomial(join(IntVector(m - m0), IntVector(np + k))) -
                             RationalFn::monomial(join(IntVector(m - m0), np), phik);
      if (lhs != rhs) report.fail(where + ": change of section is not a phi-relation multiple");
    }
  }
  return report;
}

RationalFn restrict_to_fiber_t(const Seed& seed, const RationalFn& f, const TorusPoint& t) {
  const auto k = static_cast<Eigen::Index>(seed.index_count());
  const auto n = static_cast<Eigen::Index>(seed.rank);
  if (f.rank() != twist_rank(seed)) throw ClusterError(ErrorKind::RankMismatch, "restriction expects an A_prin function");
  IntMatrix L = IntMatrix::Zero(k, k + n);
  L.leftCols(k) = IntMatrix::Identity(k, k);
  TorusPoint values(static_cast<std::size_t>(k), Rational(1));
  values.insert(values.end(), t.begin(), t.end());
  return MonomialMap{L, values}.apply(f);
}

XFiberSplitting default_splitting(const Seed& seed) {
  const IntMatrix K1 = derive_maps(seed).K1;
  return {complement_basis(K1), K1};
}

RationalFn restrict_to_X_fiber(const RationalFn& f, const FiberSpec& spec, const XFiberSplitting& splitting) {
  const Eigen::Index c = splitting.complement.cols();
  IntMatrix full(splitting.complement.rows(), c + splitting.kernel.cols());
  full << splitting.complement, splitting.kernel;
  const IntMatrix W = unimodular_inverse(full);
  TorusPoint values(static_cast<std::size_t>(W.cols()), Rational(1));
  for (Eigen::Index col = 0; col < W.cols(); ++col)
    for (Eigen::Index j = 0; j < splitting.kernel.cols(); ++j)
      values[static_cast<std::size_t>(col)] *= power(spec.phi[static_cast<std::size_t>(j)], to_int64(W(c + j, col)));
  return MonomialMap{W.topRows(c), values}.apply(f);
}

}  // namespace cluster
