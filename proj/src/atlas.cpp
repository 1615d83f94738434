#include "cluster/atlas.hpp"

#include <algorithm>

namespace cluster {

std::string to_string(Side side) {
  switch (side) {
    case Side::A:
      return "A";
    case Side::X:
      return "X";
    case Side::APrin:
      return "A_prin";
  }
  return "?";
}

Seed side_seed(const Seed& seed, Side side) { return side == Side::APrin ? principal_seed(seed).seed : seed; }

std::size_t side_rank(const Seed& seed, Side side) {
  return side == Side::APrin ? seed.rank + seed.index_count() : seed.rank;
}

MutationData mutation_data(const Seed& seed, Side side, int label) {
  const IntVector e = seed.e(label);
  if (side == Side::X) return {to_exponent(IntVector(seed.bracket * e)), to_exponent(e)};
  // A and A_prin: z^m -> z^m (1 + z^{p1(e_j)})^{-<e_j, m>}
  return {to_exponent(e), to_exponent(IntVector(seed.bracket.transpose() * e))};
}

RationalFn mutation_step(const Seed& seed, Side side, int label, const RationalFn& f) {
  if (seed.is_frozen(label)) {
    seed.position(label);
    return f;
  }
  const auto d = mutation_data(seed, side, label);
  return mutation_pullback(f, d.u, d.psi);
}

namespace {

std::vector<Seed> path_seeds(const Seed& seed, Side side, const std::vector<int>& path) {
  return seeds_along_path(side_seed(seed, side), path);
}

void check_rank(const Seed& seed, Side side, const RationalFn& f) {
  if (f.rank() != side_rank(seed, side))
    throw ClusterError(ErrorKind::RankMismatch, "function has rank " + std::to_string(f.rank()) + ", " +
                                                    to_string(side) + " chart needs " +
                                                    std::to_string(side_rank(seed, side)));
}

}  // namespace

RationalFn transition_pullback(const Seed& seed, Side side, const std::vector<int>& path, const RationalFn& f) {
  check_rank(seed, side, f);
  const auto seeds = path_seeds(seed, side, path);
  RationalFn g = f;
  for (std::size_t k = path.size(); k-- > 0;) g = mutation_step(seeds[k], side, path[k], g);
  return g;
}

namespace {

IntMatrix initial_complement(const Seed& seed, Side side) {
  if (side == Side::APrin) {
    const auto k = static_cast<Eigen::Index>(seed.index_count());
    const auto n = static_cast<Eigen::Index>(seed.rank);
    IntMatrix c = IntMatrix::Zero(k + n, n);
    c.bottomRows(n) = IntMatrix::Identity(n, n);
    return c;
  }
  return complement_basis(seed.E);
}

}  // namespace

IntMatrix chart_basis(const Seed& seed, Side side, const std::vector<int>& path) {
  const Seed s = side_seed(seed, side);
  const IntMatrix C = initial_complement(seed, side);
  Seed extended = s;
  extended.E.conservativeResize(Eigen::NoChange, s.E.cols() + C.cols());
  extended.E.rightCols(C.cols()) = C;
  int next = s.labels.empty() ? 0 : *std::max_element(s.labels.begin(), s.labels.end());
  for (Eigen::Index c = 0; c < C.cols(); ++c) {
    extended.labels.push_back(++next);
    extended.frozen.insert(next);
  }
  for (int label : path) {
    s.position(label);
    if (!s.is_frozen(label)) extended = mutate_seed(extended, label);
  }
  if (side == Side::X) return extended.E;
  return unimodular_inverse(extended.E).transpose();
}

RationalFn transition_in_chart_coordinates(const Seed& seed, Side side, const std::vector<int>& path,
                                           const RationalFn& f) {
  check_rank(seed, side, f);
  const MonomialMap to_raw{chart_basis(seed, side, path), {}};
  const MonomialMap from_raw{unimodular_inverse(chart_basis(seed, side, {})), {}};
  return from_raw.apply(transition_pullback(seed, side, path, to_raw.apply(f)));
}

std::vector<RationalFn> cluster_variables(const Seed& seed, Side side, const std::vector<int>& path) {
  const IntMatrix basis = chart_basis(seed, side, path);
  std::vector<RationalFn> out;
  for (Eigen::Index c = 0; c < basis.cols(); ++c)
    out.push_back(transition_pullback(seed, side, path, RationalFn::monomial(to_exponent(basis.col(c)))));
  return out;
}

std::int64_t exceptional_valuation(const Seed& seed, const RationalFn& f, int label) {
  if (f.is_zero()) throw ClusterError(ErrorKind::ZeroInput, "valuation of zero");
  if (seed.is_frozen(label)) throw ClusterError(ErrorKind::FrozenIndex, "no exceptional divisor at a frozen index");
  check_rank(seed, Side::X, f);
  const auto d = mutation_data(seed, Side::X, label);
  const RationalFn g = inverse_mutation_pullback(f, d.u, d.psi);
  std::int64_t v = factor_multiplicity(g.numerator(), d.psi);
  for (const auto& [factor, k] : g.denominator()) v -= k * factor_multiplicity(factor, d.psi);
  return v;
}

std::int64_t frozen_valuation(const Seed& seed, Side side, const RationalFn& f, int label) {
  if (f.is_zero()) throw ClusterError(ErrorKind::ZeroInput, "valuation of zero");
  check_rank(seed, side, f);
  const Seed s = side_seed(seed, side);
  const IntVector e = s.e(label);
  const Exponent u = side == Side::X ? to_exponent(IntVector(s.bracket * e)) : to_exponent(e);
  return toric_valuation(f, u);
}

DivisorClass divisor_of_monomial(const Seed& seed, const IntVector& n) {
  if (n.size() != static_cast<Eigen::Index>(seed.rank)) throw ClusterError(ErrorKind::RankMismatch, "n has wrong length");
  return derive_maps(seed).pbar1 * n;
}

FinAbPresentation picard_group(const Seed& seed) { return cokernel(derive_maps(seed).pbar1); }

bool is_section(const Seed& seed, const RationalFn& f, const DivisorClass& m) {
  check_rank(seed, Side::X, f);
  if (m.size() != static_cast<Eigen::Index>(seed.index_count()))
    throw ClusterError(ErrorKind::RankMismatch, "divisor class has wrong length");
  if (!is_laurent(f)) throw ClusterError(ErrorKind::NotRegularOnU0, "function has poles on the initial torus");
  if (f.is_zero()) return true;
  for (std::size_t p = 0; p < seed.labels.size(); ++p) {
    const int label = seed.labels[p];
    const std::int64_t v =
        seed.is_frozen(label) ? frozen_valuation(seed, Side::X, f, label) : exceptional_valuation(seed, f, label);
    if (Integer(v) < -m(static_cast<Eigen::Index>(p))) return false;
  }
  return true;
}

std::vector<IntVector> monomial_sections(const Seed& seed, const DivisorClass& m, int radius) {
  if (radius < 0) throw ClusterError(ErrorKind::InvalidInput, "negative box radius");
  const IntMatrix pbar1 = derive_maps(seed).pbar1;
  const auto n = static_cast<Eigen::Index>(seed.rank);
  std::vector<IntVector> out;
  IntVector x = IntVector::Constant(n, Integer(-radius));
  for (;;) {
    const IntVector d = pbar1 * x;
    bool ok = true;
    for (Eigen::Index i = 0; i < d.size() && ok; ++i) ok = d(i) >= -m(i);
    if (ok) out.push_back(x);
    // Odometer with the last coordinate fastest gives lex order.
    Eigen::Index k = n - 1;
    while (k >= 0 && x(k) == radius) x(k--) = -radius;
    if (k < 0) break;
    x(k) += 1;
  }
  return out;
}

void validate_fan(const Seed& seed, const FanSigma& fan) {
  const auto frozen = seed.frozen_labels();
  const IntMatrix p2 = seed.bracket;
  std::set<int> rays;
  std::set<std::set<int>> listed(fan.cones.begin(), fan.cones.end());
  if (listed.size() != fan.cones.size()) throw ClusterError(ErrorKind::InvalidFan, "a cone is listed twice");
  for (const auto& cone : fan.cones) {
    if (cone.empty()) throw ClusterError(ErrorKind::InvalidFan, "empty cone listed");
    for (int l : cone) {
      if (!seed.is_frozen(l)) throw ClusterError(ErrorKind::InvalidFan, "cone uses non-frozen index " + std::to_string(l));
      rays.insert(l);
    }
    RatMatrix gens(static_cast<Eigen::Index>(seed.rank), static_cast<Eigen::Index>(cone.size()));
    Eigen::Index c = 0;
    for (int l : cone) gens.col(c++) = IntVector(p2 * seed.e(l)).cast<Rational>();
    if (field_rank(gens) != gens.cols()) throw ClusterError(ErrorKind::InvalidFan, "cone is not simplicial");
    for (int l : cone) {
      if (cone.size() == 1) break;
      std::set<int> face = cone;
      face.erase(l);
      if (!listed.count(face)) throw ClusterError(ErrorKind::InvalidFan, "fan is not closed under faces");
    }
  }
  if (rays != std::set<int>(frozen.begin(), frozen.end()))
    throw ClusterError(ErrorKind::InvalidFan, "rays must be exactly the frozen directions");
  for (std::size_t a = 0; a < frozen.size(); ++a)
    for (std::size_t b = a + 1; b < frozen.size(); ++b)
      if (IntVector(p2 * seed.e(frozen[a])) == IntVector(p2 * seed.e(frozen[b])))
        throw ClusterError(ErrorKind::InvalidFan, "two frozen indices share a ray");
}

std::vector<std::set<int>> maximal_cones(const FanSigma& fan) {
  std::vector<std::set<int>> out;
  for (const auto& cone : fan.cones) {
    bool maximal = true;
    for (const auto& other : fan.cones)
      if (other.size() > cone.size() && std::includes(other.begin(), other.end(), cone.begin(), cone.end()))
        maximal = false;
    if (maximal) out.push_back(cone);
  }
  return out;
}

IntMatrix cartier_sublattice(const Seed& seed, const FanSigma& fan) {
  validate_fan(seed, fan);
  const IntMatrix pbar1 = derive_maps(seed).pbar1;
  const auto k = static_cast<Eigen::Index>(seed.index_count());
  IntMatrix basis = IntMatrix::Identity(k, k);
  for (const auto& cone : maximal_cones(fan)) {
    std::vector<Eigen::Index> rows;
    for (int l : cone) rows.push_back(seed.position(l));
    IntMatrix restricted(static_cast<Eigen::Index>(rows.size()), pbar1.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) restricted.row(static_cast<Eigen::Index>(r)) = pbar1.row(rows[r]);
    const IntMatrix img = image_basis(restricted);
    // a is allowed on this cone iff a restricted to the cone lies in img.
    IntMatrix allowed = IntMatrix::Zero(k, img.cols() + k - static_cast<Eigen::Index>(rows.size()));
    for (Eigen::Index c = 0; c < img.cols(); ++c)
      for (std::size_t r = 0; r < rows.size(); ++r) allowed(rows[r], c) = img(static_cast<Eigen::Index>(r), c);
    Eigen::Index c = img.cols();
    for (Eigen::Index i = 0; i < k; ++i)
      if (std::find(rows.begin(), rows.end(), i) == rows.end()) allowed(i, c++) = 1;
    basis = lattice_intersection(basis, allowed);
  }
  return hermite_column_basis(basis);
}

}  // namespace cluster
