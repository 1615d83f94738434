#include "cluster/seed.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace cluster {

Eigen::Index Seed::position(int label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw ClusterError(ErrorKind::InvalidIndex, "no index " + std::to_string(label) + " in seed");
  return static_cast<Eigen::Index>(it - labels.begin());
}

std::vector<int> Seed::unfrozen_labels() const {
  std::vector<int> out;
  for (int l : labels)
    if (!is_frozen(l)) out.push_back(l);
  return out;
}

std::vector<int> Seed::frozen_labels() const {
  std::vector<int> out;
  for (int l : labels)
    if (is_frozen(l)) out.push_back(l);
  return out;
}

bool Seed::operator==(const Seed& other) const {
  return rank == other.rank && labels == other.labels && frozen == other.frozen && E == other.E &&
         bracket == other.bracket;
}

std::vector<SeedViolation> validate_seed(const Seed& seed) {
  std::vector<SeedViolation> out;
  const auto n = static_cast<Eigen::Index>(seed.rank);
  if (seed.bracket.rows() != n || seed.bracket.cols() != n) {
    out.push_back({"shape", 0, "bracket must be rank x rank"});
    return out;
  }
  if (seed.E.rows() != n || seed.E.cols() != static_cast<Eigen::Index>(seed.labels.size())) {
    out.push_back({"shape", 0, "E must have one column of length rank per index"});
    return out;
  }
  if (std::set<int>(seed.labels.begin(), seed.labels.end()).size() != seed.labels.size())
    out.push_back({"labels", 0, "index labels must be distinct"});
  for (int f : seed.frozen)
    if (std::find(seed.labels.begin(), seed.labels.end(), f) == seed.labels.end())
      out.push_back({"frozen", f, "frozen index " + std::to_string(f) + " is not in I"});
  if (!is_saturated(seed.E)) out.push_back({"saturated", 0, "E is not a basis of a saturated sublattice"});

  for (int l : seed.labels) {
    const IntVector e = seed.E.col(seed.position(l));
    if (!seed.is_frozen(l) && seed.pairing(e, e) != 0)
      out.push_back({"[e_i,e_i]=0", l, "[e" + std::to_string(l) + ",e" + std::to_string(l) + "] != 0 for unfrozen " +
                                           std::to_string(l)});
    const IntVector p2e = seed.bracket * e;
    const Integer g = gcd_of(p2e);
    if (g == 0) {
      out.push_back({"p2(e_i)!=0", l, "p2(e" + std::to_string(l) + ") = 0"});
    } else if (seed.is_frozen(l) && g != 1) {
      out.push_back({"p2(e_i) primitive", l, "p2(e" + std::to_string(l) + ") not primitive"});
    }
  }
  return out;
}

DerivedMaps derive_maps(const Seed& seed) {
  DerivedMaps d;
  d.p1 = seed.bracket.transpose();
  d.p2 = seed.bracket;
  d.pbar1 = seed.E.transpose() * d.p1;
  d.pbar2 = seed.E.transpose() * d.p2;
  d.K1 = kernel_basis(d.p1);
  d.K2 = kernel_basis(d.p2);
  d.lambda = d.K1.transpose();
  return d;
}

PrinSeed principal_seed(const Seed& seed) {
  const auto k = static_cast<Eigen::Index>(seed.index_count());
  const auto n = static_cast<Eigen::Index>(seed.rank);
  PrinSeed out;
  out.index_count = seed.index_count();
  out.base_rank = seed.rank;
  Seed& p = out.seed;
  p.rank = seed.rank + seed.index_count();
  p.labels = seed.labels;
  p.frozen = seed.frozen;
  p.E = IntMatrix::Zero(k + n, k);
  p.E.topRows(k) = IntMatrix::Identity(k, k);
  // [(a, m), (a', m')] = [Ea, Ea'] + <Ea, m'> - <Ea', m>
  p.bracket = IntMatrix::Zero(k + n, k + n);
  p.bracket.topLeftCorner(k, k) = seed.E.transpose() * seed.bracket * seed.E;
  p.bracket.topRightCorner(k, n) = seed.E.transpose();
  p.bracket.bottomLeftCorner(n, k) = -seed.E;
  return out;
}

IntVector p1_prin_of_index(const Seed& seed, int label) {
  const auto k = static_cast<Eigen::Index>(seed.index_count());
  const auto n = static_cast<Eigen::Index>(seed.rank);
  const IntVector e = seed.e(label);
  IntVector out(k + n);
  out.head(k) = seed.E.transpose() * seed.bracket.transpose() * e;
  out.tail(n) = e;
  return out;
}

std::optional<std::vector<Integer>> is_skew(const Seed& seed) {
  const auto uf = seed.unfrozen_labels();
  const std::size_t r = uf.size();
  Matrix<Integer> B(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b)
      B(a, b) = seed.pairing(seed.e(uf[a]), seed.e(uf[b]));

  // d_i [e_i, e_j] = -d_j [e_j, e_i], propagated along the support graph.
  std::vector<std::optional<Rational>> d(r);
  for (std::size_t start = 0; start < r; ++start) {
    if (B(start, start) != 0) return std::nullopt;
    if (d[start]) continue;
    d[start] = Rational(1);
    std::queue<std::size_t> todo;
    todo.push(start);
    while (!todo.empty()) {
      const std::size_t i = todo.front();
      todo.pop();
      for (std::size_t j = 0; j < r; ++j) {
        if (i == j) continue;
        const Integer& bij = B(i, j);
        const Integer& bji = B(j, i);
        if ((bij == 0) != (bji == 0)) return std::nullopt;
        if (bij == 0) continue;
        const Rational dj = -(*d[i]) * Rational(bij) / Rational(bji);
        if (dj <= 0) return std::nullopt;
        if (!d[j]) {
          d[j] = dj;
          todo.push(j);
        } else if (*d[j] != dj) {
          return std::nullopt;
        }
      }
    }
  }
  Integer den_lcm = 1;
  for (const auto& x : d) den_lcm = mp::lcm(den_lcm, mp::denominator(*x));
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& x : d) {
    out.push_back(mp::numerator(*x) * (den_lcm / mp::denominator(*x)));
    g = mp::gcd(g, out.back());
  }
  for (auto& x : out) x /= g;
  return out;
}

Seed mutate_seed(const Seed& seed, int label) {
  const Eigen::Index j = seed.position(label);
  if (seed.is_frozen(label)) throw ClusterError(ErrorKind::FrozenIndex, "cannot mutate at frozen index " + std::to_string(label));
  if (!is_skew(seed)) throw ClusterError(ErrorKind::NotSkew, "seed mutation needs a skew-symmetrizable bracket");
  Seed out = seed;
  const IntVector ej = seed.E.col(j);
  for (Eigen::Index i = 0; i < seed.E.cols(); ++i) {
    if (i == j) {
      out.E.col(i) = -ej;
      continue;
    }
    const Integer b = seed.pairing(seed.E.col(i), ej);
    if (b > 0) out.E.col(i) = seed.E.col(i) + b * ej;
  }
  return out;
}

std::vector<Seed> seeds_along_path(const Seed& seed, const std::vector<int>& path) {
  std::vector<Seed> out{seed};
  for (int label : path) {
    const Seed& cur = out.back();
    cur.position(label);
    out.push_back(cur.is_frozen(label) ? cur : mutate_seed(cur, label));
  }
  return out;
}

SectionMap::SectionMap(IntMatrix image_basis, IntMatrix lifts)
    : image_basis_(std::move(image_basis)), lifts_(std::move(lifts)) {}

IntVector SectionMap::operator()(const IntVector& m0) const {
  if (m0.size() != image_basis_.rows()) throw ClusterError(ErrorKind::RankMismatch, "section: wrong length");
  const auto coords = solve_integer(image_basis_, m0);
  if (!coords) throw ClusterError(ErrorKind::NotInImage, "m0 is not in the image of pbar1");
  return lifts_ * *coords;
}

SectionMap SectionMap::shifted(const IntMatrix& kernel_images) const {
  if (kernel_images.rows() != lifts_.rows() || kernel_images.cols() != lifts_.cols())
    throw ClusterError(ErrorKind::RankMismatch, "section shift has the wrong shape");
  return SectionMap(image_basis_, lifts_ + kernel_images);
}

SectionMap section_of_pbar1(const Seed& seed) {
  const DerivedMaps maps = derive_maps(seed);
  IntMatrix basis = image_basis(maps.pbar1);
  IntMatrix lifts(static_cast<Eigen::Index>(seed.rank), basis.cols());
  for (Eigen::Index c = 0; c < basis.cols(); ++c) lifts.col(c) = *solve_integer(maps.pbar1, IntVector(basis.col(c)));
  return SectionMap(std::move(basis), std::move(lifts));
}

}  // namespace cluster
