#pragma once

#include "cluster/seed.hpp"

#include <random>

namespace cluster::testing {

inline Seed make_seed(std::size_t rank, std::vector<int> labels, std::set<int> frozen,
                      const std::vector<std::vector<long long>>& e_columns,
                      const std::vector<std::vector<long long>>& bracket) {
  Seed s;
  s.rank = rank;
  s.labels = std::move(labels);
  s.frozen = std::move(frozen);
  s.E = int_matrix(e_columns).transpose();
  s.bracket = int_matrix(bracket);
  return s;
}

inline Seed seed_a2() { return make_seed(2, {1, 2}, {}, {{1, 0}, {0, 1}}, {{0, 1}, {-1, 0}}); }
inline Seed seed_a1f() { return make_seed(2, {1, 2}, {2}, {{1, 0}, {0, 1}}, {{0, 1}, {-1, 0}}); }
inline Seed seed_k() { return make_seed(2, {1, 2}, {2}, {{1, 0}, {0, 1}}, {{0, 1}, {-2, 0}}); }
inline Seed seed_b2() { return make_seed(2, {1, 2}, {}, {{1, 0}, {0, 1}}, {{0, 1}, {-2, 0}}); }

inline IntMatrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace cluster::testing
