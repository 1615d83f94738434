#pragma once

#include "cluster/lattice.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cluster {

/// Seed data (N, I, E, F, [.,.]).
///
/// N is Z^rank with its standard basis n_1..n_rank and M = N^* carries the dual
/// basis. `E` holds the vectors e_i as columns, in the order of `labels`; the
/// bracket is stored on all of N as B(a, b) = [n_a, n_b].
struct Seed {
  std::size_t rank = 0;
  std::vector<int> labels;
  std::set<int> frozen;
  IntMatrix E;
  IntMatrix bracket;

  std::size_t index_count() const { return labels.size(); }
  /// Column of `E` for the index label; throws InvalidIndex.
  Eigen::Index position(int label) const;
  bool is_frozen(int label) const { return frozen.count(label) != 0; }
  std::vector<int> unfrozen_labels() const;
  std::vector<int> frozen_labels() const;

  IntVector e(int label) const { return E.col(position(label)); }
  Integer pairing(const IntVector& left, const IntVector& right) const { return left.dot(bracket * right); }

  bool operator==(const Seed& other) const;
};

struct SeedViolation {
  std::string condition;
  int index = 0;
  std::string message;
};

/// Empty iff the seed satisfies every standing condition.
std::vector<SeedViolation> validate_seed(const Seed& seed);

/// Lattice maps induced by the bracket. Functionals on N are written in the
/// dual basis of M; functionals on N_I in the basis e_i^* of M_I.
struct DerivedMaps {
  IntMatrix p1;      // n -> [n, .]          (rank x rank)
  IntMatrix p2;      // n -> [., n]          (rank x rank)
  IntMatrix pbar1;   // n -> ([n, e_i])_i    (|I| x rank)
  IntMatrix pbar2;   // n -> ([e_i, n])_i    (|I| x rank)
  IntMatrix K1;      // basis of ker p1, also the inclusion kappa1
  IntMatrix K2;      // basis of ker p2, also the inclusion kappa2
  IntMatrix lambda;  // M -> K1^*, dual of kappa1
};

DerivedMaps derive_maps(const Seed& seed);

/// Principal-coefficient seed over N_prin = N_I + M.
///
/// Coordinates on N_prin: the first |I| entries are N_I in the basis E, the
/// remaining `rank` entries are M in its dual basis. Exponents of functions on
/// the A_prin torus therefore live in M_prin = M_I + N with the same split.
struct PrinSeed {
  Seed seed;
  std::size_t index_count = 0;  // |I|
  std::size_t base_rank = 0;    // rank of N
};

PrinSeed principal_seed(const Seed& seed);

/// (pbar1(e_j), e_j) in M_prin coordinates: the exponent of the A_prin wall factor.
IntVector p1_prin_of_index(const Seed& seed, int label);

/// Skew-symmetrizer d_j (j in I_uf, in unfrozen label order) scaled to coprime
/// positive integers, or nothing when no symmetrizer exists.
std::optional<std::vector<Integer>> is_skew(const Seed& seed);

/// Seed mutation e_i -> e_i + max([e_i, e_j], 0) e_j, e_j -> -e_j. Throws
/// NotSkew or FrozenIndex.
Seed mutate_seed(const Seed& seed, int label);

/// Seeds along a mutation path; element 0 is the input. Frozen entries of the
/// path leave the seed unchanged.
std::vector<Seed> seeds_along_path(const Seed& seed, const std::vector<int>& path);

/// A linear section s of pbar1 onto its image.
class SectionMap {
 public:
  SectionMap(IntMatrix image_basis, IntMatrix lifts);

  /// s(m0); throws NotInImage when m0 is outside pbar1(N).
  IntVector operator()(const IntVector& m0) const;
  const IntMatrix& image_basis() const { return image_basis_; }
  const IntMatrix& lifts() const { return lifts_; }

  /// Section s + shift; the columns of `kernel_images` must lie in K1.
  SectionMap shifted(const IntMatrix& kernel_images) const;

 private:
  IntMatrix image_basis_;
  IntMatrix lifts_;
};

SectionMap section_of_pbar1(const Seed& seed);

}  // namespace cluster
