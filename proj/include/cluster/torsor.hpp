#pragma once

// The grading of the principal-coefficient torus by M_I and the map p2~ from
// X with its twisting variables. "Twist" functions live on M_I + N with the
// same coordinate split as A_prin exponents: z^m z^n has exponent (m, n).

#include "cluster/atlas.hpp"
#include "cluster/report.hpp"

#include <random>
#include <utility>

namespace cluster {

/// deg z^(m,n) = m - pbar1(n).
IntVector degree_of(const Seed& seed, const Exponent& q);

/// A function on the A_prin torus with its degree when homogeneous.
struct GradedElement {
  RationalFn value;
  std::optional<IntVector> degree;
};

/// Degree of f when every numerator term shares one degree and every
/// denominator factor is homogeneous of degree zero.
std::optional<IntVector> homogeneous_degree(const Seed& seed, const RationalFn& f);
GradedElement make_graded(const Seed& seed, RationalFn f);

/// The linear map (m, n) -> (m + pbar1(n), n) on exponents.
IntMatrix p2_tilde_matrix(const Seed& seed);
/// z^m z^n -> z^(m + pbar1(n), n).
GradedElement p2_tilde_pullback(const Seed& seed, const RationalFn& f);

/// Pulls random homogeneous monomials and binomials through the A_prin
/// mutation at `label` and checks the degree is preserved.
bool check_prin_homogeneity(const Seed& seed, int label, std::mt19937_64& rng, int samples = 25);

/// Chart 0 is the initial torus; other charts are index labels.
/// Generators of O(m) on the chart in U0 coordinates of the twist torus, for
/// |n|_inf <= radius and, on unfrozen charts, k - (-<e_i, m>) in [0, radius].
std::vector<RationalFn> graded_piece_generators(const Seed& seed, const DivisorClass& m, int chart, int radius);

/// Finite-box check that p2~ identifies the degree-m piece of the chart ring.
CheckReport verify_R(const Seed& seed, const DivisorClass& m, int chart, int radius);

/// A very general point t of T_M, its image phi in T_{K1^*}, and a section s.
struct FiberSpec {
  TorusPoint t;
  TorusPoint phi;  // z^{k_j}(t) for the columns k_j of K1
  SectionMap section;
};

/// t defaults to the first `rank` primes.
FiberSpec make_fiber_spec(const Seed& seed, std::optional<TorusPoint> t = std::nullopt);

/// The two generators for (m, n, m0): the twisted-ideal generator on the twist
/// torus and the fiber-ideal generator on the A_prin torus it should map to.
std::pair<RationalFn, RationalFn> shifting_generator(const Seed& seed, const IntVector& m, const IntVector& n,
                                                     const IntVector& m0, const FiberSpec& spec);

/// Random trials of p2~(IXM generator) = It generator, s-independence up to the
/// phi relation, and vanishing on the fiber. `corrupt` flips one sign as a
/// negative control.
CheckReport verify_UTor(const Seed& seed, int trials, const FiberSpec& spec, std::uint64_t rng_seed,
                        bool corrupt = false);

/// z^(m,n) -> z^n(t) z^m on M_I.
RationalFn restrict_to_fiber_t(const Seed& seed, const RationalFn& f, const TorusPoint& t);

/// Splitting N = C + K1 with C = complement of K1; z^n -> phi^kappa z^nbar.
struct XFiberSplitting {
  IntMatrix complement;
  IntMatrix kernel;
};
XFiberSplitting default_splitting(const Seed& seed);
RationalFn restrict_to_X_fiber(const RationalFn& f, const FiberSpec& spec, const XFiberSplitting& splitting);

}  // namespace cluster
