#pragma once

// Scattering diagrams for the principal-coefficient seed and theta functions
// from broken lines.
//
// Walls live in M_prin,R but only see the projection pi onto the unfrozen
// M_I-coordinates, so the diagram is drawn in R^r, r = |I_uf| <= 2. Wall
// functions are polynomials in y_i = z^{v_i}, v_i = (pbar1(e_i), e_i), stored
// as LaurentPoly over r variables with nonnegative exponents. The order of y^b
// is the total degree of b.
//
// Crossing a wall with primitive normal n0 in the direction of increasing
// <n0, .> acts by z^q -> z^q f^{-<n0, pi(q)>}; for the initial wall e_i this
// is the A_prin mutation pullback at i.

#include "cluster/atlas.hpp"
#include "cluster/report.hpp"
#include "cluster/torsor.hpp"

#include <optional>
#include <random>

namespace cluster {

struct Wall {
  Exponent normal;                    // primitive, unfrozen e-coordinates
  std::optional<Exponent> direction;  // ray generator; empty for the whole hyperplane
  LaurentPoly function;               // in y_1..y_r
  int label = 0;                      // seed label of an initial wall, 0 for inserted walls
};

struct ScatteringDiagram {
  Seed seed;
  std::vector<int> unfrozen;
  IntMatrix exchange;  // r x r, [e_i, e_j] on unfrozen labels
  int order = 0;
  std::vector<Wall> walls;
  bool exact = false;
  bool skew = true;

  std::size_t dimension() const { return unfrozen.size(); }
  std::size_t inserted_count() const;
  std::string status() const { return exact ? "exact" : "truncated(" + std::to_string(order) + ")"; }
};

/// One wall per unfrozen index. Runs the crossing-convention self-test.
ScatteringDiagram initial_diagram(const Seed& seed);

/// Crossing initial wall i upward equals the A_prin mutation pullback at i.
bool crossing_convention_self_test(const Seed& seed);

/// pi(q): unfrozen M_I-coordinates of an M_prin exponent.
Exponent project(const ScatteringDiagram& d, const Exponent& q);
/// The functional <n0, pi(.)> as an exponent-length vector.
Exponent lift_normal(const ScatteringDiagram& d, const Exponent& n0);
/// y^b -> z^{sum b_i v_i}.
LaurentPoly to_prin(const ScatteringDiagram& d, const LaurentPoly& f);
Exponent prin_exponent(const ScatteringDiagram& d, const Exponent& b);

/// direction_sign = +1 crosses towards increasing <n0, .>, -1 the other way;
/// 0 throws NonTransverse.
RationalFn wall_crossing(const ScatteringDiagram& d, const RationalFn& f, const Wall& wall, int direction_sign);

/// Extends the diagram so its loop product is the identity up to order k.
/// Throws UnsupportedRank for r > 2.
void complete_to_order(ScatteringDiagram& d, int k);

/// Exact action of the counterclockwise loop around the joint on f.
RationalFn path_ordered_product(const ScatteringDiagram& d, const RationalFn& f);

/// Loop product on probe monomials: the units z^{e_i^*} followed by `random_probes` draws.
CheckReport loop_identity_check(const ScatteringDiagram& d, int random_probes, std::uint64_t rng_seed);

/// A generic point of the positive chamber with large random denominators.
using Endpoint = std::vector<Rational>;
Endpoint default_endpoint(const ScatteringDiagram& d, std::uint64_t rng_seed = 20240611);

struct BrokenLine {
  std::vector<std::pair<Exponent, Exponent>> bends;  // (wall normal, y-exponent taken)
  Exponent final_exponent;
  Rational coefficient;
};

struct ThetaFunction {
  Exponent q;
  RationalFn value;
  std::vector<BrokenLine> lines;
  int max_bend_degree = 0;
  bool exact = false;
  std::optional<IntVector> degree;
};

/// Sum of final monomials over broken lines with at most d.order total bend degree.
ThetaFunction theta(const ScatteringDiagram& d, const Exponent& q, const Endpoint& endpoint);

/// deg(theta_q) = deg(z^q), theta_(m,n) = z^(0,n) theta_(m,0), equal frozen valuations.
CheckReport theta_identities(const ScatteringDiagram& d, const Exponent& q, const Endpoint& endpoint);

/// theta_q regular on every chart and nonnegative along the frozen divisors.
/// Throws TruncatedOnly when theta_q is not known exactly.
bool xi_membership(const ScatteringDiagram& d, const Exponent& q, const Endpoint& endpoint);

/// m in the box with m - lambda in pbar1(N) and (m, 0) in Xi.
std::vector<IntVector> xi_lambda(const ScatteringDiagram& d, const IntVector& lambda, int radius,
                                 const Endpoint& endpoint);

/// The exponent e of f with every other exponent in e + sum N v_i, if any.
std::optional<Exponent> pointed_exponent(const ScatteringDiagram& d, const LaurentPoly& f);

struct ThetaSection {
  IntVector m;
  RationalFn theta;     // theta_(m, s(m - lambda)) on A_prin
  RationalFn on_x;      // the same section as a function on X twisted by lambda
  RationalFn on_fiber;  // restricted to X_phi
  bool is_section = false;
};

struct ThetaBasisResult {
  std::vector<ThetaSection> sections;
  bool independent = false;
  bool all_sections = false;
  std::string claim;
};

/// Sections of L_lambda on X_phi from theta functions. `full_fg` only changes
/// the claim label; spanning is never checked.
ThetaBasisResult theta_basis_sections(const ScatteringDiagram& d, const IntVector& lambda, const FiberSpec& spec,
                                      int radius, bool full_fg, const Endpoint& endpoint);

}  // namespace cluster
