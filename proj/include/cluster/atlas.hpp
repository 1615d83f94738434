#pragma once

// Chart atlas of the cluster varieties built from a seed. Every chart is a
// copy of one torus; charts are glued by mutation pullbacks, so all work here
// happens on functions.
//
// A-side exponents live in M (dual basis), X-side exponents in N (standard
// basis). The A_prin side is the A side of the principal seed.

#include "cluster/laurent.hpp"
#include "cluster/seed.hpp"

#include <set>
#include <vector>

namespace cluster {

enum class Side { A, X, APrin };

std::string to_string(Side side);

/// Element sum a_i e_i^* of M_I, entries in the order of the seed labels.
using DivisorClass = IntVector;

/// The seed whose A or X torus realizes the side (the principal seed for A_prin).
Seed side_seed(const Seed& seed, Side side);

/// Exponent rank of the chart tori on the side.
std::size_t side_rank(const Seed& seed, Side side);

/// (u, psi) of the mutation at label j of a seed, read on the side.
struct MutationData {
  Exponent u;
  Exponent psi;
};
MutationData mutation_data(const Seed& seed, Side side, int label);

/// Pullback of the mutation at `label` of `seed`: functions on the adjacent
/// chart to functions on the chart of `seed`. Frozen labels give the identity.
RationalFn mutation_step(const Seed& seed, Side side, int label, const RationalFn& f);

/// Composite pullback from the chart at the end of `path` to chart 0, on raw
/// torus coordinates (the same lattice in every chart).
RationalFn transition_pullback(const Seed& seed, Side side, const std::vector<int>& path, const RationalFn& f);

/// Cluster coordinates of the chart at the end of `path`: chart exponent a
/// corresponds to the raw exponent basis * a. The first |I| columns belong to
/// the cluster variables; the rest come from a complement of E that mutates
/// along with the seed as extra frozen directions.
IntMatrix chart_basis(const Seed& seed, Side side, const std::vector<int>& path);

/// Chart transition written in cluster coordinates of both ends.
RationalFn transition_in_chart_coordinates(const Seed& seed, Side side, const std::vector<int>& path,
                                           const RationalFn& f);

/// The cluster coordinates of the end chart of `path`, pulled back to chart 0
/// and written in raw coordinates there. Only the first |I| entries are
/// cluster variables; the rest are the complement monomials.
std::vector<RationalFn> cluster_variables(const Seed& seed, Side side, const std::vector<int>& path);

/// Order of vanishing along the exceptional divisor E_i of the X chart U_i.
std::int64_t exceptional_valuation(const Seed& seed, const RationalFn& f, int label);

/// Order of vanishing along the frozen boundary divisor D_i on the side.
std::int64_t frozen_valuation(const Seed& seed, Side side, const RationalFn& f, int label);

/// pbar1(n): the principal divisor of z^n on the X variety.
DivisorClass divisor_of_monomial(const Seed& seed, const IntVector& n);

FinAbPresentation picard_group(const Seed& seed);

/// f in O(W(m)) on the X variety; throws NotRegularOnU0 when f is not Laurent.
bool is_section(const Seed& seed, const RationalFn& f, const DivisorClass& m);

/// n with |n|_inf <= radius and pbar1(n) >= -m, in lex order.
std::vector<IntVector> monomial_sections(const Seed& seed, const DivisorClass& m, int radius);

/// Simplicial fan on the frozen rays p2(e_i), cones given by frozen labels.
struct FanSigma {
  std::vector<std::set<int>> cones;
};

/// Throws InvalidFan on any violated condition.
void validate_fan(const Seed& seed, const FanSigma& fan);

std::vector<std::set<int>> maximal_cones(const FanSigma& fan);

/// Basis (columns, Hermite form) of the Cartier sublattice M_Sigma of M_I.
IntMatrix cartier_sublattice(const Seed& seed, const FanSigma& fan);

}  // namespace cluster
