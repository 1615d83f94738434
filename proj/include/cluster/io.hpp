#pragma once

// JSON formats: seeds, fans, scattering diagram caches.
//
// Seed: {"rank": n, "I": [labels], "F": [frozen labels], "E": [e_i for i in I],
//        "bracket": [rows]}, all exact integers.
// Fan:  {"cones": [[frozen labels], ...]}.

#include "cluster/atlas.hpp"
#include "cluster/scattering.hpp"

#include <json.hpp>

namespace cluster {

using Json = nlohmann::ordered_json;

/// Throws ClusterError(InvalidInput) on malformed JSON or non-integer entries.
/// Does not validate the seed conditions.
Seed parse_seed(const std::string& text);
Seed load_seed(const std::string& path);
Json seed_to_json(const Seed& seed);

/// FNV-1a of the canonical seed JSON, 16 hex digits.
std::string seed_hash(const Seed& seed);

FanSigma parse_fan(const std::string& text);
FanSigma load_fan(const std::string& path);

Json exponent_json(const Exponent& e);
Json int_vector_json(const IntVector& v);
std::string rational_string(const Rational& q);
Rational parse_rational(const std::string& text);

Json diagram_to_json(const ScatteringDiagram& d);
/// Rebuilds a diagram for `seed`; throws InvalidInput when the hash differs.
ScatteringDiagram diagram_from_json(const Seed& seed, const Json& j);

std::string read_file(const std::string& path);

}  // namespace cluster
