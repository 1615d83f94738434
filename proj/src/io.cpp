#include "cluster/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace cluster {

namespace {

[[noreturn]] void bad(const std::string& what) { throw ClusterError(ErrorKind::InvalidInput, what); }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

long long get_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where + " must be an integer");
  return j.get<long long>();
}

std::vector<long long> get_int_list(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where + " must be an array");
  std::vector<long long> out;
  for (const auto& x : j) out.push_back(get_int(x, where));
  return out;
}

std::vector<std::vector<long long>> get_int_rows(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where + " must be an array of arrays");
  std::vector<std::vector<long long>> out;
  for (const auto& row : j) out.push_back(get_int_list(row, where));
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Seed parse_seed(const std::string& text) {
  const Json j = parse_json(text);
  Seed s;
  const long long rank = get_int(field(j, "rank"), "rank");
  if (rank < 0) bad("rank must be nonnegative");
  s.rank = static_cast<std::size_t>(rank);
  for (long long l : get_int_list(field(j, "I"), "I")) s.labels.push_back(static_cast<int>(l));
  for (long long l : get_int_list(field(j, "F"), "F")) s.frozen.insert(static_cast<int>(l));
  const auto e = get_int_rows(field(j, "E"), "E");
  const auto b = get_int_rows(field(j, "bracket"), "bracket");
  if (e.size() != s.labels.size()) bad("E must list one vector per index");
  s.E = IntMatrix(static_cast<Eigen::Index>(rank), static_cast<Eigen::Index>(e.size()));
  for (std::size_t c = 0; c < e.size(); ++c) {
    if (e[c].size() != s.rank) bad("E vectors must have length rank");
    for (std::size_t r = 0; r < s.rank; ++r) s.E(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = e[c][r];
  }
  if (b.size() != s.rank) bad("bracket must have rank rows");
  s.bracket = IntMatrix(static_cast<Eigen::Index>(rank), static_cast<Eigen::Index>(rank));
  for (std::size_t r = 0; r < s.rank; ++r) {
    if (b[r].size() != s.rank) bad("bracket rows must have length rank");
    for (std::size_t c = 0; c < s.rank; ++c) s.bracket(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = b[r][c];
  }
  return s;
}

Seed load_seed(const std::string& path) { return parse_seed(read_file(path)); }

Json int_vector_json(const IntVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_int64(v(i)));
  return out;
}

Json exponent_json(const Exponent& e) { return Json(e); }

Json seed_to_json(const Seed& seed) {
  Json j;
  j["rank"] = seed.rank;
  j["I"] = seed.labels;
  j["F"] = std::vector<int>(seed.frozen.begin(), seed.frozen.end());
  j["E"] = Json::array();
  for (Eigen::Index c = 0; c < seed.E.cols(); ++c) j["E"].push_back(int_vector_json(seed.E.col(c)));
  j["bracket"] = Json::array();
  for (Eigen::Index r = 0; r < seed.bracket.rows(); ++r)
    j["bracket"].push_back(int_vector_json(seed.bracket.row(r).transpose()));
  return j;
}

std::string seed_hash(const Seed& seed) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : seed_to_json(seed).dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

FanSigma parse_fan(const std::string& text) {
  const Json j = parse_json(text);
  FanSigma fan;
  for (const auto& cone : get_int_rows(field(j, "cones"), "cones")) {
    std::set<int> c;
    for (long long l : cone) c.insert(static_cast<int>(l));
    fan.cones.push_back(std::move(c));
  }
  return fan;
}

FanSigma load_fan(const std::string& path) { return parse_fan(read_file(path)); }

std::string rational_string(const Rational& q) { return q.str(); }

Rational parse_rational(const std::string& text) {
  try {
    return Rational(text);
  } catch (const std::exception&) {
    bad("not a rational number: " + text);
  }
}

Json diagram_to_json(const ScatteringDiagram& d) {
  Json j;
  j["seed_hash"] = seed_hash(d.seed);
  j["order"] = d.order;
  j["exact"] = d.exact;
  j["inserted_support"] = "ray";
  j["walls"] = Json::array();
  for (const auto& w : d.walls) {
    Json wj;
    wj["label"] = w.label;
    wj["normal"] = exponent_json(w.normal);
    wj["direction"] = w.direction ? exponent_json(*w.direction) : Json(nullptr);
    wj["terms"] = Json::array();
    for (const auto& [e, c] : w.function.terms()) wj["terms"].push_back({{"exponent", e}, {"coefficient", rational_string(c)}});
    j["walls"].push_back(std::move(wj));
  }
  return j;
}

ScatteringDiagram diagram_from_json(const Seed& seed, const Json& j) {
  ScatteringDiagram d = initial_diagram(seed);
  if (field(j, "seed_hash") != seed_hash(seed)) bad("diagram cache belongs to another seed");
  d.order = static_cast<int>(get_int(field(j, "order"), "order"));
  d.exact = field(j, "exact").get<bool>();
  d.walls.clear();
  for (const auto& wj : field(j, "walls")) {
    Wall w;
    w.label = static_cast<int>(get_int(field(wj, "label"), "label"));
    for (long long x : get_int_list(field(wj, "normal"), "normal")) w.normal.push_back(x);
    const Json& dir = field(wj, "direction");
    if (!dir.is_null()) {
      Exponent e;
      for (long long x : get_int_list(dir, "direction")) e.push_back(x);
      w.direction = e;
    }
    w.function = LaurentPoly(d.dimension());
    for (const auto& t : field(wj, "terms")) {
      Exponent e;
      for (long long x : get_int_list(field(t, "exponent"), "exponent")) e.push_back(x);
      w.function.add_term(e, parse_rational(field(t, "coefficient").get<std::string>()));
    }
    d.walls.push_back(std::move(w));
  }
  return d;
}

}  // namespace cluster
