#include "cluster/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace cluster {

namespace {

namespace fs = std::filesystem;

IntVector as_int_vector(const std::vector<long long>& v) {
  IntVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

Json matrix_columns_json(const IntMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(int_vector_json(m.col(c)));
  return out;
}

void require_length(const std::vector<long long>& v, std::size_t n, const std::string& flag) {
  if (v.size() != n)
    throw ClusterError(ErrorKind::RankMismatch, flag + " needs " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
}

struct Context {
  const RunConfig& config;
  Seed seed;
  Json parameters;
  std::string theorem;
  CheckReport check;
  Json result = Json::object();

  FiberSpec fiber_spec() {
    std::optional<TorusPoint> t;
    if (config.t) {
      TorusPoint p;
      for (const auto& s : *config.t) p.push_back(parse_rational(s));
      t = p;
    }
    FiberSpec spec = make_fiber_spec(seed, t);
    Json tj = Json::array();
    for (const auto& x : spec.t) tj.push_back(rational_string(x));
    parameters["t"] = tj;
    return spec;
  }

  ScatteringDiagram diagram() {
    const auto dir = effective_cache_dir(config);
    fs::path file;
    if (dir) {
      file = fs::path(*dir) / ("diagram-" + seed_hash(seed) + "-k" + std::to_string(config.order) + ".json");
      if (fs::exists(file)) {
        parameters["cache"] = "hit";
        return diagram_from_json(seed, Json::parse(read_file(file.string())));
      }
    }
    ScatteringDiagram d = initial_diagram(seed);
    complete_to_order(d, config.order);
    if (dir) {
      fs::create_directories(*dir);
      std::ofstream(file) << diagram_to_json(d).dump(2) << "\n";
    }
    parameters["cache"] = dir ? "stored" : "off";
    return d;
  }

  Endpoint endpoint(const ScatteringDiagram& d) {
    const Endpoint Q = default_endpoint(d, config.rng_seed);
    Json qj = Json::array();
    for (const auto& x : Q) qj.push_back(rational_string(x));
    parameters["endpoint"] = qj;
    return Q;
  }

  void flag_non_skew(const ScatteringDiagram& d) {
    if (!d.skew) result["construction"] = "per cited construction (non-skew bracket)";
  }
};

void cmd_validate(Context& c) {
  c.theorem = "seed conditions";
  const auto skew = is_skew(c.seed);
  c.result["skew"] = skew.has_value();
  if (skew) {
    Json d = Json::array();
    for (const auto& x : *skew) d.push_back(to_int64(x));
    c.result["multipliers"] = d;
  }
  c.result["unfrozen"] = c.seed.unfrozen_labels();
}

void cmd_mutate(Context& c) {
  c.theorem = "mutation";
  c.parameters["path"] = c.config.path;
  const auto seeds = seeds_along_path(c.seed, c.config.path);
  c.result["seed"] = seed_to_json(seeds.back());
  Json vars = Json::array();
  for (const auto& f : cluster_variables(c.seed, Side::A, c.config.path)) {
    ++c.check.checked;
    if (!is_laurent(f)) c.check.fail("cluster coordinate " + f.to_string() + " is not Laurent");
    vars.push_back(f.to_string());
  }
  c.result["chart_coordinates_A"] = vars;
}

void cmd_pic(Context& c) {
  c.theorem = "Pic";
  const auto group = picard_group(c.seed);
  c.result["pic"] = to_string(group);
  Json torsion = Json::array();
  for (const auto& d : group.torsion) torsion.push_back(to_int64(d));
  c.result["free_rank"] = group.free_rank;
  c.result["torsion"] = torsion;
}

void cmd_sections(Context& c) {
  c.theorem = "monomial sections";
  require_length(c.config.degree, c.seed.index_count(), "--degree");
  c.parameters["degree"] = c.config.degree;
  const IntVector m = as_int_vector(c.config.degree);
  Json out = Json::array();
  for (const auto& n : monomial_sections(c.seed, m, c.config.box_radius)) {
    ++c.check.checked;
    const RationalFn f = RationalFn::monomial(to_exponent(n));
    if (!is_section(c.seed, f, m)) c.check.fail("z^" + f.to_string() + " fails the valuation test");
    out.push_back(int_vector_json(n));
  }
  c.result["exponents"] = out;
}

void cmd_cartier(Context& c) {
  c.theorem = "Cartier sublattice";
  if (!c.config.fan_path) throw ClusterError(ErrorKind::InvalidInput, "cartier needs --fan");
  c.parameters["fan"] = fs::path(*c.config.fan_path).filename().string();
  const FanSigma fan = load_fan(*c.config.fan_path);
  const IntMatrix basis = cartier_sublattice(c.seed, fan);
  c.result["basis"] = matrix_columns_json(basis);
  c.result["index"] = to_int64(abs(determinant(basis)));
}

void cmd_theta(Context& c) {
  c.theorem = "theta function";
  require_length(c.config.q, c.seed.index_count() + c.seed.rank, "--q");
  c.parameters["q"] = c.config.q;
  const ScatteringDiagram d = c.diagram();
  const Endpoint Q = c.endpoint(d);
  const Exponent q(c.config.q.begin(), c.config.q.end());
  const ThetaFunction t = theta(d, q, Q);
  c.result["q"] = c.config.q;
  c.result["value"] = t.value.to_string();
  c.result["laurent"] = is_laurent(t.value).has_value();
  c.result["exact"] = t.exact;
  c.result["diagram"] = d.status();
  c.result["broken_lines"] = t.lines.size();
  c.result["degree"] = t.degree ? int_vector_json(*t.degree) : Json(nullptr);
  if (t.exact)
    c.result["xi"] = xi_membership(d, q, Q);
  else
    c.result["xi"] = "unknown (truncated)";
  c.flag_non_skew(d);
  const CheckReport ids = theta_identities(d, q, Q);
  c.check.checked += ids.checked;
  for (const auto& w : ids.witnesses) c.check.fail(w);
}

void cmd_verify_r(Context& c) {
  c.theorem = "R";
  require_length(c.config.degree, c.seed.index_count(), "--degree");
  c.parameters["degree"] = c.config.degree;
  const IntVector m = as_int_vector(c.config.degree);
  std::vector<int> charts{0};
  for (int l : c.seed.labels) charts.push_back(l);
  Json per = Json::array();
  for (int chart : charts) {
    const CheckReport r = verify_R(c.seed, m, chart, c.config.box_radius);
    c.check.checked += r.checked;
    for (const auto& w : r.witnesses) c.check.fail("chart " + std::to_string(chart) + ": " + w);
    if (!r.pass && r.witnesses.empty()) c.check.fail("chart " + std::to_string(chart) + " failed");
    per.push_back({{"chart", chart}, {"pass", r.pass}, {"checked", r.checked}});
  }
  c.result["charts"] = per;
}

void cmd_verify_utor(Context& c) {
  c.theorem = "UTor";
  c.parameters["trials"] = c.config.trials;
  const FiberSpec spec = c.fiber_spec();
  const CheckReport r = verify_UTor(c.seed, c.config.trials, spec, c.config.rng_seed);
  c.check = r;
  c.result["trials"] = c.config.trials;
}

void cmd_theta_basis(Context& c) {
  c.theorem = "ThetaBasis";
  require_length(c.config.lambda, c.seed.index_count(), "--lambda");
  c.parameters["lambda"] = c.config.lambda;
  c.parameters["full_fg"] = c.config.full_fg;
  const FiberSpec spec = c.fiber_spec();
  const ScatteringDiagram d = c.diagram();
  const Endpoint Q = c.endpoint(d);
  const auto r = theta_basis_sections(d, as_int_vector(c.config.lambda), spec, c.config.box_radius, c.config.full_fg, Q);
  Json secs = Json::array();
  for (const auto& s : r.sections) {
    ++c.check.checked;
    if (!s.is_section) c.check.fail("theta at m=" + int_vector_json(s.m).dump() + " is not a section");
    secs.push_back({{"m", int_vector_json(s.m)}, {"theta", s.theta.to_string()}, {"on_fiber", s.on_fiber.to_string()}});
  }
  ++c.check.checked;
  if (!r.independent) c.check.fail("theta sections are linearly dependent on the fiber");
  c.result["sections"] = secs;
  c.result["independent"] = r.independent;
  c.result["claim"] = r.claim;
  c.flag_non_skew(d);
}

std::string render_text(const Json& report) {
  std::ostringstream out;
  out << report["theorem"].get<std::string>() << ": " << (report["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
  out << "seed " << report["seed_hash"].get<std::string>() << "\n";
  if (report.contains("result"))
    for (const auto& [k, v] : report["result"].items()) out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  for (const auto& w : report["witnesses"]) out << "witness: " << w.get<std::string>() << "\n";
  return out.str();
}

}  // namespace

std::optional<std::string> effective_cache_dir(const RunConfig& config) {
  if (const char* env = std::getenv("CLUSTER_TORSOR_CACHE"); env && *env) return std::string(env);
  return config.cache_dir;
}

RunResult run(const RunConfig& config) {
  RunResult out;
  Json report;
  report["theorem"] = config.command;
  report["seed_hash"] = "";
  Json parameters;
  parameters["command"] = config.command;
  parameters["box_radius"] = config.box_radius;
  parameters["order"] = config.order;
  parameters["rng_seed"] = config.rng_seed;
  try {
    Context c{config, load_seed(config.seed_path), parameters, config.command, {}, Json::object()};
    report["seed_hash"] = seed_hash(c.seed);
    const auto violations = validate_seed(c.seed);
    if (!violations.empty()) {
      c.theorem = "seed conditions";
      Json w = Json::array();
      for (const auto& v : violations) w.push_back(v.condition + ": " + v.message);
      report["theorem"] = c.theorem;
      report["parameters"] = c.parameters;
      report["pass"] = false;
      report["witnesses"] = w;
      out.exit_code = 2;
    } else {
      static const std::map<std::string, void (*)(Context&)> commands{
          {"validate", cmd_validate}, {"mutate", cmd_mutate},         {"pic", cmd_pic},
          {"sections", cmd_sections}, {"cartier", cmd_cartier},       {"theta", cmd_theta},
          {"verify-r", cmd_verify_r}, {"verify-utor", cmd_verify_utor}, {"theta-basis", cmd_theta_basis}};
      const auto it = commands.find(config.command);
      if (it == commands.end()) throw ClusterError(ErrorKind::InvalidInput, "unknown command " + config.command);
      it->second(c);
      report["theorem"] = c.theorem;
      report["parameters"] = c.parameters;
      report["pass"] = c.check.pass;
      report["witnesses"] = c.check.witnesses;
      c.result["checked"] = c.check.checked;
      report["result"] = c.result;
      out.exit_code = c.check.pass ? 0 : 1;
    }
  } catch (const ClusterError& e) {
    report["parameters"] = parameters;
    report["pass"] = false;
    report["witnesses"] = Json::array({e.what()});
    out.exit_code = 2;
  } catch (const Json::exception& e) {
    report["parameters"] = parameters;
    report["pass"] = false;
    report["witnesses"] = Json::array({std::string("InvalidInput: ") + e.what()});
    out.exit_code = 2;
  }
  out.report = report;
  out.output = config.format == "json" ? report.dump(2) + "\n" : render_text(report);
  return out;
}

}  // namespace cluster
