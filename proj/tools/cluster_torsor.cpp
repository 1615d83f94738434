#include "cluster/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  cluster::RunConfig config;
  CLI::App app{"Exact checks on cluster varieties, their universal torsors and theta functions"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--radius", config.box_radius, "Exponent box radius")->capture_default_str();
  app.add_option("--order", config.order, "Scattering diagram order")->capture_default_str();
  app.add_option("--t", config.t, "Point t of T_M as rationals (default: first primes)")->delimiter(',');
  app.add_option("--format", config.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_option("--cache-dir", config.cache_dir, "Diagram cache directory (CLUSTER_TORSOR_CACHE overrides)");
  app.add_option("--rng-seed", config.rng_seed, "Seed of every random draw")->capture_default_str();

  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("seed", config.seed_path, "Seed JSON file")->required();
    sub->callback([&config, name] { config.command = name; });
    return sub;
  };
  add("validate", "Check the seed conditions");
  add("mutate", "Mutate along a path")->add_option("--path", config.path, "Index labels")->delimiter(',')->required();
  add("pic", "Picard group of the X variety");
  add("sections", "Monomial sections of O(m)")->add_option("--degree", config.degree, "m in M_I")->delimiter(',')->required();
  add("cartier", "Cartier sublattice for a fan")->add_option("--fan", config.fan_path, "Fan JSON file")->required();
  add("theta", "Theta function by broken lines")->add_option("--q", config.q, "q in M_prin")->delimiter(',')->required();
  add("verify-r", "Graded pieces on every chart")->add_option("--degree", config.degree, "m in M_I")->delimiter(',')->required();
  add("verify-utor", "Universal torsor generator identities")
      ->add_option("--trials", config.trials, "Random trials")
      ->capture_default_str();
  CLI::App* basis = add("theta-basis", "Theta sections of L_lambda on a fiber");
  basis->add_option("--lambda", config.lambda, "lambda in M_I")->delimiter(',')->required();
  basis->add_flag("--full-fg", config.full_fg, "Label the result a basis (spanning is assumed, not checked)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const cluster::RunResult result = cluster::run(config);
  std::cout << result.output;
  return result.exit_code;
}
