#pragma once

#include "cluster/io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cluster {

struct RunConfig {
  std::string seed_path;
  std::string command;
  int box_radius = 3;
  int order = 8;
  std::optional<std::vector<std::string>> t;  // rationals; default: the first primes
  std::optional<std::string> fan_path;
  std::string format = "text";
  std::optional<std::string> cache_dir;  // CLUSTER_TORSOR_CACHE wins when set

  std::vector<int> path;
  std::vector<long long> degree;
  std::vector<long long> q;
  std::vector<long long> lambda;
  int trials = 100;
  std::uint64_t rng_seed = 20240611;
  bool full_fg = false;
};

struct RunResult {
  int exit_code = 0;
  Json report;
  std::string output;  // rendered in config.format
};

/// Exit 0 on pass, 1 on a failed verification, 2 on input errors.
RunResult run(const RunConfig& config);

std::optional<std::string> effective_cache_dir(const RunConfig& config);

}  // namespace cluster
