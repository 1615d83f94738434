#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace cluster {

/// Outcome of an executable verification: pass flag plus concrete witnesses.
struct CheckReport {
  std::string theorem;
  bool pass = true;
  std::size_t checked = 0;
  std::vector<std::string> witnesses;

  void fail(std::string witness) {
    pass = false;
    if (witnesses.size() < 20) witnesses.push_back(std::move(witness));
  }
  void note(std::string witness) {
    if (witnesses.size() < 20) witnesses.push_back(std::move(witness));
  }
};

}  // namespace cluster
