#include "cluster/lattice.hpp"

namespace cluster {

std::string to_string(const FinAbPresentation& group) {
  std::string out;
  auto append = [&](const std::string& part) {
    if (!out.empty()) out += " + ";
    out += part;
  };
  if (group.free_rank == 1) append("Z");
  if (group.free_rank > 1) append("Z^" + std::to_string(group.free_rank));
  for (const auto& d : group.torsion) append("Z/" + d.str());
  return out.empty() ? "0" : out;
}

Integer gcd_of(const IntVector& v) {
  Integer g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) g = mp::gcd(g, v(i) < 0 ? Integer(-v(i)) : v(i));
  return g;
}

}  // namespace cluster
