#include "cluster/numeric.hpp"

#include <limits>

namespace cluster {

std::string to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::NotSkew: return "NotSkew";
    case ErrorKind::FrozenIndex: return "FrozenIndex";
    case ErrorKind::InvalidIndex: return "InvalidIndex";
    case ErrorKind::PsiUNotOrthogonal: return "PsiUNotOrthogonal";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::DenominatorVanishes: return "DenominatorVanishes";
    case ErrorKind::NotRegularOnU0: return "NotRegularOnU0";
    case ErrorKind::NotInImage: return "NotInImage";
    case ErrorKind::InvalidFan: return "InvalidFan";
    case ErrorKind::UnsupportedRank: return "UnsupportedRank";
    case ErrorKind::NonTransverse: return "NonTransverse";
    case ErrorKind::EndpointNotGeneric: return "EndpointNotGeneric";
    case ErrorKind::TruncatedOnly: return "TruncatedOnly";
  }
  return "Unknown";
}

std::int64_t to_int64(const Integer& value) {
  if (value > std::numeric_limits<std::int64_t>::max() || value < std::numeric_limits<std::int64_t>::min())
    throw ClusterError(ErrorKind::InvalidInput, "exponent out of 64-bit range: " + value.str());
  return value.convert_to<std::int64_t>();
}

std::string to_string(const Rational& q) {
  if (mp::denominator(q) == 1) return mp::numerator(q).str();
  return mp::numerator(q).str() + "/" + mp::denominator(q).str();
}

}  // namespace cluster
