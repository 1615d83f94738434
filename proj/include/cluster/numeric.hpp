#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cluster {

namespace mp = boost::multiprecision;

/// Arbitrary-precision integer; expression templates off so it composes with Eigen.
using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using IntVector = Vector<Integer>;
using RatMatrix = Matrix<Rational>;

/// Exponent vector of a monomial. Seeds are desk-scale, so exponents fit in 64 bits;
/// conversions from Integer are checked.
using Exponent = std::vector<std::int64_t>;

enum class ErrorKind {
  InvalidInput,
  RankMismatch,
  NotSkew,
  FrozenIndex,
  InvalidIndex,
  PsiUNotOrthogonal,
  ZeroInput,
  DenominatorVanishes,
  NotRegularOnU0,
  NotInImage,
  InvalidFan,
  UnsupportedRank,
  NonTransverse,
  EndpointNotGeneric,
  TruncatedOnly,
};

std::string to_string(ErrorKind kind);

class ClusterError : public std::runtime_error {
 public:
  ClusterError(ErrorKind kind, const std::string& what)
      : std::runtime_error(to_string(kind) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

std::int64_t to_int64(const Integer& value);

inline Exponent to_exponent(const IntVector& v) {
  Exponent e(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) e[static_cast<std::size_t>(i)] = to_int64(v(i));
  return e;
}

inline IntVector to_int_vector(const Exponent& e) {
  IntVector v(static_cast<Eigen::Index>(e.size()));
  for (std::size_t i = 0; i < e.size(); ++i) v(static_cast<Eigen::Index>(i)) = Integer(e[i]);
  return v;
}

inline IntMatrix int_matrix(const std::vector<std::vector<long long>>& rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index c = rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size());
  IntMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != c)
      throw ClusterError(ErrorKind::InvalidInput, "ragged matrix rows");
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = Integer(rows[i][j]);
  }
  return m;
}

inline IntVector int_vector(const std::vector<long long>& entries) {
  IntVector v(static_cast<Eigen::Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) v(static_cast<Eigen::Index>(i)) = Integer(entries[i]);
  return v;
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

/// q^e for any integer e; q must be nonzero when e < 0.
inline Rational power(const Rational& q, std::int64_t e) {
  if (e < 0) return Rational(1) / power(q, -e);
  const auto u = static_cast<unsigned>(e);
  return Rational(mp::pow(mp::numerator(q), u), mp::pow(mp::denominator(q), u));
}

std::string to_string(const Rational& q);

}  // namespace cluster
