#pragma once

// Exact Laurent polynomials over Q and fractions of them whose denominators
// are kept as a multiset of polynomial factors. Mutation pullbacks produce
// binomial denominators (1 + z^psi); composing several of them produces
// pullbacks of binomials, so factors are general polynomials normalized up to
// monomial units.

#include "cluster/numeric.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>

namespace cluster {

class LaurentPoly {
 public:
  using Terms = std::map<Exponent, Rational>;

  LaurentPoly() = default;
  explicit LaurentPoly(std::size_t rank) : rank_(rank) {}

  static LaurentPoly monomial(const Exponent& exponent, const Rational& coefficient = Rational(1));
  static LaurentPoly constant(std::size_t rank, const Rational& value);
  /// 1 + z^psi
  static LaurentPoly binomial(const Exponent& psi);

  std::size_t rank() const { return rank_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(const Exponent& exponent) const;

  /// Lex-largest / lex-smallest term; the polynomial must be nonzero.
  const Terms::value_type& leading() const { return *terms_.rbegin(); }
  const Terms::value_type& trailing() const { return *terms_.begin(); }

  void add_term(const Exponent& exponent, const Rational& coefficient);

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(const Rational& scalar);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const Rational& s) { return a *= s; }
  LaurentPoly operator-() const;

  LaurentPoly pow(unsigned exponent) const;
  /// Multiply by z^shift.
  LaurentPoly shifted(const Exponent& shift) const;

  /// Quotient when `divisor` divides exactly, nothing otherwise.
  std::optional<LaurentPoly> divide_exact(const LaurentPoly& divisor) const;

  bool operator==(const LaurentPoly& other) const { return rank_ == other.rank_ && terms_ == other.terms_; }
  bool operator<(const LaurentPoly& other) const {
    return rank_ != other.rank_ ? rank_ < other.rank_ : terms_ < other.terms_;
  }

  std::string to_string() const;

 private:
  void check_rank(const LaurentPoly& other) const;

  std::size_t rank_ = 0;
  Terms terms_;
};

/// numerator / prod factor^multiplicity, with factors non-monomial and
/// normalized so their lex-smallest term is the constant 1.
class RationalFn {
 public:
  using Factors = std::map<LaurentPoly, int>;

  RationalFn() = default;
  explicit RationalFn(std::size_t rank) : numerator_(rank) {}
  RationalFn(LaurentPoly numerator);  // NOLINT(google-explicit-constructor)
  RationalFn(LaurentPoly numerator, const Factors& denominator);

  static RationalFn monomial(const Exponent& exponent, const Rational& coefficient = Rational(1)) {
    return RationalFn(LaurentPoly::monomial(exponent, coefficient));
  }

  std::size_t rank() const { return numerator_.rank(); }
  const LaurentPoly& numerator() const { return numerator_; }
  const Factors& denominator() const { return denominator_; }
  bool is_zero() const { return numerator_.is_zero(); }
  LaurentPoly denominator_product() const;

  RationalFn& operator+=(const RationalFn& other);
  RationalFn& operator-=(const RationalFn& other);
  RationalFn& operator*=(const RationalFn& other);
  RationalFn& operator*=(const Rational& scalar);
  friend RationalFn operator+(RationalFn a, const RationalFn& b) { return a += b; }
  friend RationalFn operator-(RationalFn a, const RationalFn& b) { return a -= b; }
  friend RationalFn operator*(RationalFn a, const RationalFn& b) { return a *= b; }
  friend RationalFn operator*(RationalFn a, const Rational& s) { return a *= s; }
  RationalFn operator-() const { return *this * Rational(-1); }

  /// Multiplicative inverse; throws ZeroInput on zero.
  RationalFn inverse() const;
  RationalFn pow(long exponent) const;

  /// Equality as elements of the fraction field (cross-multiplication).
  bool operator==(const RationalFn& other) const;
  bool operator!=(const RationalFn& other) const { return !(*this == other); }

  std::string to_string() const;

 private:
  void divide_by_factor(const LaurentPoly& factor, int multiplicity);
  void cancel();

  LaurentPoly numerator_;
  Factors denominator_;
};

using TorusPoint = std::vector<Rational>;

/// The cleared Laurent form iff the denominator divides the numerator.
std::optional<LaurentPoly> is_laurent(const RationalFn& f);

/// Largest k with (1 + z^psi)^k dividing f.
int factor_multiplicity(const LaurentPoly& f, const Exponent& psi);

/// Order of vanishing along the toric divisor of the functional u.
std::int64_t toric_valuation(const RationalFn& f, const Exponent& u);
std::int64_t toric_valuation(const LaurentPoly& f, const Exponent& u);

Rational evaluate(const LaurentPoly& f, const TorusPoint& point);
Rational evaluate(const RationalFn& f, const TorusPoint& point);
/// z^exponent evaluated at the point.
Rational monomial_value(const Exponent& exponent, const TorusPoint& point);

std::int64_t dot(const Exponent& a, const Exponent& b);
Exponent operator+(const Exponent& a, const Exponent& b);
Exponent operator-(const Exponent& a, const Exponent& b);
Exponent scaled(const Exponent& a, std::int64_t s);

/// A ring homomorphism given by its action on Laurent polynomials; extended to
/// fractions factor by factor.
using PolyHom = std::function<RationalFn(const LaurentPoly&)>;
RationalFn apply_hom(const RationalFn& f, const PolyHom& hom);

/// z^phi -> z^phi * F^(-<phi, u>), extended to fractions.
RationalFn twist_pullback(const RationalFn& f, const Exponent& u, const LaurentPoly& F);

/// z^phi -> z^phi (1 + z^psi)^(-<phi, u>); requires <psi, u> = 0.
RationalFn mutation_pullback(const RationalFn& f, const Exponent& u, const Exponent& psi);
/// Compositional inverse: z^phi -> z^phi (1 + z^psi)^(<phi, u>).
RationalFn inverse_mutation_pullback(const RationalFn& f, const Exponent& u, const Exponent& psi);

/// z^phi -> character(phi) * z^(L phi), where character(phi) = prod values_k^phi_k.
/// An empty `values` means the trivial character.
struct MonomialMap {
  IntMatrix linear;
  TorusPoint values;

  LaurentPoly apply(const LaurentPoly& f) const;
  RationalFn apply(const RationalFn& f) const;
};

}  // namespace cluster
