#include "cluster/laurent.hpp"

#include <algorithm>
#include <limits>

namespace cluster {

std::int64_t dot(const Exponent& a, const Exponent& b) {
  if (a.size() != b.size()) throw ClusterError(ErrorKind::RankMismatch, "pairing of vectors of different length");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Exponent operator+(const Exponent& a, const Exponent& b) {
  if (a.size() != b.size()) throw ClusterError(ErrorKind::RankMismatch, "exponent lengths differ");
  Exponent out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Exponent operator-(const Exponent& a, const Exponent& b) {
  if (a.size() != b.size()) throw ClusterError(ErrorKind::RankMismatch, "exponent lengths differ");
  Exponent out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Exponent scaled(const Exponent& a, std::int64_t s) {
  Exponent out(a);
  for (auto& x : out) x *= s;
  return out;
}

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly LaurentPoly::monomial(const Exponent& exponent, const Rational& coefficient) {
  LaurentPoly p(exponent.size());
  p.add_term(exponent, coefficient);
  return p;
}

LaurentPoly LaurentPoly::constant(std::size_t rank, const Rational& value) {
  return monomial(Exponent(rank, 0), value);
}

LaurentPoly LaurentPoly::binomial(const Exponent& psi) {
  LaurentPoly p = constant(psi.size(), Rational(1));
  p.add_term(psi, Rational(1));
  return p;
}

Rational LaurentPoly::coefficient(const Exponent& exponent) const {
  const auto it = terms_.find(exponent);
  return it == terms_.end() ? Rational(0) : it->second;
}

void LaurentPoly::add_term(const Exponent& exponent, const Rational& coefficient) {
  if (exponent.size() != rank_) throw ClusterError(ErrorKind::RankMismatch, "term exponent has wrong length");
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.emplace(exponent, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

void LaurentPoly::check_rank(const LaurentPoly& other) const {
  if (rank_ != other.rank_)
    throw ClusterError(ErrorKind::RankMismatch,
                       "ambient ranks " + std::to_string(rank_) + " and " + std::to_string(other.rank_));
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  check_rank(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  check_rank(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  a.check_rank(b);
  LaurentPoly out(a.rank_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
  return out;
}

LaurentPoly LaurentPoly::operator-() const { return *this * Rational(-1); }

LaurentPoly LaurentPoly::pow(unsigned exponent) const {
  LaurentPoly result = constant(rank_, Rational(1));
  LaurentPoly base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

LaurentPoly LaurentPoly::shifted(const Exponent& shift) const {
  LaurentPoly out(rank_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e + shift, c);
  return out;
}

std::optional<LaurentPoly> LaurentPoly::divide_exact(const LaurentPoly& divisor) const {
  check_rank(divisor);
  if (divisor.is_zero()) throw ClusterError(ErrorKind::ZeroInput, "division by zero polynomial");
  if (is_zero()) return LaurentPoly(rank_);

  // Newton polytopes add under multiplication, so a quotient must live in this box.
  Exponent lo(rank_), hi(rank_);
  for (std::size_t k = 0; k < rank_; ++k) {
    std::int64_t fmin = std::numeric_limits<std::int64_t>::max(), fmax = std::numeric_limits<std::int64_t>::min();
    std::int64_t gmin = fmin, gmax = fmax;
    for (const auto& [e, c] : terms_) fmin = std::min(fmin, e[k]), fmax = std::max(fmax, e[k]);
    for (const auto& [e, c] : divisor.terms_) gmin = std::min(gmin, e[k]), gmax = std::max(gmax, e[k]);
    lo[k] = fmin - gmin;
    hi[k] = fmax - gmax;
    if (lo[k] > hi[k]) return std::nullopt;
  }

  const auto& [glead_e, glead_c] = divisor.leading();
  LaurentPoly remainder = *this;
  LaurentPoly quotient(rank_);
  while (!remainder.is_zero()) {
    const auto& [rlead_e, rlead_c] = remainder.leading();
    const Exponent t = rlead_e - glead_e;
    for (std::size_t k = 0; k < rank_; ++k)
      if (t[k] < lo[k] || t[k] > hi[k]) return std::nullopt;
    const Rational c = rlead_c / glead_c;
    quotient.add_term(t, c);
    for (const auto& [e, gc] : divisor.terms_) remainder.add_term(e + t, -c * gc);
  }
  return quotient;
}

namespace {

std::string exponent_string(const Exponent& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(e[i]);
  }
  return s + ")";
}

}  // namespace

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [e, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += cluster::to_string(c) + "*z^" + exponent_string(e);
  }
  return s;
}

// ---------------------------------------------------------------------------
// RationalFn

namespace {

struct NormalizedFactor {
  Rational unit_coefficient;
  Exponent unit_exponent;
  LaurentPoly factor;
};

// g = unit_coefficient * z^unit_exponent * factor, with factor's lex-smallest term 1.
NormalizedFactor normalize_factor(const LaurentPoly& g) {
  const auto& [e0, c0] = g.trailing();
  LaurentPoly f = g.shifted(scaled(e0, -1));
  f *= Rational(1) / c0;
  return {c0, e0, std::move(f)};
}

}  // namespace

RationalFn::RationalFn(LaurentPoly numerator) : numerator_(std::move(numerator)) {}

RationalFn::RationalFn(LaurentPoly numerator, const Factors& denominator) : numerator_(std::move(numerator)) {
  for (const auto& [g, k] : denominator) divide_by_factor(g, k);
  cancel();
}

void RationalFn::divide_by_factor(const LaurentPoly& factor, int multiplicity) {
  if (multiplicity < 0) throw ClusterError(ErrorKind::InvalidInput, "negative denominator multiplicity");
  if (multiplicity == 0) return;
  if (factor.rank() != rank()) throw ClusterError(ErrorKind::RankMismatch, "denominator factor rank");
  if (factor.is_zero()) throw ClusterError(ErrorKind::ZeroInput, "division by zero");
  auto nf = normalize_factor(factor);
  const Rational unit = power(nf.unit_coefficient, multiplicity);
  numerator_ = numerator_.shifted(scaled(nf.unit_exponent, -multiplicity));
  numerator_ *= Rational(1) / unit;
  if (nf.factor.is_monomial()) return;
  denominator_[nf.factor] += multiplicity;
}

void RationalFn::cancel() {
  if (numerator_.is_zero()) {
    denominator_.clear();
    return;
  }
  for (auto it = denominator_.begin(); it != denominator_.end();) {
    while (it->second > 0) {
      auto q = numerator_.divide_exact(it->first);
      if (!q) break;
      numerator_ = std::move(*q);
      --it->second;
    }
    it = it->second == 0 ? denominator_.erase(it) : std::next(it);
  }
}

LaurentPoly RationalFn::denominator_product() const {
  LaurentPoly d = LaurentPoly::constant(rank(), Rational(1));
  for (const auto& [g, k] : denominator_) d = d * g.pow(static_cast<unsigned>(k));
  return d;
}

RationalFn& RationalFn::operator+=(const RationalFn& other) {
  if (other.rank() != rank()) throw ClusterError(ErrorKind::RankMismatch, "adding functions of different rank");
  Factors common = denominator_;
  for (const auto& [g, k] : other.denominator_) common[g] = std::max(common[g], k);
  auto lift = [&](const RationalFn& f) {
    LaurentPoly n = f.numerator_;
    for (const auto& [g, k] : common) {
      const auto it = f.denominator_.find(g);
      const int have = it == f.denominator_.end() ? 0 : it->second;
      if (k > have) n = n * g.pow(static_cast<unsigned>(k - have));
    }
    return n;
  };
  numerator_ = lift(*this) + lift(other);
  denominator_ = std::move(common);
  cancel();
  return *this;
}

RationalFn& RationalFn::operator-=(const RationalFn& other) { return *this += -other; }

RationalFn& RationalFn::operator*=(const RationalFn& other) {
  if (other.rank() != rank()) throw ClusterError(ErrorKind::RankMismatch, "multiplying functions of different rank");
  numerator_ = numerator_ * other.numerator_;
  for (const auto& [g, k] : other.denominator_) denominator_[g] += k;
  cancel();
  return *this;
}

RationalFn& RationalFn::operator*=(const Rational& scalar) {
  numerator_ *= scalar;
  if (numerator_.is_zero()) denominator_.clear();
  return *this;
}

RationalFn RationalFn::inverse() const {
  if (is_zero()) throw ClusterError(ErrorKind::ZeroInput, "inverse of zero");
  RationalFn out(denominator_product());
  out.divide_by_factor(numerator_, 1);
  out.cancel();
  return out;
}

RationalFn RationalFn::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  RationalFn result(LaurentPoly::constant(rank(), Rational(1)));
  RationalFn base = *this;
  auto e = static_cast<unsigned long>(exponent);
  while (e > 0) {
    if (e & 1UL) result *= base;
    e >>= 1UL;
    if (e > 0) base *= base;
  }
  return result;
}

bool RationalFn::operator==(const RationalFn& other) const {
  if (rank() != other.rank()) return false;
  if (denominator_ == other.denominator_) return numerator_ == other.numerator_;
  return numerator_ * other.denominator_product() == other.numerator_ * denominator_product();
}

std::string RationalFn::to_string() const {
  if (denominator_.empty()) return numerator_.to_string();
  std::string s = "(" + numerator_.to_string() + ") / (";
  bool first = true;
  for (const auto& [g, k] : denominator_) {
    if (!first) s += " * ";
    first = false;
    s += "(" + g.to_string() + ")";
    if (k != 1) s += "^" + std::to_string(k);
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// Free operations

std::optional<LaurentPoly> is_laurent(const RationalFn& f) {
  if (f.denominator().empty()) return f.numerator();
  return f.numerator().divide_exact(f.denominator_product());
}

int factor_multiplicity(const LaurentPoly& f, const Exponent& psi) {
  if (f.is_zero()) throw ClusterError(ErrorKind::ZeroInput, "factor_multiplicity of zero");
  if (std::all_of(psi.begin(), psi.end(), [](std::int64_t x) { return x == 0; }))
    throw ClusterError(ErrorKind::InvalidInput, "1 + z^0 is a unit multiple of 2");
  const LaurentPoly b = LaurentPoly::binomial(psi);
  int k = 0;
  LaurentPoly cur = f;
  while (auto q = cur.divide_exact(b)) {
    cur = std::move(*q);
    ++k;
  }
  return k;
}

std::int64_t toric_valuation(const LaurentPoly& f, const Exponent& u) {
  if (f.is_zero()) throw ClusterError(ErrorKind::ZeroInput, "valuation of zero");
  std::int64_t v = std::numeric_limits<std::int64_t>::max();
  for (const auto& [e, c] : f.terms()) v = std::min(v, dot(e, u));
  return v;
}

std::int64_t toric_valuation(const RationalFn& f, const Exponent& u) {
  std::int64_t v = toric_valuation(f.numerator(), u);
  for (const auto& [g, k] : f.denominator()) v -= k * toric_valuation(g, u);
  return v;
}

Rational monomial_value(const Exponent& exponent, const TorusPoint& point) {
  if (exponent.size() != point.size()) throw ClusterError(ErrorKind::RankMismatch, "point has wrong length");
  Rational v(1);
  for (std::size_t k = 0; k < point.size(); ++k) {
    if (point[k] == 0) throw ClusterError(ErrorKind::InvalidInput, "torus point has a zero coordinate");
    v *= power(point[k], exponent[k]);
  }
  return v;
}

Rational evaluate(const LaurentPoly& f, const TorusPoint& point) {
  Rational v(0);
  for (const auto& [e, c] : f.terms()) v += c * monomial_value(e, point);
  return v;
}

Rational evaluate(const RationalFn& f, const TorusPoint& point) {
  Rational den(1);
  for (const auto& [g, k] : f.denominator()) {
    const Rational gv = evaluate(g, point);
    if (gv == 0) throw ClusterError(ErrorKind::DenominatorVanishes, "denominator factor " + g.to_string() + " vanishes");
    den *= power(gv, k);
  }
  return evaluate(f.numerator(), point) / den;
}

RationalFn apply_hom(const RationalFn& f, const PolyHom& hom) {
  RationalFn out = hom(f.numerator());
  for (const auto& [g, k] : f.denominator()) out *= hom(g).pow(-k);
  return out;
}

RationalFn twist_pullback(const RationalFn& f, const Exponent& u, const LaurentPoly& F) {
  if (u.size() != f.rank() || F.rank() != f.rank())
    throw ClusterError(ErrorKind::RankMismatch, "twist_pullback: rank mismatch");
  std::vector<LaurentPoly> powers{LaurentPoly::constant(f.rank(), Rational(1))};
  auto power = [&](std::size_t k) -> const LaurentPoly& {
    while (powers.size() <= k) powers.push_back(powers.back() * F);
    return powers[k];
  };
  const PolyHom hom = [&](const LaurentPoly& p) {
    std::int64_t top = 0;
    for (const auto& [e, c] : p.terms()) top = std::max(top, dot(e, u));
    LaurentPoly num(p.rank());
    for (const auto& [e, c] : p.terms())
      num += (power(static_cast<std::size_t>(top - dot(e, u))) * c).shifted(e);
    RationalFn::Factors den;
    if (top > 0) den.emplace(F, static_cast<int>(top));
    return RationalFn(std::move(num), den);
  };
  return apply_hom(f, hom);
}

RationalFn mutation_pullback(const RationalFn& f, const Exponent& u, const Exponent& psi) {
  if (dot(psi, u) != 0) throw ClusterError(ErrorKind::PsiUNotOrthogonal, "mutation needs psi(u) = 0");
  return twist_pullback(f, u, LaurentPoly::binomial(psi));
}

RationalFn inverse_mutation_pullback(const RationalFn& f, const Exponent& u, const Exponent& psi) {
  if (dot(psi, u) != 0) throw ClusterError(ErrorKind::PsiUNotOrthogonal, "mutation needs psi(u) = 0");
  return twist_pullback(f, scaled(u, -1), LaurentPoly::binomial(psi));
}

LaurentPoly MonomialMap::apply(const LaurentPoly& f) const {
  if (static_cast<std::size_t>(linear.cols()) != f.rank())
    throw ClusterError(ErrorKind::RankMismatch, "monomial map: input rank");
  if (!values.empty() && values.size() != f.rank())
    throw ClusterError(ErrorKind::RankMismatch, "monomial map: character length");
  LaurentPoly out(static_cast<std::size_t>(linear.rows()));
  for (const auto& [e, c] : f.terms()) {
    const Exponent image = to_exponent(IntVector(linear * to_int_vector(e)));
    out.add_term(image, values.empty() ? c : c * monomial_value(e, values));
  }
  return out;
}

RationalFn MonomialMap::apply(const RationalFn& f) const {
  return apply_hom(f, [this](const LaurentPoly& p) { return RationalFn(apply(p)); });
}

}  // namespace cluster
