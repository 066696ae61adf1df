#include "sawlab/exact.hpp"

#include <cmath>
#include <numeric>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace sawlab {

namespace mp = boost::multiprecision;
using Float100 = mp::cpp_bin_float_100;

std::string to_decimal(const BigInt& value) { return value.str(); }

ExactProb::ExactProb(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) {
    throw std::invalid_argument("ExactProb: zero denominator");
  }
  value_ = Rational(numerator, denominator);
  if (value_ < 0 || value_ > 1) {
    throw std::domain_error("ExactProb: value " + value_.str() + " outside [0,1]");
  }
}

ExactProb::ExactProb(const Rational& value) : value_(value) {
  if (value_ < 0 || value_ > 1) {
    throw std::domain_error("ExactProb: value " + value_.str() + " outside [0,1]");
  }
}

BigInt ExactProb::numerator() const { return mp::numerator(value_); }
BigInt ExactProb::denominator() const { return mp::denominator(value_); }

double ExactProb::to_double() const { return rational_to_double(value_); }

std::string ExactProb::to_string() const {
  return numerator().str() + "/" + denominator().str();
}

std::strong_ordering operator<=>(const ExactProb& a, const ExactProb& b) {
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (a.value_ > b.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double rational_to_double(const Rational& value) {
  Float100 num(mp::numerator(value));
  Float100 den(mp::denominator(value));
  return static_cast<double>(num / den);
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

Exponent Exponent::from_double(double value) {
  if (!std::isfinite(value)) {
    throw std::domain_error("Exponent: non-finite value");
  }
  Exponent e;
  e.value_ = value;
  for (std::uint64_t q = 1; q <= kMaxDenominator; ++q) {
    double scaled = value * static_cast<double>(q);
    double p = std::round(scaled);
    if (std::abs(p) > 1e15) break;
    if (static_cast<double>(static_cast<std::int64_t>(p)) / static_cast<double>(q) == value) {
      e.num_ = static_cast<std::int64_t>(p);
      e.den_ = q;
      return e;
    }
  }
  e.den_ = 0;
  return e;
}

Exponent Exponent::from_ratio(std::int64_t num, std::uint64_t den) {
  if (den == 0) throw std::invalid_argument("Exponent: zero denominator");
  Exponent e;
  std::uint64_t g = std::gcd(static_cast<std::uint64_t>(num < 0 ? -num : num), den);
  e.num_ = num / static_cast<std::int64_t>(g);
  e.den_ = den / g;
  e.value_ = static_cast<double>(num) / static_cast<double>(den);
  return e;
}

Exponent Exponent::operator-() const {
  Exponent e = *this;
  e.value_ = -value_;
  e.num_ = -num_;
  return e;
}

Exponent operator+(const Exponent& a, const Exponent& b) {
  Exponent e;
  e.value_ = a.value_ + b.value_;
  if (a.is_exact() && b.is_exact()) {
    BigInt num = a.num_ * b.den_ + b.num_ * a.den_;
    BigInt den = BigInt(a.den_) * b.den_;
    BigInt g = mp::gcd(num < 0 ? BigInt(-num) : num, den);
    if (g == 0) g = 1;
    num /= g;
    den /= g;
    if (den <= Exponent::kMaxDenominator) {
      e.num_ = num;
      e.den_ = static_cast<std::uint64_t>(den);
      return e;
    }
  }
  e.den_ = 0;
  return e;
}

namespace {

std::strong_ordering compare_big(const BigInt& a, const BigInt& b) {
  if (a < b) return std::strong_ordering::less;
  if (a > b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering compare_with_power(const Rational& x, std::uint64_t base, const Exponent& e) {
  if (base == 0) throw std::domain_error("compare_with_power: base must be positive");
  if (x < 0) throw std::domain_error("compare_with_power: negative operand");
  if (x == 0) return std::strong_ordering::less;  // base^e > 0
  if (base == 1) return compare_big(mp::numerator(x), mp::denominator(x));

  if (e.is_exact()) {
    // x vs base^(p/q)  <=>  x^q vs base^p
    const std::uint64_t q = e.denominator();
    const BigInt& p = e.numerator();
    BigInt a = mp::pow(mp::numerator(x), static_cast<unsigned>(q));
    BigInt b = mp::pow(mp::denominator(x), static_cast<unsigned>(q));
    BigInt bp = mp::pow(BigInt(base), static_cast<unsigned>(p < 0 ? BigInt(-p) : p));
    // x^q = a/b ; compare a/b with bp (p>=0) or 1/bp (p<0)
    if (p >= 0) return compare_big(a, b * bp);
    return compare_big(a * bp, b);
  }

  Float100 lx = mp::log(Float100(mp::numerator(x))) - mp::log(Float100(mp::denominator(x)));
  Float100 rhs = Float100(e.value()) * mp::log(Float100(base));
  Float100 diff = lx - rhs;
  if (mp::abs(diff) < Float100("1e-80")) return std::strong_ordering::equal;
  return diff < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::uint64_t floor_power(std::uint64_t base, const Exponent& e) {
  double guess = std::pow(static_cast<double>(base), e.value());
  if (guess > 1e17) throw std::overflow_error("floor_power: result too large");
  std::uint64_t t = static_cast<std::uint64_t>(std::max(0.0, std::floor(guess)));
  while (t > 0 && compare_with_power(Rational(t), base, e) == std::strong_ordering::greater) --t;
  while (compare_with_power(Rational(t + 1), base, e) != std::strong_ordering::greater) ++t;
  return t;
}

std::uint64_t ceil_power(std::uint64_t base, const Exponent& e) {
  std::uint64_t t = floor_power(base, e);
  if (compare_with_power(Rational(t), base, e) == std::strong_ordering::equal) return t;
  return t + 1;
}

}  // namespace sawlab
