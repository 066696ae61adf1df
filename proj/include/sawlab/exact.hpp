#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace sawlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string to_decimal(const BigInt& value);

/// Exact probability: a rational in [0, 1] kept in lowest terms.
class ExactProb {
 public:
  ExactProb() = default;
  ExactProb(const BigInt& numerator, const BigInt& denominator);
  explicit ExactProb(const Rational& value);

  static ExactProb zero() { return {}; }
  static ExactProb one() { return ExactProb(BigInt(1), BigInt(1)); }

  const Rational& value() const { return value_; }
  BigInt numerator() const;
  BigInt denominator() const;
  double to_double() const;
  std::string to_string() const;  // "num/den"

  bool is_zero() const { return value_ == 0; }

  friend bool operator==(const ExactProb& a, const ExactProb& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const ExactProb& a, const ExactProb& b);

 private:
  Rational value_{0};
};

double rational_to_double(const Rational& value);

/// Binomial coefficient C(n, k); zero when k > n.
BigInt binomial(std::uint64_t n, std::uint64_t k);

/// A real exponent, held exactly as p/q when the double it came from is the
/// nearest double to a rational with a small denominator (q <= 64).
/// Otherwise only the double value is available.
class Exponent {
 public:
  static constexpr std::uint64_t kMaxDenominator = 64;

  Exponent() = default;
  static Exponent from_double(double value);
  static Exponent from_ratio(std::int64_t num, std::uint64_t den);

  bool is_exact() const { return den_ != 0; }
  double value() const { return value_; }
  const BigInt& numerator() const { return num_; }
  std::uint64_t denominator() const { return den_; }

  Exponent operator-() const;
  friend Exponent operator+(const Exponent& a, const Exponent& b);
  friend Exponent operator-(const Exponent& a, const Exponent& b) { return a + (-b); }

 private:
  double value_ = 0.0;
  BigInt num_{0};
  std::uint64_t den_ = 1;  // 0 marks an inexact exponent
};

/// Three-way comparison of a non-negative rational x against base^e, base >= 1.
/// Exact whenever e is exact; otherwise decided with 100-digit interval
/// arithmetic, and values closer than 1e-80 in log space compare equal.
std::strong_ordering compare_with_power(const Rational& x, std::uint64_t base, const Exponent& e);

/// Largest integer t with t <= base^e (e may be negative; result >= 0).
std::uint64_t floor_power(std::uint64_t base, const Exponent& e);

/// Smallest integer t with t >= base^e.
std::uint64_t ceil_power(std::uint64_t base, const Exponent& e);

}  // namespace sawlab
