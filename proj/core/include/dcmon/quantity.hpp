#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include <boost/rational.hpp>

// Boost 1.74's mixed rational/integer operator== recurses forever once C++20
// adds reversed candidates; exact non-template overloads win resolution.
namespace boost {
inline bool operator==(const rational<std::int64_t>& a, std::int64_t b) {
  return a.numerator() == b && a.denominator() == 1;
}
inline bool operator==(const rational<std::int64_t>& a, int b) {
  return a == static_cast<std::int64_t>(b);
}
}  // namespace boost

namespace dcmon {

using Rational = boost::rational<std::int64_t>;

/// Default absolute tolerance for comparisons involving inexact quantities.
inline constexpr double kDefaultTolerance = 1e-9;

/// Parses a decimal literal ("12", "0.25", "-3.5", "1e-3") into an exact
/// rational. Throws std::invalid_argument on malformed input.
Rational parse_decimal(std::string_view text);

/// Best rational approximation of `value` with denominator <= max_den.
Rational approximate_rational(double value, std::int64_t max_den = 1'000'000'000);

/// True when `r` has a terminating decimal expansion.
bool is_decimal(const Rational& r);

/// Shortest text that parse_decimal() maps back to `r`. Requires is_decimal(r).
std::string format_decimal(const Rational& r);

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// A real value that stays exact (rational) as long as every input was exact.
/// Durations and literals are exact; valuation constants may be either.
class Quantity {
 public:
  Quantity() : value_(Rational(0)) {}
  Quantity(Rational r) : value_(r) {}  // NOLINT(google-explicit-constructor)
  Quantity(std::int64_t n) : value_(Rational(n)) {}  // NOLINT
  Quantity(int n) : value_(Rational(n)) {}  // NOLINT
  static Quantity inexact(double d) { return Quantity(d, 0); }

  bool exact() const noexcept { return std::holds_alternative<Rational>(value_); }
  const Rational& rational() const { return std::get<Rational>(value_); }
  double to_double() const;

  friend Quantity operator+(const Quantity& a, const Quantity& b);
  friend Quantity operator-(const Quantity& a, const Quantity& b);
  friend Quantity operator*(const Quantity& a, const Quantity& b);
  /// Throws EvalError when the divisor is zero.
  friend Quantity operator/(const Quantity& a, const Quantity& b);
  Quantity operator-() const;

  /// Structural equality: same exactness and same value.
  friend bool operator==(const Quantity& a, const Quantity& b) = default;

 private:
  Quantity(double d, int) : value_(d) {}
  std::variant<Rational, double> value_;
};

Quantity min(const Quantity& a, const Quantity& b);
Quantity max(const Quantity& a, const Quantity& b);

enum class Relation { Eq, Ne, Lt, Le, Gt, Ge };

/// Compares exactly when both sides are exact, otherwise within `tolerance`.
bool compare(Relation rel, const Quantity& lhs, const Quantity& rhs,
             double tolerance = kDefaultTolerance);

std::string to_string(const Quantity& q);
std::ostream& operator<<(std::ostream& os, const Quantity& q);

}  // namespace dcmon
