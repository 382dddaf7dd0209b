#include "dcmon/quantity.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "dcmon/error.hpp"

namespace dcmon {

namespace {

std::int64_t pow10(int n) {
  std::int64_t p = 1;
  for (int i = 0; i < n; ++i) {
    if (p > std::numeric_limits<std::int64_t>::max() / 10) {
      throw std::invalid_argument("decimal literal out of range");
    }
    p *= 10;
  }
  return p;
}

}  // namespace

Rational parse_decimal(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  std::int64_t mantissa = 0;
  int frac_digits = 0;
  bool any_digit = false;
  bool in_fraction = false;
  for (; i < text.size(); ++i) {
    char ch = text[i];
    if (ch == '.' && !in_fraction) {
      in_fraction = true;
      continue;
    }
    if (ch < '0' || ch > '9') break;
    any_digit = true;
    if (mantissa > (std::numeric_limits<std::int64_t>::max() - 9) / 10) {
      throw std::invalid_argument("decimal literal out of range");
    }
    mantissa = mantissa * 10 + (ch - '0');
    if (in_fraction) ++frac_digits;
  }
  if (!any_digit) throw std::invalid_argument("malformed decimal literal");
  int exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
      exp_negative = text[i] == '-';
      ++i;
    }
    bool exp_digit = false;
    for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
      exp_digit = true;
      exponent = exponent * 10 + (text[i] - '0');
      if (exponent > 18) throw std::invalid_argument("decimal exponent out of range");
    }
    if (!exp_digit) throw std::invalid_argument("malformed decimal exponent");
    if (exp_negative) exponent = -exponent;
  }
  if (i != text.size()) throw std::invalid_argument("trailing characters in decimal literal");
  int scale = exponent - frac_digits;
  Rational r = scale >= 0 ? Rational(mantissa) * Rational(pow10(scale))
                          : Rational(mantissa, pow10(-scale));
  return negative ? -r : r;
}

Rational approximate_rational(double value, std::int64_t max_den) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value");
  // Continued-fraction convergents.
  bool negative = value < 0;
  double x = std::fabs(value);
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double rem = x;
  for (int iter = 0; iter < 64; ++iter) {
    double a_d = std::floor(rem);
    if (a_d > 1e15) break;
    auto a = static_cast<std::int64_t>(a_d);
    std::int64_t q2 = a * q1 + q0;
    if (q2 > max_den) break;
    std::int64_t p2 = a * p1 + p0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double frac = rem - a_d;
    if (frac < 1e-15 || std::fabs(static_cast<double>(p1) / q1 - x) < 1e-15 * std::max(1.0, x)) {
      break;
    }
    rem = 1.0 / frac;
  }
  if (q1 == 0) throw std::invalid_argument("value out of rational range");
  Rational r(p1, q1);
  return negative ? -r : r;
}

bool is_decimal(const Rational& r) {
  std::int64_t d = r.denominator();
  while (d % 2 == 0) d /= 2;
  while (d % 5 == 0) d /= 5;
  return d == 1;
}

std::string format_decimal(const Rational& r) {
  if (!is_decimal(r)) throw std::invalid_argument("rational has no finite decimal form");
  std::int64_t num = r.numerator();
  std::int64_t den = r.denominator();
  std::string sign = num < 0 ? "-" : "";
  if (num < 0) num = -num;
  std::int64_t whole = num / den;
  std::int64_t rest = num % den;
  std::string out = sign + std::to_string(whole);
  if (rest == 0) return out;
  out += '.';
  while (rest != 0) {
    rest *= 10;
    out += static_cast<char>('0' + rest / den);
    rest %= den;
  }
  return out;
}

double Quantity::to_double() const {
  if (exact()) return dcmon::to_double(rational());
  return std::get<double>(value_);
}

Quantity operator+(const Quantity& a, const Quantity& b) {
  if (a.exact() && b.exact()) return Quantity(a.rational() + b.rational());
  return Quantity::inexact(a.to_double() + b.to_double());
}

Quantity operator-(const Quantity& a, const Quantity& b) {
  if (a.exact() && b.exact()) return Quantity(a.rational() - b.rational());
  return Quantity::inexact(a.to_double() - b.to_double());
}

Quantity operator*(const Quantity& a, const Quantity& b) {
  if (a.exact() && b.exact()) return Quantity(a.rational() * b.rational());
  return Quantity::inexact(a.to_double() * b.to_double());
}

Quantity operator/(const Quantity& a, const Quantity& b) {
  if (b.to_double() == 0.0 && (!b.exact() || b.rational() == 0)) {
    throw EvalError("division by zero");
  }
  if (a.exact() && b.exact()) return Quantity(a.rational() / b.rational());
  return Quantity::inexact(a.to_double() / b.to_double());
}

Quantity Quantity::operator-() const {
  if (exact()) return Quantity(-rational());
  return Quantity::inexact(-to_double());
}

Quantity min(const Quantity& a, const Quantity& b) {
  return compare(Relation::Le, a, b, 0.0) ? a : b;
}

Quantity max(const Quantity& a, const Quantity& b) {
  return compare(Relation::Ge, a, b, 0.0) ? a : b;
}

bool compare(Relation rel, const Quantity& lhs, const Quantity& rhs, double tolerance) {
  if (lhs.exact() && rhs.exact()) {
    const Rational& a = lhs.rational();
    const Rational& b = rhs.rational();
    switch (rel) {
      case Relation::Eq: return a == b;
      case Relation::Ne: return a != b;
      case Relation::Lt: return a < b;
      case Relation::Le: return a <= b;
      case Relation::Gt: return a > b;
      case Relation::Ge: return a >= b;
    }
  }
  double a = lhs.to_double();
  double b = rhs.to_double();
  switch (rel) {
    case Relation::Eq: return std::fabs(a - b) <= tolerance;
    case Relation::Ne: return std::fabs(a - b) > tolerance;
    case Relation::Lt: return a < b - tolerance;
    case Relation::Le: return a <= b + tolerance;
    case Relation::Gt: return a > b + tolerance;
    case Relation::Ge: return a >= b - tolerance;
  }
  return false;
}

std::string to_string(const Quantity& q) {
  if (q.exact()) {
    const Rational& r = q.rational();
    if (is_decimal(r) && r.denominator() <= 1'000'000) return format_decimal(r);
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
  }
  std::ostringstream os;
  os.precision(12);
  os << q.to_double();
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Quantity& q) { return os << to_string(q); }

}  // namespace dcmon
