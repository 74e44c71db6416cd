#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace bsym {

/// Reduced fraction num/den with den > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  /// Reduces and canonicalizes the sign onto the numerator. Throws
  /// ZeroDenominator when den == 0.
  static Rational make(std::int64_t num, std::int64_t den);

  double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_integer() const noexcept { return den == 1; }

  friend Rational operator-(Rational r) { return {-r.num, r.den}; }
  friend bool operator==(const Rational&, const Rational&) = default;
};

Rational operator+(Rational l, Rational r);
Rational operator-(Rational l, Rational r);
Rational operator*(Rational l, Rational r);
Rational operator/(Rational l, Rational r);

/// Which closed-form variant applies, from the parities of reduced p and q.
enum class ExponentClass { EvenOverOdd, OddOverEven, OddOverOdd, One };

std::string_view to_string(ExponentClass c);

struct RationalExponent {
  std::int64_t p = 0;
  std::int64_t q = 1;
  ExponentClass cls = ExponentClass::EvenOverOdd;

  Rational value() const noexcept { return {p, q}; }
  double to_double() const noexcept { return value().to_double(); }
  /// n - 1 as an exact fraction.
  Rational minus_one() const noexcept { return {p - q, q}; }

  friend bool operator==(const RationalExponent&, const RationalExponent&) = default;
};

/// Reduces p/q (q > 0 afterwards) and classifies it. Zero becomes 0/1, which
/// is EvenOverOdd.
RationalExponent classify_exponent(std::int64_t p, std::int64_t q);

/// Accepts "p/q" or an integer "p". Throws SyntaxError on malformed text and
/// ZeroDenominator on q == 0.
RationalExponent parse_exponent(std::string_view text);

/// "p" when q == 1, otherwise "p/q".
std::string to_string(const RationalExponent& n);

/// Real power x^(u/v) with odd-root semantics: for odd v the result is
/// sign(x)^u * |x|^(u/v); for even v, x must be non-negative. Throws
/// DomainError for an even root of a negative number or a negative power of 0.
double signed_pow(double x, Rational r);

} // namespace bsym
