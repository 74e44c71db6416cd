#include "bsym/exponent.hpp"

#include "bsym/error.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <system_error>

namespace bsym {

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ZeroDenominator("zero denominator in " + std::to_string(num) + "/0");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

Rational operator+(Rational l, Rational r) { return Rational::make(l.num * r.den + r.num * l.den, l.den * r.den); }
Rational operator-(Rational l, Rational r) { return l + (-r); }
Rational operator*(Rational l, Rational r) { return Rational::make(l.num * r.num, l.den * r.den); }
Rational operator/(Rational l, Rational r) { return Rational::make(l.num * r.den, l.den * r.num); }

std::string_view to_string(ExponentClass c) {
  switch (c) {
  case ExponentClass::EvenOverOdd: return "even/odd";
  case ExponentClass::OddOverEven: return "odd/even";
  case ExponentClass::OddOverOdd: return "odd/odd";
  case ExponentClass::One: return "one";
  }
  return "?";
}

RationalExponent classify_exponent(std::int64_t p, std::int64_t q) {
  const Rational r = Rational::make(p, q);
  RationalExponent n{r.num, r.den, ExponentClass::EvenOverOdd};
  const bool p_odd = r.num % 2 != 0;
  const bool q_odd = r.den % 2 != 0;
  if (r.num == 1 && r.den == 1)
    n.cls = ExponentClass::One;
  else if (p_odd && q_odd)
    n.cls = ExponentClass::OddOverOdd;
  else if (p_odd)
    n.cls = ExponentClass::OddOverEven;
  else
    n.cls = ExponentClass::EvenOverOdd;
  return n;
}

namespace {

std::int64_t parse_int(std::string_view s, std::size_t offset) {
  // from_chars rejects a leading '+'; allow it for symmetry with '-'.
  if (!s.empty() && s.front() == '+') {
    s.remove_prefix(1);
    ++offset;
  }
  std::int64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size())
    throw SyntaxError("malformed exponent '" + std::string(s) + "'", offset);
  return v;
}

std::string_view trim(std::string_view s, std::size_t& offset) {
  while (!s.empty() && s.front() == ' ') {
    s.remove_prefix(1);
    ++offset;
  }
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

} // namespace

RationalExponent parse_exponent(std::string_view text) {
  std::size_t offset = 0;
  text = trim(text, offset);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return classify_exponent(parse_int(text, offset), 1);
  std::size_t den_offset = offset + slash + 1;
  std::size_t num_offset = offset;
  const auto num = parse_int(trim(text.substr(0, slash), num_offset), num_offset);
  const auto den = parse_int(trim(text.substr(slash + 1), den_offset), den_offset);
  return classify_exponent(num, den);
}

std::string to_string(const RationalExponent& n) {
  if (n.q == 1) return std::to_string(n.p);
  return std::to_string(n.p) + "/" + std::to_string(n.q);
}

double signed_pow(double x, Rational r) {
  r = Rational::make(r.num, r.den);
  const bool odd_root = r.den % 2 != 0;
  if (x < 0.0 && !odd_root)
    throw DomainError("even root of negative number " + std::to_string(x));
  if (x == 0.0) {
    if (r.num < 0) throw DomainError("negative power of zero");
    return r.num == 0 ? 1.0 : 0.0;
  }
  if (r.num == 0) return 1.0;
  const double sign = (x < 0.0 && r.num % 2 != 0) ? -1.0 : 1.0;
  const double m = std::abs(x);
  if (m == 1.0) return sign;
  double mag = 0.0;
  if (r.den == 1)
    mag = std::pow(m, static_cast<double>(r.num));
  else if (r.den == 2)
    mag = std::pow(std::sqrt(m), static_cast<double>(r.num));
  else if (r.den == 3)
    mag = std::pow(std::cbrt(m), static_cast<double>(r.num));
  else
    mag = std::pow(m, r.to_double());
  return sign * mag;
}

} // namespace bsym
