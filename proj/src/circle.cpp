#include "idealtop/circle.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "idealtop/errors.hpp"

namespace idealtop {

CirclePoint CirclePoint::from_fraction(const BigInt& num, const BigInt& den) {
  if (den == 0) throw ZeroDenominator();
  Rational r(num, den);  // cpp_rational reduces and fixes the sign
  return from_rational(r);
}

CirclePoint CirclePoint::from_rational(const Rational& r) {
  const BigInt n = boost::multiprecision::numerator(r);
  const BigInt d = boost::multiprecision::denominator(r);
  CirclePoint p;
  p.value_ = Rational(mod_floor(n, d), d);
  return p;
}

Rational CirclePoint::norm() const {
  Rational other = Rational(1) - value_;
  return std::min(value_, other);
}

bool CirclePoint::in_Tk(std::uint32_t k) const {
  // norm <= 1/(4k), closed interval
  return norm() * (4 * BigInt(k)) <= 1;
}

CirclePoint CirclePoint::operator+(const CirclePoint& o) const {
  return from_rational(value_ + o.value_);
}

CirclePoint CirclePoint::operator-() const { return from_rational(-value_); }

CirclePoint CirclePoint::scaled(const BigInt& k) const {
  return from_rational(value_ * k);
}

std::string CirclePoint::str() const {
  if (value_ == 0) return "0";
  return numerator().str() + "/" + denominator().str();
}

CirclePoint CirclePoint::parse(const std::string& text) {
  if (text.empty()) throw ParseError(0, "circle point \"p/q\" or \"0\"");
  std::size_t slash = text.find('/');
  auto parse_int = [&](std::size_t begin, std::size_t end) -> BigInt {
    if (begin >= end) throw ParseError(begin, "integer");
    std::size_t i = begin;
    if (text[i] == '-' || text[i] == '+') ++i;
    if (i >= end) throw ParseError(i, "digit");
    for (std::size_t j = i; j < end; ++j)
      if (!std::isdigit(static_cast<unsigned char>(text[j]))) throw ParseError(j, "digit");
    return BigInt(text.substr(begin, end - begin));
  };
  if (slash == std::string::npos) {
    BigInt n = parse_int(0, text.size());
    return from_fraction(n, 1);
  }
  BigInt num = parse_int(0, slash);
  BigInt den = parse_int(slash + 1, text.size());
  return from_fraction(num, den);
}

ApproxCirclePoint::ApproxCirclePoint(double v, double e) : value(v), eps(e) {
  if (!(e > 0)) throw Error("approximate circle point requires a positive error bound");
  value = v - std::floor(v);
}

std::pair<double, double> ApproxCirclePoint::norm_interval() const {
  double n = std::min(value, 1.0 - value);
  double lo = std::max(0.0, n - eps);
  double hi = std::min(0.5, n + eps);
  return {lo, hi};
}

TriBool ApproxCirclePoint::in_Tk(std::uint32_t k) const {
  auto [lo, hi] = norm_interval();
  double thresh = 1.0 / (4.0 * static_cast<double>(k));
  if (hi <= thresh) return TriBool::True;
  if (lo > thresh) return TriBool::False;
  return TriBool::Undecided;
}

}  // namespace idealtop
