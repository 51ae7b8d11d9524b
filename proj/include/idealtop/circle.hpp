#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "idealtop/rational.hpp"

namespace idealtop {

enum class TriBool { False = 0, True = 1, Undecided = 2 };

// Exact point of the circle group R/Z, stored as a reduced fraction in [0,1).
class CirclePoint {
 public:
  CirclePoint() : value_(0) {}

  // (num/den) mod 1, reduced. Throws ZeroDenominator.
  static CirclePoint from_fraction(const BigInt& num, const BigInt& den);
  static CirclePoint from_rational(const Rational& r);

  const Rational& value() const { return value_; }
  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }
  bool is_zero() const { return value_ == 0; }

  // Distance to 0 along the circle: min(x, 1-x), an exact rational in [0, 1/2].
  Rational norm() const;

  // Membership in the closed arc T_k of points within 1/(4k) of 0.
  // The interval is closed; boundary points are inside.
  bool in_Tk(std::uint32_t k) const;

  // Multiplicative order in R/Z (the reduced denominator); 1 for the zero point.
  BigInt order() const { return denominator(); }

  CirclePoint operator+(const CirclePoint& o) const;
  CirclePoint operator-() const;
  CirclePoint operator-(const CirclePoint& o) const { return *this + (-o); }
  CirclePoint scaled(const BigInt& k) const;

  bool operator==(const CirclePoint& o) const { return value_ == o.value_; }
  bool operator!=(const CirclePoint& o) const { return value_ != o.value_; }
  bool operator<(const CirclePoint& o) const { return value_ < o.value_; }

  // "p/q" reduced, or "0".
  std::string str() const;
  static CirclePoint parse(const std::string& text);

 private:
  Rational value_;  // invariant: 0 <= value_ < 1, reduced
};

// Circle point known only up to an explicit error bound. Comparisons against a
// threshold closer than eps return Undecided.
struct ApproxCirclePoint {
  double value = 0.0;  // representative in [0,1)
  double eps = 0.0;    // eps > 0

  ApproxCirclePoint() = default;
  ApproxCirclePoint(double v, double e);

  // Interval [lo, hi] containing the true circle norm.
  std::pair<double, double> norm_interval() const;
  TriBool in_Tk(std::uint32_t k) const;
};

}  // namespace idealtop
