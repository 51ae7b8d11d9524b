#include <doctest.h>

#include "idealtop/circle.hpp"
#include "idealtop/errors.hpp"
#include "support/gen.hpp"

using namespace idealtop;

TEST_CASE("normalization reduces into [0,1)") {
  CHECK(CirclePoint::from_fraction(7, 4).str() == "3/4");
  CHECK(CirclePoint::from_fraction(-1, 3).str() == "2/3");
  CHECK(CirclePoint::from_fraction(6, 4).str() == "1/2");
  CHECK(CirclePoint::from_fraction(0, 5).str() == "0");
  CHECK(CirclePoint::from_fraction(12, 4).str() == "0");
  CHECK_THROWS_AS(CirclePoint::from_fraction(1, 0), ZeroDenominator);
}

TEST_CASE("normalization is idempotent on its own output") {
  testgen::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    auto p = testgen::random_point(rng, 1000);
    CHECK(CirclePoint::from_fraction(p.numerator(), p.denominator()) == p);
  }
}

TEST_CASE("circle norm") {
  CHECK(CirclePoint().norm() == 0);
  CHECK(CirclePoint::from_fraction(1, 3).norm() == Rational(1, 3));
  CHECK(CirclePoint::from_fraction(3, 4).norm() == Rational(1, 4));
}

TEST_CASE("T_k membership is closed at the boundary") {
  CHECK(CirclePoint::from_fraction(1, 4).in_Tk(1));
  CHECK_FALSE(CirclePoint::from_fraction(1, 3).in_Tk(1));
  CHECK(CirclePoint::from_fraction(1, 8).in_Tk(2));
  CHECK_FALSE(CirclePoint::from_fraction(1, 7).in_Tk(2));
}

TEST_CASE("norm triangle inequality and symmetry") {
  testgen::Rng rng(12);
  for (int i = 0; i < 300; ++i) {
    auto x = testgen::random_point(rng);
    auto y = testgen::random_point(rng);
    CHECK((x + y).norm() <= x.norm() + y.norm());
    CHECK((-x).norm() == x.norm());
  }
}

TEST_CASE("parse and print round trip") {
  for (const char* s : {"0", "1/2", "3/7", "15/16"}) {
    CHECK(CirclePoint::parse(s).str() == s);
  }
  CHECK(CirclePoint::parse("6/4").str() == "1/2");  // parser normalizes
  CHECK_THROWS_AS(CirclePoint::parse("1/"), ParseError);
  CHECK_THROWS_AS(CirclePoint::parse("x"), ParseError);
}

TEST_CASE("approximate points report Undecided near the threshold") {
  CHECK(ApproxCirclePoint(0.25, 1e-9).in_Tk(1) == TriBool::Undecided);
  CHECK(ApproxCirclePoint(0.3, 0.01).in_Tk(1) == TriBool::False);
  CHECK(ApproxCirclePoint(0.1, 0.01).in_Tk(1) == TriBool::True);
  CHECK_THROWS(ApproxCirclePoint(0.1, 0.0));
}
