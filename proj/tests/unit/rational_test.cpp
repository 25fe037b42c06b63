#include <gtest/gtest.h>

#include "sylvester/errors.hpp"
#include "sylvester/rational.hpp"

namespace sylvester {
namespace {

TEST(Rational, StaysReducedWithPositiveDenominator) {
  const Rational r(6, -8);
  EXPECT_EQ(r.numerator(), -3);
  EXPECT_EQ(r.denominator(), 4);
  EXPECT_EQ(r.to_string(), "-3/4");
}

TEST(Rational, ArithmeticIsExact) {
  const Rational a(1, 3);
  const Rational b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a - b, Rational(1, 6));
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(a / b, Rational(2));
  EXPECT_EQ(-a, Rational(-1, 3));
  EXPECT_EQ(Rational(2, 3).pow(3), Rational(8, 27));
  EXPECT_EQ(Rational(-2, 5).inverse(), Rational(-5, 2));
}

TEST(Rational, ComparisonsAreExact) {
  // 1/3 rounds to the same double as 6004799503160661/18014398509481984.
  const Rational third(1, 3);
  const Rational near = Rational::from_double(1.0 / 3.0);
  EXPECT_NE(third, near);
  EXPECT_TRUE(near < third);
  EXPECT_EQ(min(third, near), near);
  EXPECT_EQ(max(third, near), third);
}

TEST(Rational, DivisionByZeroThrows) {
  EXPECT_THROW(Rational(1) / Rational(0), PreconditionError);
  EXPECT_THROW(Rational(0).inverse(), PreconditionError);
}

TEST(Rational, ParseAcceptsFractionsIntegersAndDecimals) {
  EXPECT_EQ(Rational::parse("3/9"), Rational(1, 3));
  EXPECT_EQ(Rational::parse("-7"), Rational(-7));
  EXPECT_EQ(Rational::parse("-0.125"), Rational(-1, 8));
  EXPECT_EQ(Rational::parse(" 2/4 "), Rational(1, 2));
  EXPECT_THROW(Rational::parse("1/0"), PreconditionError);
  EXPECT_THROW(Rational::parse("abc"), PreconditionError);
  EXPECT_THROW(Rational::parse(""), PreconditionError);
}

TEST(Rational, FromDoubleIsTheExactBinaryValue) {
  EXPECT_EQ(Rational::from_double(0.75), Rational(3, 4));
  EXPECT_EQ(Rational::from_double(-2.5), Rational(-5, 2));
  EXPECT_EQ(Rational::from_double(0.1).denominator(), mpz_class("36028797018963968"));
}

TEST(Rational, FactorialAndBinomial) {
  EXPECT_EQ(factorial(0), Rational(1));
  EXPECT_EQ(factorial(10), Rational(3628800));
  EXPECT_EQ(binomial(8, 4), Rational(70));
  EXPECT_EQ(binomial(5, 7), Rational(0));
}

}  // namespace
}  // namespace sylvester
