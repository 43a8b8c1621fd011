#include <gtest/gtest.h>

#include "plf/rational.hpp"

using plf::Rational;

TEST(Rational, NormalizesOnConstruction) {
  Rational r(6, -4);
  EXPECT_EQ(r.str(), "-3/2");
  EXPECT_EQ(r.numerator(), -3);
  EXPECT_EQ(r.denominator(), 2);
  EXPECT_EQ(Rational(4, 2).str(), "2");
  EXPECT_TRUE(Rational(4, 2).is_integer());
}

TEST(Rational, Parse) {
  EXPECT_EQ(Rational::parse("10"), Rational(10));
  EXPECT_EQ(Rational::parse("-15"), Rational(-15));
  EXPECT_EQ(Rational::parse("3/6"), Rational(1, 2));
  EXPECT_EQ(Rational::parse("+7/3"), Rational(7, 3));
  EXPECT_THROW(Rational::parse("1/0"), plf::InputError);
  EXPECT_THROW(Rational::parse("x"), plf::InputError);
  EXPECT_THROW(Rational::parse(""), plf::InputError);
  EXPECT_THROW(Rational::parse("1/"), plf::InputError);
}

TEST(Rational, ZeroDenominatorAndDivision) {
  EXPECT_THROW(Rational(1, 0), plf::InputError);
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}

TEST(Rational, ArithmeticIsExact) {
  Rational sum(0);
  for (int n = 1; n <= 20; ++n)
    sum += Rational(1, n * (n + 1));
  EXPECT_EQ(sum, Rational(20, 21));
  EXPECT_EQ(Rational(2, 3) * Rational(-9, 4), Rational(-3, 2));
  EXPECT_EQ(-Rational(1, 3) - Rational(2, 3), Rational(-1));
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_EQ(Rational(-5, 7).sign(), -1);
  EXPECT_TRUE(Rational(0, 5).is_zero());
}

TEST(Rational, BeyondMachineWords) {
  Rational big(1);
  for (int i = 0; i < 40; ++i)
    big *= Rational(1000003);
  EXPECT_EQ(big / big, Rational(1));
  EXPECT_GT(big.str().size(), 200u);
}
