#include <gtest/gtest.h>

#include <unordered_set>

#include "thurston/rational.hpp"

using thurston::BigInt;
using thurston::Error;
using thurston::ErrorCode;
using thurston::Rational;

TEST(Rational, CanonicalForm) {
  EXPECT_EQ(Rational(6, -4).str(), "-3/2");
  EXPECT_EQ(Rational(0, 7).str(), "0");
  EXPECT_EQ(Rational(0, 7).denominator(), 1);
  EXPECT_EQ(Rational(10, 5).str(), "2");
  EXPECT_TRUE(Rational(10, 5).is_integer());
}

TEST(Rational, ParseAcceptsCanonicalAndNonCanonicalText) {
  EXPECT_EQ(Rational::parse("3"), Rational(3));
  EXPECT_EQ(Rational::parse("-3/4"), Rational(-3, 4));
  EXPECT_EQ(Rational::parse("+6/8"), Rational(3, 4));
  EXPECT_EQ(Rational::parse("12345678901234567890123/1").str(), "12345678901234567890123");
}

TEST(Rational, ParseRejectsMalformedText) {
  for (const char* bad : {"", "1/0", "1/", "/2", "a", "1.5", " 1", "1/-2", "--1", "-"}) {
    try {
      (void)Rational::parse(bad);
      ADD_FAILURE() << "accepted \"" << bad << "\"";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError) << bad;
    }
  }
}

TEST(Rational, ZeroDenominatorMessageNamesTheProblem) {
  try {
    (void)Rational::parse("1/0");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("zero denominator"), std::string::npos);
  }
}

TEST(Rational, Arithmetic) {
  const Rational a(1, 3), b(-1, 6);
  EXPECT_EQ(a + b, Rational(1, 6));
  EXPECT_EQ(a - b, Rational(1, 2));
  EXPECT_EQ(a * b, Rational(-1, 18));
  EXPECT_EQ(a / b, Rational(-2));
  EXPECT_EQ(-a, Rational(-1, 3));
  EXPECT_EQ(thurston::abs(b), Rational(1, 6));
  EXPECT_LT(b, a);
  EXPECT_THROW((void)(a / Rational(0)), Error);
}

TEST(Rational, BigValuesStayExact) {
  Rational x(1);
  for (int i = 0; i < 200; ++i) x *= Rational(3, 2);
  for (int i = 0; i < 200; ++i) x /= Rational(3, 2);
  EXPECT_EQ(x, Rational(1));
}

TEST(Rational, HashAgreesWithEquality) {
  std::unordered_set<Rational> s{Rational(1, 2), Rational(2, 4), Rational(-1, 2)};
  EXPECT_EQ(s.size(), 2u);
}

TEST(Rational, GcdLcmAndNarrowing) {
  EXPECT_EQ(thurston::gcd(BigInt(12), BigInt(-18)), 6);
  EXPECT_EQ(thurston::lcm(BigInt(4), BigInt(6)), 12);
  EXPECT_EQ(thurston::to_long(BigInt(-42)), -42);
  EXPECT_THROW((void)thurston::to_long(BigInt("100000000000000000000000")), Error);
}
