#include <gtest/gtest.h>

#include <random>

#include "matchkast/ring.hpp"

using matchkast::Error;
using matchkast::ErrorCode;
using matchkast::Integer;
using matchkast::RingElement;

namespace {

RingElement P(const char* s) { return RingElement::parse(s); }

RingElement random_poly(std::mt19937_64& rng, int terms) {
  static const char* vars[] = {"x", "y", "z"};
  RingElement r;
  for (int t = 0; t < terms; ++t) {
    RingElement term(static_cast<long>(rng() % 7) - 3);
    for (const char* v : vars) term *= pow(RingElement::variable(v), static_cast<unsigned>(rng() % 3));
    r += term;
  }
  return r;
}

}  // namespace

TEST(Ring, AdditiveInverse) { EXPECT_TRUE((P("x") + P("-x")).is_zero()); }

TEST(Ring, DifferenceOfSquares) { EXPECT_EQ(P("x+1") * P("x-1"), P("x^2-1")); }

TEST(Ring, IntegerProduct) { EXPECT_EQ(RingElement(2) * RingElement(3), RingElement(6)); }

TEST(Ring, CanonicalPrinting) {
  EXPECT_EQ(P("0").to_string(), "0");
  EXPECT_EQ(P("1 - x").to_string(), "-x+1");
  EXPECT_EQ(P("y*x*2*x - 1").to_string(), "2*x^2*y-1");
  EXPECT_EQ(P("-b + a").to_string(), "a-b");
  EXPECT_EQ((P("x") * P("x")).to_string(), "x^2");
}

TEST(Ring, ParsePrintRoundTrip) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    RingElement r = random_poly(rng, 1 + static_cast<int>(rng() % 5));
    EXPECT_EQ(RingElement::parse(r.to_string()), r) << r;
  }
}

TEST(Ring, ParseRejectsGarbage) {
  EXPECT_THROW(P("x+"), Error);
  EXPECT_THROW(P("2**x"), Error);
  EXPECT_THROW(P("(x"), Error);
}

TEST(Ring, ExactDivisionExamples) {
  EXPECT_EQ(exact_div(P("x^2-1"), P("x-1")), P("x+1"));
  EXPECT_TRUE(exact_div(P("0"), P("x+3")).is_zero());
  try {
    exact_div(P("6"), P("4"));
    FAIL() << "6/4 divided";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotDivisible);
  }
  try {
    exact_div(P("x"), P("0"));
    FAIL() << "division by zero accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivisionByZero);
  }
  EXPECT_THROW(exact_div(P("x^2+1"), P("x+1")), Error);
}

TEST(Ring, ExactDivisionInvertsMultiplication) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    RingElement a = random_poly(rng, 1 + static_cast<int>(rng() % 4));
    RingElement b = random_poly(rng, 1 + static_cast<int>(rng() % 4));
    if (b.is_zero()) continue;
    EXPECT_EQ(exact_div(a * b, b), a) << "a=" << a << " b=" << b;
  }
}

TEST(Ring, Evaluate) {
  EXPECT_EQ(P("x+2*y").evaluate({{"x", 1}, {"y", 1}}), 3);
  EXPECT_EQ(P("7").evaluate({}), 7);
  EXPECT_EQ(P("x*y").evaluate({{"x", 0}, {"y", 5}}), 0);
  try {
    P("x+y").evaluate({{"x", 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnboundVariable);
  }
}

TEST(Ring, BigCoefficients) {
  RingElement big = pow(RingElement(Integer("123456789012345678901234567890")), 3);
  EXPECT_EQ(exact_div(big, RingElement(Integer("123456789012345678901234567890"))),
            pow(RingElement(Integer("123456789012345678901234567890")), 2));
}

TEST(Ring, RingAxiomsOnRandomElements) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    RingElement a = random_poly(rng, 3), b = random_poly(rng, 3), c = random_poly(rng, 3);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_TRUE((a - a).is_zero());
  }
}
