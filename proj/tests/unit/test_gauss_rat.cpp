#include <gtest/gtest.h>

#include "pz/gauss_rat.hpp"

using namespace pz;

TEST(Rational, ParsesIntegersAndFractions) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-1/3"), Rational(-1, 3));
  EXPECT_EQ(parse_rational(" 2/5 "), Rational(2, 5));
  EXPECT_EQ(parse_rational("123456789012345678901234567890/7"),
            Rational(Integer("123456789012345678901234567890"), Integer(7)));
}

TEST(Rational, RejectsInexactAndMalformedText) {
  for (const char* bad : {"0.5", "1e3", "", "/", "1/", "/2", "1/0", "1/-2", "abc", "1/2/3", "--1"}) {
    try {
      parse_rational(bad);
      FAIL() << "accepted \"" << bad << "\"";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::parse) << bad;
    }
  }
}

TEST(Rational, FloorAndFraction) {
  EXPECT_EQ(floor_of(Rational(7, 2)), 3);
  EXPECT_EQ(floor_of(Rational(-7, 2)), -4);
  EXPECT_EQ(floor_of(Rational(-4)), -4);
  EXPECT_EQ(frac_of(Rational(-1, 3)), Rational(2, 3));
  EXPECT_EQ(frac_of(Rational(5)), Rational(0));
  EXPECT_EQ(to_string(Rational(-6, 4)), "-3/2");
  EXPECT_EQ(to_string(Rational(4, 2)), "2");
}

TEST(GaussRat, FieldArithmeticIsExact) {
  GaussRat a(Rational(1, 2), Rational(-1, 3)), b(Rational(2), Rational(5, 7));
  EXPECT_EQ((a * b) / b, a);
  EXPECT_EQ((a + b) - b, a);
  EXPECT_EQ(a * a.conj(), GaussRat(a.norm()));
  EXPECT_EQ(GaussRat::i() * GaussRat::i(), GaussRat(-1));
  EXPECT_EQ(GaussRat(1) / GaussRat::i(), -GaussRat::i());
  EXPECT_TRUE((GaussRat(2) / GaussRat(4)).is_real());
  EXPECT_FALSE(GaussRat::i().is_real());
}

TEST(GaussRat, DivisionByZeroThrows) {
  try {
    (void)(GaussRat(1) / GaussRat());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::domain);
  }
}

TEST(GaussRat, PrintsCompactly) {
  EXPECT_EQ(GaussRat(Rational(1, 2), Rational(-3)).str(), "1/2-3i");
  EXPECT_EQ(GaussRat::i().str(), "1i");
  EXPECT_EQ(GaussRat(4).str(), "4");
  EXPECT_EQ(real_det(GaussRat(1), GaussRat::i()), 1);
  EXPECT_EQ(sign_im(GaussRat(Rational(0), Rational(-2))), -1);
}
