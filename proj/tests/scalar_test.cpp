#include "skm/scalar.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <gtest/gtest.h>

#include <random>

using namespace skm;
namespace mp = boost::multiprecision;

namespace {

using Q = mp::cpp_rational;
using F = mp::cpp_bin_float_100;

// x + y sqrt(D) as the 2x2 rational matrix [[x, yD], [y, x]].
struct M2 {
  Q a, b, c, d;
};
M2 mat(const Q& x, const Q& y, long D) { return {x, y * D, y, x}; }
M2 mul(const M2& p, const M2& q) {
  return {p.a * q.a + p.b * q.c, p.a * q.b + p.b * q.d, p.c * q.a + p.d * q.c, p.c * q.b + p.d * q.d};
}
M2 add(const M2& p, const M2& q) { return {p.a + q.a, p.b + q.b, p.c + q.c, p.d + q.d}; }
M2 inv(const M2& p) {
  Q det = p.a * p.d - p.b * p.c;
  return {p.d / det, -p.b / det, -p.c / det, p.a / det};
}

Q to_q(const Rational& r) { return Q(r.num(), r.den()); }

// Reads x, y back off the Scalar and compares with the matrix first column.
void expect_matches(const Scalar& s, const M2& m, long D) {
  Q x, y;
  if (s.is_rational()) {
    x = to_q(s.rational());
    y = 0;
  } else {
    ASSERT_TRUE(s.is_quad());
    ASSERT_EQ(s.quad_value().D, BigInt(D));
    x = to_q(s.quad_value().x);
    y = to_q(s.quad_value().y);
  }
  EXPECT_EQ(x, m.a);
  EXPECT_EQ(y, m.c);
  EXPECT_EQ(m.a, m.d);
  EXPECT_EQ(m.b, m.c * D);
}

F approx(const Scalar& s) {
  if (s.is_rational()) return F(s.rational().num()) / F(s.rational().den());
  const Quad& q = s.quad_value();
  return F(q.x.num()) / F(q.x.den()) + F(q.y.num()) / F(q.y.den()) * mp::sqrt(F(q.D));
}

}  // namespace

TEST(Rational, ReducesAndOrders) {
  EXPECT_EQ(Rational(6, 4), Rational(3, 2));
  EXPECT_EQ(Rational(3, -6), Rational(-1, 2));
  EXPECT_LT(Rational(-3, 2), Rational(-4, 3));
  EXPECT_EQ(Rational(-7, 2).floor(), BigInt(-4));
  EXPECT_THROW(Rational(1) / Rational(0), ScalarError);
}

TEST(Scalar, ParsesAndPrints) {
  EXPECT_EQ("-3/2"_s, Scalar(Rational(-3, 2)));
  EXPECT_EQ("(-3+sqrt(21))/2"_s.str(), "(-3+sqrt(21))/2");
  EXPECT_EQ("(sqrt(21)-3)/2"_s, "(-3+sqrt(21))/2"_s);
  EXPECT_EQ("sqrt(8)"_s.quad_value().D, BigInt(8));
  EXPECT_THROW(parse_scalar("sqrt(9)"), ScalarError);
  EXPECT_EQ(parse_scalar("(p+1)/(p*p-1)").str(), "1/(p-1)");
  EXPECT_THROW(parse_scalar("1/0"), ScalarError);
  EXPECT_THROW(parse_scalar("sqrt(2)*p"), ScalarError);
}

TEST(Scalar, QuadRootOfQuadratic) {
  Scalar a = "(-9+sqrt(21))/10"_s;
  EXPECT_TRUE((Scalar(5) * a * a + Scalar(9) * a + Scalar(3)).is_zero());
  EXPECT_EQ(a.str(), "(-9+sqrt(21))/10");
}

TEST(Scalar, RoundTripThroughText) {
  for (const char* t : {"0", "-5", "7/3", "sqrt(5)", "(1-sqrt(5))/2", "p", "-p-1", "(2*p-1)/(p+3)", "1/p"}) {
    Scalar s = parse_scalar(t);
    EXPECT_EQ(parse_scalar(s.str()), s) << t;
  }
}

TEST(Scalar, QuadFieldAgainstMatrixModel) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 6);
  for (long D : {2L, 5L, 21L, 77L}) {
    for (int it = 0; it < 200; ++it) {
      Q x1(num(rng), den(rng)), y1(num(rng), den(rng)), x2(num(rng), den(rng)), y2(num(rng), den(rng));
      Scalar s1 = Scalar::quad(D, Rational(numerator(x1), denominator(x1)), Rational(numerator(y1), denominator(y1)));
      Scalar s2 = Scalar::quad(D, Rational(numerator(x2), denominator(x2)), Rational(numerator(y2), denominator(y2)));
      M2 m1 = mat(x1, y1, D), m2 = mat(x2, y2, D);
      expect_matches(s1 + s2, add(m1, m2), D);
      expect_matches(s1 * s2, mul(m1, m2), D);
      if (!s2.is_zero()) expect_matches(s1 / s2, mul(m1, inv(m2)), D);
    }
  }
}

TEST(Scalar, QuadSignAgainstHighPrecision) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> num(-40, 40), den(1, 9);
  for (int it = 0; it < 2000; ++it) {
    long D = std::vector<long>{2, 3, 21, 5, 117}[it % 5];
    Scalar s = Scalar::quad(D, Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
    F v = approx(s);
    int expect = v > 0 ? 1 : (v < 0 ? -1 : 0);
    EXPECT_EQ(s.sign(), expect) << s.str();
  }
}

TEST(Scalar, MixedRadicandsRejected) {
  EXPECT_THROW(Scalar::sqrt(2) + Scalar::sqrt(3), ScalarError);
  EXPECT_THROW(Scalar::sqrt(2) * Scalar::ratfunc(Poly::x(), Poly(Rational(1))), ScalarError);
}

TEST(Scalar, RatFuncAgainstEvaluation) {
  Scalar p = parse_scalar("p");
  std::vector<Scalar> xs{p, p + Scalar(1), (p - Scalar(2)).inverse(), parse_scalar("(3*p+1)/(p*p+1)"), Scalar(Rational(5, 3))};
  for (const Scalar& a : xs)
    for (const Scalar& b : xs)
      for (long v : {-7L, 3L, 11L}) {
        Rational r(v, 2);
        auto val = [&](const Scalar& s) { return s.substitute(r); };
        EXPECT_EQ(val(a + b), val(a) + val(b));
        EXPECT_EQ(val(a * b), val(a) * val(b));
        if (!val(b).is_zero()) {
          EXPECT_EQ(val(a / b), val(a) / val(b));
        }
      }
}

TEST(Scalar, RatFuncCancelsToConstant) {
  Scalar p = parse_scalar("p");
  EXPECT_EQ((p + Scalar(1)) / (p + Scalar(1)), Scalar(1));
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_TRUE((p * p / p - p).is_rational());
}

TEST(Scalar, IntegerPredicates) {
  EXPECT_TRUE(Scalar(-4).is_in_even_nonpositive_integers());
  EXPECT_FALSE(Scalar(-3).is_in_even_nonpositive_integers());
  EXPECT_TRUE(Scalar(0).is_nonpositive_integer());
  EXPECT_FALSE(Scalar(Rational(1, 2)).is_nonnegative_integer());
  EXPECT_TRUE(Scalar(6).in_scaled_nonnegative_integers(1));
  EXPECT_FALSE(Scalar(3).in_scaled_nonnegative_integers(1));
  EXPECT_FALSE(Scalar::sqrt(2).is_integer());
}

TEST(Scalar, ShiftMovesParameter) {
  Scalar f = parse_scalar("(p+1)/(p-2)");
  Scalar g = f.shifted(Rational(3));
  for (long v : {-5L, 0L, 4L, 9L}) EXPECT_EQ(g.substitute(Rational(v)), f.substitute(Rational(v + 3)));
}
