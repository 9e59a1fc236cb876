#include "aimsolve/polynomial.hpp"

#include <random>

#include <gtest/gtest.h>

using namespace aimsolve;

namespace {

Polynomial var(const std::string& n) { return Polynomial::variable(n); }
Polynomial num(long v) { return Polynomial(Rational(v)); }

// Random polynomial in the given variables with small integer coefficients.
Polynomial random_poly(std::mt19937_64& rng, const std::vector<std::string>& vars, int max_deg,
                       int max_terms) {
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<int> count(1, max_terms);
  Polynomial p;
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    Polynomial t = num(coeff(rng));
    for (const auto& v : vars) t *= Polynomial::variable(v, deg(rng));
    p += t;
  }
  return p;
}

}  // namespace

TEST(Polynomial, ArithmeticBasics) {
  Polynomial x = var("x"), a = var("a");
  Polynomial p = (x + num(1)) * (x - num(1));
  EXPECT_EQ(p, x * x - num(1));
  EXPECT_EQ(p.to_string(), "x^2 - 1");
  EXPECT_EQ((a * x + x * a).to_string(), "2*x*a");
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ(p.degree("x"), 2u);
  EXPECT_EQ(p.derivative("x"), num(2) * x);
}

TEST(Polynomial, GradedLexOrderPutsXFirst) {
  Polynomial x = var("x"), a = var("a"), b = var("b");
  Polynomial p = b * b + a * x + x * x + a;
  EXPECT_EQ(p.to_string(), "x^2 + x*a + b^2 + a");
}

TEST(Polynomial, ExactDivision) {
  Polynomial x = var("x"), c = var("c");
  Polynomial f = (x + c) * (x * x - c + num(3));
  auto q = exact_divide(f, x + c);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q, x * x - c + num(3));
  EXPECT_FALSE(exact_divide(f, x + num(7)).has_value());
}

TEST(Polynomial, GcdKnownCases) {
  Polynomial x = var("x"), a = var("a"), b = var("b");
  EXPECT_EQ(gcd(x * x - num(1), x - num(1)), x - num(1));
  EXPECT_EQ(gcd(num(6) * x * x, num(4) * x), x);
  Polynomial g = a * x + b;
  Polynomial p = g * (x * x + a);
  Polynomial q = g * (x - b) * num(3);
  EXPECT_EQ(gcd(p, q), g.primitive_part());
  EXPECT_EQ(gcd(x + a, x + b), num(1));
}

TEST(Polynomial, GcdDivisibleByCommonFactor) {
  std::mt19937_64 rng(12345);
  std::vector<std::string> vars{"x", "a", "b"};
  for (int i = 0; i < 100; ++i) {
    Polynomial g = random_poly(rng, vars, 2, 3);
    Polynomial p = random_poly(rng, vars, 2, 3);
    Polynomial q = random_poly(rng, vars, 2, 3);
    if (g.is_zero() || p.is_zero() || q.is_zero()) continue;
    Polynomial h = gcd(g * p, g * q);
    EXPECT_TRUE(exact_divide(h, g).has_value()) << g.to_string() << " | " << h.to_string();
    EXPECT_TRUE(exact_divide(g * p, h).has_value());
    EXPECT_TRUE(exact_divide(g * q, h).has_value());
  }
}

TEST(Polynomial, RingAlgebraIdentities) {
  std::mt19937_64 rng(777);
  for (int i = 0; i < 100; ++i) {
    Polynomial p = random_poly(rng, {"x", "a"}, 3, 4);
    Polynomial q = random_poly(rng, {"x", "m"}, 3, 4);
    Polynomial r = random_poly(rng, {"c", "x"}, 2, 3);
    EXPECT_EQ(p + q, q + p);
    EXPECT_EQ(p * q, q * p);
    EXPECT_EQ((p + q) + r, p + (q + r));
    EXPECT_EQ((p * q) * r, p * (q * r));
    EXPECT_EQ(p * (q + r), p * q + p * r);
  }
}

TEST(Polynomial, SubstituteAndCoefficients) {
  Polynomial x = var("x"), a = var("a");
  Polynomial p = x * x * a + x + num(2);
  auto cs = p.coefficients("x");
  ASSERT_EQ(cs.size(), 3u);
  EXPECT_EQ(cs[2], a);
  EXPECT_EQ(Polynomial::from_coefficients("x", cs), p);
  EXPECT_EQ(p.substitute("a", num(3)), num(3) * x * x + x + num(2));
  EXPECT_EQ(p.substitute("x", x + num(1)),
            a * x * x + num(2) * a * x + a + x + num(3));
}
