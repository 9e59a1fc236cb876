#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "aimsolve/error.hpp"
#include "aimsolve/hyper.hpp"

using namespace aimsolve;

namespace {

Expr num(long p, long q = 1) { return Expr::number(Rational(p, q)); }

HyperSpec spec(std::vector<Expr> a, std::vector<Expr> b, Expr z) { return {std::move(a), std::move(b), std::move(z)}; }

NormalForm nf(const std::string& s) { return normalize(parse_expr(s, {"a"})); }

}  // namespace

TEST(Pochhammer, Values) {
  EXPECT_EQ(pochhammer(Rational(7, 3), 0), 1);
  EXPECT_EQ(pochhammer(Rational(-2), 1), -2);
  EXPECT_EQ(pochhammer(Rational(-2), 3), 0);
  EXPECT_EQ(pochhammer(Rational(1, 2), 2), Rational(3, 4));
  EXPECT_EQ(pochhammer(Rational(-3), 2), 6);
}

TEST(Pochhammer, Symbolic) {
  Expr p = pochhammer(Expr::symbol("a"), 3);
  EXPECT_EQ(normalize(p), nf("a*(a+1)*(a+2)"));
  EXPECT_EQ(normalize(pochhammer(Expr::symbol("a"), 0)), nf("1"));
  EXPECT_EQ(normalize(pochhammer(num(1, 2), 2)), nf("3/4"));
}

TEST(Hyper, ExpandPolynomial) {
  Expr z = Expr::symbol("x");
  EXPECT_EQ(normalize(expand_polynomial(spec({num(-1)}, {num(1, 2)}, z))), nf("1-2*x"));
  EXPECT_EQ(normalize(expand_polynomial(spec({num(0)}, {num(3, 2)}, z))), nf("1"));
  EXPECT_EQ(normalize(expand_polynomial(spec({num(-1), num(2)}, {num(1)}, z))), nf("1-2*x"));
  Expr x2 = Expr::power(z, 2);
  EXPECT_EQ(normalize(expand_polynomial(spec({num(-2), num(3)}, {}, x2))), nf("1-6*x^2+12*x^4"));
}

TEST(Hyper, ExpandSymbolicNumerator) {
  Expr z = Expr::symbol("x");
  EXPECT_EQ(normalize(expand_polynomial(spec({num(-1), Expr::symbol("a")}, {num(1)}, z))), nf("1-a*x"));
}

TEST(Hyper, ExpandErrors) {
  Expr z = Expr::symbol("x");
  EXPECT_THROW(expand_polynomial(spec({num(1, 2)}, {num(1)}, z)), NoTruncationError);
  EXPECT_THROW(expand_polynomial(spec({num(-1)}, {Expr::symbol("a")}, z)), NoTruncationError);
  EXPECT_THROW(expand_polynomial(spec({num(-1)}, {num(-3)}, z)), NoTruncationError);
}

TEST(Hyper, Evaluate) {
  Expr z = Expr::symbol("x");
  EXPECT_DOUBLE_EQ(evaluate(spec({num(-1)}, {num(1, 2)}, z), 0.25, {}), 0.5);
  EXPECT_DOUBLE_EQ(evaluate(spec({num(3, 2), num(5)}, {num(7)}, z), 0.0, {}), 1.0);
  // 1 + (-2)(3)(-1/2) + (-2)(-1)(3)(4)(1/4)/2
  EXPECT_DOUBLE_EQ(evaluate(spec({num(-2), num(3)}, {}, z), -0.5, {}), 1.0 + 3.0 + 3.0);
  EXPECT_NEAR(evaluate(spec({}, {}, z), 1.0, {}), std::exp(1.0), 1e-14);
  EXPECT_NEAR(evaluate(spec({num(1)}, {num(1)}, z), 0.5, {}), std::exp(0.5), 1e-14);
  EXPECT_THROW(evaluate(spec({num(1), num(1)}, {}, z), 0.5, {}), NonConvergenceError);
}

TEST(Hyper, Markers) {
  std::string s = expand_hyper_markers("-4*x*F[-1;1/2;x^2]", {"n"}, {});
  EXPECT_EQ(normalize(parse_expr(s, {})), nf("-4*x*(1-2*x^2)"));
  std::string t = expand_hyper_markers("F[-n,1;1/2;x]/F[-n;3/2;x]", {"n"}, {{"n", Rational(1)}});
  EXPECT_EQ(normalize(parse_expr(t, {})), nf("(1-2*x)/(1-2/3*x)"));
}

TEST(HyperProperties, PochhammerRecurrence) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num_d(-30, 30), den_d(1, 9), k_d(0, 12);
  for (int i = 0; i < 200; ++i) {
    Rational a(num_d(rng), den_d(rng));
    a.canonicalize();
    unsigned k = static_cast<unsigned>(k_d(rng));
    EXPECT_EQ(pochhammer(a, k + 1), pochhammer(a, k) * (a + static_cast<long>(k)));
  }
}

TEST(HyperProperties, ExpansionMatchesEvaluation) {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> n_d(0, 6), num_d(-9, 9), den_d(1, 5), shape(0, 1);
  std::uniform_real_distribution<double> z_d(-2.0, 2.0);
  int specs = 0;
  while (specs < 120) {
    HyperSpec s;
    s.argument = Expr::symbol("x");
    s.numerator.push_back(num(-n_d(rng)));
    if (shape(rng)) {
      Rational a(num_d(rng), den_d(rng));
      a.canonicalize();
      s.numerator.push_back(Expr::number(a));
    }
    Rational b(num_d(rng), den_d(rng));
    b.canonicalize();
    if (b.get_den() == 1 && b <= 0) continue;
    s.denominator.push_back(Expr::number(b));
    ++specs;
    NormalForm poly = normalize(expand_polynomial(s));
    for (int j = 0; j < 50; ++j) {
      double z = z_d(rng);
      double direct = evaluate(s, z, {});
      double expanded = poly.evaluate(z, std::map<std::string, double>{});
      EXPECT_NEAR(expanded, direct, 1e-12 * std::max(1.0, std::fabs(direct)));
    }
  }
}
