#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "aimsolve/verify.hpp"

using namespace aimsolve;

namespace {

const std::vector<std::string> kParams{"a", "b", "c"};

NormalForm nf(const std::string& s) { return normalize(parse_expr(s, kParams)); }

RiccatiEquation eq(const std::string& P, const std::string& Q, const std::string& R) {
  return RiccatiEquation::parse(P, Q, R, kParams);
}

const Bindings kNone;

NormalForm random_poly(std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> c(-4, 4), d(0, max_deg);
  Polynomial x = Polynomial::variable(kX);
  Polynomial p;
  for (int k = 0, deg = d(rng); k <= deg; ++k) p += Polynomial(Rational(c(rng), 4)) * x.pow(k);
  return NormalForm(p);
}

}  // namespace

TEST(Verify, SymbolicResidual) {
  RiccatiEquation e3 = eq("1", "exp((3/4)*x^4+x)", "-27*x^2*exp(-(3/4)*x^4-x)");
  EXPECT_TRUE(symbolic_residual(e3, nf("(9*x^8-30*x^4+5)/(x*exp((3/4)*x^4+x)*(x^8-6*x^4+5))")).is_zero());
  EXPECT_TRUE(symbolic_residual(eq("-x*x^2", "-1", "x^2"), nf("-1/x")).is_zero());
  EXPECT_EQ(symbolic_residual(eq("0", "1", "1"), nf("0")), nf("-1"));
}

TEST(Verify, NumericResidualGrid) {
  std::vector<double> grid = equispaced(-0.45, 0.45, 41);
  RiccatiEquation t1 = RiccatiEquation::simple1(nf("2*x"), nf("-4"));
  EXPECT_LT(numeric_residual_grid(t1, nf("-4*x/(1-2*x^2)"), grid, kNone), 1e-10);
  RiccatiEquation t2 = RiccatiEquation::simple2(nf("2*x"), nf("-4"));
  EXPECT_LT(numeric_residual_grid(t2, nf("4*x/(1-2*x^2)"), grid, kNone), 1e-10);
  EXPECT_GT(numeric_residual_grid(t1, nf("x"), grid, kNone), 0.1);
}

TEST(Verify, PoleOnGrid) {
  RiccatiEquation e = eq("0", "1", "0");
  EXPECT_THROW(numeric_residual_grid(e, nf("1/x"), {-0.5, 0.0, 0.5}, kNone), PoleError);
  EXPECT_EQ(pole_free(e, nf("1/x"), {-0.5, 0.0, 0.5}, kNone), (std::vector<double>{-0.5, 0.5}));
  EXPECT_THROW(numeric_residual_grid(eq("a", "1", "0"), nf("0"), {1.0}, kNone), UnboundParameterError);
}

TEST(Verify, RkCrosscheck) {
  RiccatiEquation t1 = RiccatiEquation::simple1(nf("2*x"), nf("-4"));
  EXPECT_LT(rk_crosscheck(t1, nf("-4*x/(1-2*x^2)"), 0.0, 0.4, 1000, kNone), 1e-9);
  EXPECT_EQ(rk_crosscheck(eq("0", "1", "0"), nf("0"), 0.0, 1.0, 100, kNone), 0.0);
  RiccatiEquation e3 = eq("1", "exp((3/4)*x^4+x)", "-27*x^2*exp(-(3/4)*x^4-x)");
  NormalForm y3 = nf("(9*x^8-30*x^4+5)/(x*exp((3/4)*x^4+x)*(x^8-6*x^4+5))");
  EXPECT_LT(rk_crosscheck(e3, y3, 1.55, 2.0, 1000, kNone), 1e-7);
}

TEST(Verify, RkEscapes) {
  // y' = y² from y(0) = 1 blows up at x = 1; the constant "solution" stays finite.
  for (int steps : {10, 100, 1000})
    EXPECT_THROW(rk_crosscheck(eq("0", "-1", "0"), nf("1"), 0.0, 2.0, steps, kNone), IntegrationEscapedError);
}

TEST(Verify, RandomBindings) {
  std::mt19937_64 rng(3);
  std::vector<NormalForm> exprs{nf("1/((a-b)*x)"), nf("x/(a-2*c)")};
  for (int i = 0; i < 300; ++i) {
    ExactBindings b = random_bindings({"a", "b", "c"}, exprs, rng);
    for (const auto& [k, v] : b) {
      EXPECT_GE(v, 1);
      EXPECT_LE(v, 5);
      EXPECT_LE(v.get_den(), 7);
    }
    EXPECT_NE(b["a"], b["b"]);
    EXPECT_NE(b["a"], 2 * b["c"]);
  }
}

TEST(Verify, Report) {
  RiccatiEquation t1 = RiccatiEquation::simple1(nf("2*x"), nf("-4"));
  VerifyOptions o;
  o.lo = 0.1;
  o.hi = 0.6;
  VerificationReport r = verify_solution(t1, nf("-4*x/(1-2*x^2)"), o);
  EXPECT_TRUE(r.symbolic_residual_zero);
  EXPECT_EQ(r.grid.size(), 41u);
  EXPECT_LT(r.max_numeric_residual, 1e-8);
  ASSERT_TRUE(r.rk_max_deviation.has_value()) << r.rk_note;
  EXPECT_LT(*r.rk_max_deviation, 1e-6);
  EXPECT_TRUE(r.rk_note.empty());

  o.hi = 0.9;
  VerificationReport across = verify_solution(t1, nf("-4*x/(1-2*x^2)"), o);
  EXPECT_LT(across.max_numeric_residual, 1e-8);
  EXPECT_FALSE(across.rk_note.empty());

  RiccatiEquation p = eq("a/x", "b", "a/(b*x^2)");
  VerificationReport rp = verify_solution(p, nf("1/(b*x)"), o);
  EXPECT_TRUE(rp.symbolic_residual_zero);
  EXPECT_EQ(rp.bindings.size(), 2u);
  EXPECT_LT(rp.max_numeric_residual, 1e-8);
  ASSERT_TRUE(rp.rk_max_deviation.has_value());
  EXPECT_LT(*rp.rk_max_deviation, 1e-6);
}

TEST(VerifyProperties, RkOrderFour) {
  std::mt19937_64 rng(41);
  const int coarse = 16;
  int checked = 0;
  for (int i = 0; checked < 120; ++i) {
    NormalForm yp = random_poly(rng, 2), P = random_poly(rng, 1), Q = random_poly(rng, 1);
    if (Q.is_zero()) Q = NormalForm(Rational(1));
    RiccatiEquation e = RiccatiEquation::make(P, Q, yp.derivative() + P * yp + Q * yp * yp);
    double d1 = rk_crosscheck(e, yp, 0.0, 1.0, coarse, kNone);
    double d2 = rk_crosscheck(e, yp, 0.0, 1.0, 2 * coarse, kNone);
    if (d1 < 1e-13) {
      EXPECT_LT(d2, 1e-13);
      continue;
    }
    ++checked;
    EXPECT_LE(d2 / d1, 1.0 / 12.0) << "instance " << i << " d1=" << d1 << " d2=" << d2;
  }
}
