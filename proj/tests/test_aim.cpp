#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "aimsolve/aim.hpp"

using namespace aimsolve;

namespace {

const std::vector<std::string> kParams{"a", "b", "c", "m", "n"};

NormalForm nf(const std::string& s) { return normalize(parse_expr(s, kParams)); }

AimTrace trace(const std::string& l0, const std::string& s0, int n_max) {
  AimOptions o;
  o.n_max = n_max;
  return aim_iterate(nf(l0), nf(s0), o);
}

NormalForm residual1(const NormalForm& y, const NormalForm& l0, const NormalForm& s0) {
  return y.derivative() - l0 * y + y * y - s0;
}

NormalForm residual2(const NormalForm& y, const NormalForm& l0, const NormalForm& s0) {
  return y.derivative() - l0 * y - y * y + s0;
}

NormalForm random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-3, 3), deg(0, 2);
  Polynomial x = Polynomial::variable(kX);
  Polynomial num, den(Rational(1));
  for (int k = 0, d = deg(rng); k <= d; ++k) num += Polynomial(Rational(c(rng))) * x.pow(k);
  if (deg(rng) == 2) den = x * x + Polynomial(Rational(1 + std::abs(c(rng))));
  return NormalForm::make(num, den);
}

bool has_factor(const std::vector<Polynomial>& cs, const NormalForm& f) {
  for (const auto& c : cs)
    if (NormalForm(c) == f || NormalForm(c) == -f) return true;
  return false;
}

}  // namespace

TEST(Aim, FirstTermsByHand) {
  AimTrace t = trace("2*x", "-4", 2);
  EXPECT_EQ(t.lambda_at(-1), nf("1"));
  EXPECT_EQ(t.s_at(-1), nf("0"));
  EXPECT_EQ(t.lambda_at(0), nf("2*x"));
  EXPECT_EQ(t.s_at(0), nf("-4"));
  EXPECT_EQ(t.lambda_at(1), nf("4*x^2 - 2"));
  EXPECT_EQ(t.s_at(1), nf("-8*x"));
  EXPECT_FALSE(t.delta_at(1).is_zero());
  EXPECT_TRUE(t.delta_at(2).is_zero());
}

TEST(Aim, Example1TerminatesAtTwo) {
  const std::string den = "(a*x^3+b*x^2+c*x)";
  NormalForm l0 = nf("-((m-a)*x^2+(2*c*m-1)*x-c)/" + den);
  NormalForm s0 = nf("-(-2*m*x+1)/" + den);
  AimOptions o;
  o.n_max = 4;
  AimTrace t = aim_iterate(l0, s0, o);
  TerminationResult r = find_termination(t);
  EXPECT_EQ(r.status, TerminationStatus::Terminates);
  EXPECT_EQ(r.n, 2);
  EXPECT_FALSE(t.delta_at(1).is_zero());
  Solution sol = solve_theorem1(l0, s0);
  EXPECT_EQ(sol.n, 2);
  EXPECT_TRUE(sol.residual_zero);
  EXPECT_TRUE(residual1(sol.y, l0, s0).is_zero());
  NormalForm quotient = nf("(2*(m+a)*x+4*c*m+2*b-1)/((m+a)*x^2+(4*c*m+2*b-1)*(x+c))");
  EXPECT_TRUE(sol.y == quotient || sol.y == -quotient);
  EXPECT_EQ(sol.y, quotient);
}

TEST(Aim, Example2Branches) {
  NormalForm l0 = nf("3*a*x+1/x");
  NormalForm s0 = nf("a^2");
  AimOptions o;
  o.n_max = 6;
  AimTrace t = aim_iterate(l0, s0, o);
  auto branches = conditional_branches(t);
  std::vector<Polynomial> found;
  for (const auto& b : branches) found.push_back(b.constraint);
  EXPECT_TRUE(has_factor(found, nf("a+6")));
  EXPECT_TRUE(has_factor(found, nf("a+12")));
  EXPECT_TRUE(has_factor(found, nf("a+18")));
  const std::vector<std::pair<int, std::string>> listed{
      {2, "-2/x"},
      {4, "-2*(18*x^2+1)/(x*(1+9*x^2))"},
      {6, "-2*(729*x^4+108*x^2+2)/(x*(243*x^4+54*x^2+2))"},
  };
  for (const auto& [idx, text] : listed) {
    SolveOptions so;
    so.n_max = 6;
    so.branch = idx;
    Solution sol = solve_theorem2(l0, s0, so);
    ASSERT_EQ(sol.eliminations.size(), 1u);
    EXPECT_EQ(sol.eliminations[0].variable, "a");
    NormalForm y = nf(text);
    NormalForm l0b = apply_eliminations(l0, sol.eliminations);
    NormalForm s0b = apply_eliminations(s0, sol.eliminations);
    EXPECT_TRUE(residual2(y, l0b, s0b).is_zero()) << text;
    EXPECT_EQ(sol.y, y) << text;
  }
  EXPECT_EQ(apply_eliminations(nf("a"), solve_theorem2(l0, s0, {6, "", 2}).eliminations), nf("-6"));
}

TEST(Aim, Example3TerminatesAtNine) {
  AimTrace t = trace("3*x^3", "-27*x^2", 9);
  for (int k = 1; k < 9; ++k) EXPECT_FALSE(t.delta_at(k).is_zero()) << k;
  EXPECT_TRUE(t.delta_at(9).is_zero());
}

TEST(Aim, Example4ConditionalFactors) {
  AimTrace t = trace("(n+b)/x", "-a*c/x^2", 3);
  TerminationResult r = find_termination(t);
  EXPECT_EQ(r.status, TerminationStatus::Conditional);
  EXPECT_EQ(r.n, 1);
  ASSERT_EQ(r.constraints.size(), 1u);
  EXPECT_TRUE(has_factor(r.constraints, nf("a*c-(n+b)")));
  auto branches = conditional_branches(t);
  for (int m = 1; m <= 3; ++m) {
    std::vector<Polynomial> at;
    for (const auto& b : branches)
      if (b.n == m) at.push_back(b.constraint);
    ASSERT_EQ(at.size(), 1u) << m;
    NormalForm expect = nf("a*c-" + std::to_string(m) + "*(n+b)+" + std::to_string(m * (m - 1)));
    EXPECT_TRUE(has_factor(at, expect)) << m;
  }
}

TEST(Aim, NoTermination) {
  AimTrace t = trace("x", "1", 6);
  EXPECT_EQ(find_termination(t).status, TerminationStatus::None);
  SolveOptions o;
  o.n_max = 6;
  EXPECT_THROW(solve_theorem1(nf("x"), nf("1"), o), NoTerminationError);
}

TEST(Aim, ZeroPotentialGivesZero) {
  Solution sol = solve_theorem1(nf("x^2+1/x"), nf("0"));
  EXPECT_EQ(sol.n, 1);
  EXPECT_TRUE(sol.y.is_zero());
  EXPECT_TRUE(solve_theorem2(nf("3*x"), nf("0")).y.is_zero());
}

TEST(Aim, TableRowOne) {
  Solution sol = solve_theorem1(nf("2*x"), nf("-4"));
  EXPECT_EQ(sol.y, nf("-4*x/(1-2*x^2)"));
  EXPECT_TRUE(sol.residual_zero);
}

TEST(Aim, LinearSolution) {
  LinearSolution ls = linear_solution(nf("2*x"), nf("-4"), 2);
  EXPECT_EQ(ls.integrand, nf("4*x/(1-2*x^2)"));
  ASSERT_FALSE(ls.needs_quadrature);
  EXPECT_EQ(ls.antiderivative.as_exponent().derivative(), ls.integrand);
  EXPECT_EQ(ls.antiderivative.to_string(), "-log(2*x^2 - 1)");

  LinearSolution zero = linear_solution(nf("x"), nf("0"), 1);
  EXPECT_TRUE(zero.integrand.is_zero());
  EXPECT_FALSE(zero.needs_quadrature);

  LinearSolution ex3 = linear_solution(nf("3*x^3"), nf("-27*x^2"), 9);
  NormalForm anti = ex3.antiderivative.as_exponent(1.6);
  EXPECT_EQ(anti.derivative(), ex3.integrand);
  EXPECT_EQ(NormalForm::exp_of(-anti).derivative() / NormalForm::exp_of(-anti), -ex3.integrand);
}

TEST(Aim, GeneralSolutionParticular) {
  std::vector<double> grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  auto samples = general_solution_numeric(nf("2*x"), nf("-4"), 2, 0.0, 1.0, grid);
  ASSERT_EQ(samples.size(), grid.size());
  for (const auto& s : samples) EXPECT_NEAR(s.y, -4 * s.x / (1 - 2 * s.x * s.x), 1e-10);
}

TEST(Aim, GeneralSolutionSatisfiesLinearOde) {
  const double h = 1e-3;
  std::vector<double> grid{0.0};
  for (double x : {0.2, 0.35, 0.5}) {
    grid.push_back(x - h);
    grid.push_back(x);
    grid.push_back(x + h);
  }
  auto s = general_solution_numeric(nf("2*x"), nf("-4"), 2, 1.0, 0.0, grid);
  for (std::size_t i = 1; i + 2 < s.size(); i += 3) {
    double x = s[i + 1].x;
    double up = (s[i + 2].u - s[i].u) / (2 * h);
    double upp = (s[i + 2].u - 2 * s[i + 1].u + s[i].u) / (h * h);
    EXPECT_NEAR(upp, 2 * x * up - 4 * s[i + 1].u, 1e-6) << x;
    EXPECT_NEAR(s[i + 1].y, up / s[i + 1].u, 1e-5) << x;
  }
}

TEST(Aim, GeneralSolutionFreeParticle) {
  std::vector<double> grid{0.0, 0.5, 1.0, 2.0};
  auto s = general_solution_numeric(nf("0"), nf("0"), 1, 2.0, 3.0, grid);
  for (const auto& p : s) EXPECT_NEAR(p.u, 3.0 + 2.0 * p.x, 1e-10);
}

TEST(AimProperties, RecurrenceRederivation) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    NormalForm l0 = random_rational(rng), s0 = random_rational(rng);
    AimOptions o;
    o.n_max = 3;
    AimTrace t = aim_iterate(l0, s0, o);
    for (int n = 0; n <= 3; ++n) {
      const NormalForm& lp = t.lambda_at(n - 1);
      const NormalForm& sp = t.s_at(n - 1);
      EXPECT_EQ(t.lambda_at(n), lp.derivative() + sp + l0 * lp);
      EXPECT_EQ(t.s_at(n), sp.derivative() + s0 * lp);
      if (n >= 1) EXPECT_EQ(t.delta_at(n), t.lambda_at(n) * sp - lp * t.s_at(n));
    }
  }
}

TEST(AimProperties, RatioEqualityAndShift) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> n_d(0, 3), p(1, 6), q(1, 4), sh(-5, 5);
  for (int i = 0; i < 100; ++i) {
    int n = n_d(rng);
    Rational alpha(p(rng), q(rng));
    alpha.canonicalize();
    Rational c(sh(rng), q(rng));
    c.canonicalize();
    NormalForm l0 = NormalForm(Rational(2) * alpha) * NormalForm::variable(kX);
    NormalForm s0(Rational(-4 * n) * alpha);
    AimOptions o;
    o.n_max = std::max(1, 2 * n);
    AimTrace t = aim_iterate(l0, s0, o);
    TerminationResult r = find_termination(t);
    ASSERT_EQ(r.status, TerminationStatus::Terminates);
    EXPECT_EQ(r.n, std::max(1, 2 * n));
    int k = r.n;
    EXPECT_EQ(t.s_at(k) * t.lambda_at(k - 1) - t.s_at(k - 1) * t.lambda_at(k), NormalForm());
    if (!t.lambda_at(k).is_zero() && !t.lambda_at(k - 1).is_zero())
      EXPECT_EQ(t.s_at(k) / t.lambda_at(k), t.s_at(k - 1) / t.lambda_at(k - 1));

    NormalForm shift = NormalForm::variable(kX) + NormalForm(c);
    AimTrace ts = aim_iterate(l0.substitute(kX, shift), s0.substitute(kX, shift), o);
    TerminationResult rs = find_termination(ts);
    EXPECT_EQ(rs.status, TerminationStatus::Terminates);
    EXPECT_EQ(rs.n, r.n);
  }
}
