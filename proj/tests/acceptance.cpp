#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "aimsolve/hyper.hpp"
#include "aimsolve/tables.hpp"

using namespace aimsolve;

namespace {

NormalForm nf(const std::string& s, const std::vector<std::string>& params = {}) {
  return normalize(parse_expr(s, params));
}

// Collects failure messages for one criterion.
struct Check {
  std::vector<std::string> failures;
  std::string info;

  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 8) failures.push_back(what);
  }
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<void(Check&)> body;
};

bool same_up_to_sign(const NormalForm& a, const NormalForm& b) { return a == b || a == -b; }

void example1(Check& c) {
  const std::vector<std::string> p{"a", "b", "c", "m"};
  const std::string den = "(a*x^3+b*x^2+c*x)";
  NormalForm l0 = nf("-((m-a)*x^2+(2*c*m-1)*x-c)/" + den, p);
  NormalForm s0 = nf("-(-2*m*x+1)/" + den, p);
  Solution sol = solve_theorem1(l0, s0);
  c.expect(sol.trace && sol.trace->computed() >= 2, "trace shorter than 2");
  if (sol.trace && sol.trace->computed() >= 2) {
    c.expect(!sol.trace->delta_at(1).is_zero(), "delta_1 is zero");
    c.expect(sol.trace->delta_at(2).is_zero(), "delta_2 is not zero");
  }
  c.expect(sol.n == 2, "terminated at " + std::to_string(sol.n));
  RiccatiEquation eq = RiccatiEquation::simple1(l0, s0);
  c.expect(symbolic_residual(eq, sol.y).is_zero(), "residual nonzero");
  NormalForm quotient = nf("(2*(m+a)*x+4*c*m+2*b-1)/((m+a)*x^2+(4*c*m+2*b-1)*(x+c))", p);
  c.expect(same_up_to_sign(sol.y, quotient), "y = " + sol.y.to_string());
  c.info = "n=" + std::to_string(sol.n) + (sol.y == quotient ? ", equal to the quotient" : ", equal up to sign");
}

void example3(Check& c) {
  RiccatiEquation eq = RiccatiEquation::parse("1", "exp((3/4)*x^4+x)", "-27*x^2*exp(-(3/4)*x^4-x)", {});
  auto [l0, s0] = to_linear(eq, Transform::T3);
  c.expect(l0 == nf("3*x^3"), "lambda0 = " + l0.to_string());
  c.expect(s0 == nf("-27*x^2"), "s0 = " + s0.to_string());
  Solution sol = solve(eq, Strategy::T3);
  c.expect(sol.n == 9, "terminated at " + std::to_string(sol.n));
  if (sol.trace && sol.trace->computed() >= 9) {
    for (int k = 1; k < 9; ++k) c.expect(!sol.trace->delta_at(k).is_zero(), "delta_" + std::to_string(k) + " zero");
    c.expect(sol.trace->delta_at(9).is_zero(), "delta_9 nonzero");
  } else {
    c.expect(false, "trace shorter than 9");
  }
  c.expect(sol.y == nf("(9*x^8-30*x^4+5)/(x*exp((3/4)*x^4+x)*(x^8-6*x^4+5))"), "y = " + sol.y.to_string());
  c.expect(symbolic_residual(eq, sol.y).is_zero(), "residual nonzero");
  c.info = "n=" + std::to_string(sol.n);
}

void example4(Check& c) {
  const std::vector<std::string> p{"a", "b", "c", "n"};
  RiccatiEquation eq = RiccatiEquation::parse("-b/x", "-a*exp(n*log(x))", "c*exp(-(n+2)*log(x))", p);
  for (int m = 1; m <= 3; ++m) {
    const std::string ms = std::to_string(m);
    SolveOptions o;
    o.eliminate = "c";
    o.branch = m;
    Solution sol = solve(eq, Strategy::T3, o);
    NormalForm factor = nf("a*c-" + ms + "*(n+b)+" + ms + "*(" + ms + "-1)", p);
    c.expect(sol.n == m, "m=" + ms + " terminated at " + std::to_string(sol.n));
    c.expect(sol.constraints.size() == 1, "m=" + ms + " reports " + std::to_string(sol.constraints.size()) + " factors");
    for (const auto& k : sol.constraints)
      c.expect(same_up_to_sign(NormalForm(k), factor), "m=" + ms + " factor " + constraint_to_string(k));
    c.expect(sol.eliminations.size() == 1 && sol.eliminations[0].variable == "c", "m=" + ms + " did not eliminate c");
    c.expect(sol.y == nf("-" + ms + "/(a*exp((n+1)*log(x)))", p), "m=" + ms + " y = " + sol.y.to_string());
    c.expect(sol.residual_zero, "m=" + ms + " residual nonzero");
  }
}

void tables(Check& c) {
  std::vector<Fixture> fixtures;
  for (int t : {1, 2})
    for (auto& f : table_fixtures(t)) fixtures.push_back(std::move(f));
  std::vector<FixtureResult> results = run_fixtures(fixtures);
  int ok = 0;
  for (const auto& r : results) {
    c.expect(r.symbolic_pass(), r.id + (r.error.empty() ? " mismatch" : " " + r.error));
    ok += r.symbolic_pass();
  }
  c.info = std::to_string(ok) + "/" + std::to_string(results.size()) + " fixtures";
}

void example2(Check& c) {
  NormalForm l0 = nf("3*a*x+1/x", {"a"}), s0 = nf("a^2", {"a"});
  const std::vector<std::pair<int, std::string>> listed{
      {2, "-2/x"},
      {4, "-2*(18*x^2+1)/(x*(1+9*x^2))"},
      {6, "-2*(729*x^4+108*x^2+2)/(x*(243*x^4+54*x^2+2))"},
  };
  std::ostringstream info;
  for (const auto& [idx, text] : listed) {
    SolveOptions o;
    o.n_max = 6;
    o.branch = idx;
    Solution sol = solve_theorem2(l0, s0, o);
    c.expect(sol.eliminations.size() == 1 && sol.eliminations[0].variable == "a", "branch " + std::to_string(idx));
    RiccatiEquation eq = RiccatiEquation::simple2(l0, s0).eliminated(sol.eliminations);
    c.expect(symbolic_residual(eq, nf(text)).is_zero(), text + " residual nonzero");
    c.expect(sol.y == nf(text), "branch " + std::to_string(idx) + " y = " + sol.y.to_string());
    c.expect(!symbolic_residual(RiccatiEquation::simple2(l0, s0), nf(text)).is_zero(), text + " solves for every a");
    if (!sol.eliminations.empty())
      info << (info.tellp() ? ", " : "") << "delta_" << idx << ": a=" << sol.eliminations[0].value.to_string();
  }
  c.info = info.str();
}

void coherence(Check& c) {
  std::vector<Fixture> fixtures;
  for (int t : table_ids())
    for (auto& f : table_fixtures(t)) fixtures.push_back(std::move(f));
  for (auto& f : example_fixtures()) fixtures.push_back(std::move(f));
  int symbolic = 0, both = 0;
  for (const auto& r : run_fixtures(fixtures)) {
    if (!r.symbolic_pass()) continue;
    ++symbolic;
    both += r.numeric_pass();
    std::ostringstream msg;
    msg << r.id << " residual " << r.report.max_numeric_residual << " rk "
        << (r.report.rk_max_deviation ? std::to_string(*r.report.rk_max_deviation) : "none") << " " << r.report.rk_note;
    c.expect(r.numeric_pass(), msg.str());
  }
  c.expect(symbolic == static_cast<int>(fixtures.size()), "only " + std::to_string(symbolic) + " symbolic passes");
  c.info = std::to_string(both) + "/" + std::to_string(symbolic) + " symbolic passes also pass numerically";
}

NormalForm random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-3, 3), deg(0, 2);
  Polynomial x = Polynomial::variable(kX);
  Polynomial num, den(Rational(1));
  for (int k = 0, d = deg(rng); k <= d; ++k) num += Polynomial(Rational(c(rng))) * x.pow(k);
  if (deg(rng) == 2) den = x * x + Polynomial(Rational(1 + std::abs(c(rng))));
  return NormalForm::make(num, den);
}

Expr random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, 8), small(-4, 4);
  int k = depth <= 0 ? pick(rng) % 3 : pick(rng);
  switch (k) {
    case 0: {
      Rational q(small(rng), 1 + std::abs(small(rng)));
      q.canonicalize();
      return Expr::number(q);
    }
    case 1:
      return Expr::symbol("x");
    case 2:
      return Expr::symbol(pick(rng) % 2 ? "a" : "b");
    case 3:
    case 4:
      return random_expr(rng, depth - 1) + random_expr(rng, depth - 1);
    case 5:
      return random_expr(rng, depth - 1) * random_expr(rng, depth - 1);
    case 6:
      return Expr::power(random_expr(rng, depth - 1), 1 + pick(rng) % 3);
    case 7:
      return random_expr(rng, depth - 1) / (Expr::power(Expr::symbol("x"), 2) + Expr::number(1 + pick(rng) % 3));
    default:
      return Expr::exp(Expr::number(small(rng)) * Expr::power(Expr::symbol("x"), 1 + pick(rng) % 2)) *
             random_expr(rng, depth - 1);
  }
}

NormalForm random_poly(std::mt19937_64& rng, int degree) {
  std::uniform_int_distribution<int> c(-3, 3), d(1, 3);
  Polynomial x = Polynomial::variable(kX), p;
  for (int k = 0; k <= degree; ++k) {
    Rational q(c(rng), d(rng));
    q.canonicalize();
    p += Polynomial(q) * x.pow(k);
  }
  return NormalForm(p);
}

void properties(Check& c) {
  std::ostringstream info;
  {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
      NormalForm l0 = random_rational(rng), s0 = random_rational(rng);
      AimOptions o;
      o.n_max = 3;
      AimTrace t = aim_iterate(l0, s0, o);
      for (int n = 0; n <= 3; ++n) {
        const NormalForm& lp = t.lambda_at(n - 1);
        const NormalForm& sp = t.s_at(n - 1);
        c.expect(t.lambda_at(n) == lp.derivative() + sp + l0 * lp, "lambda recurrence " + std::to_string(i));
        c.expect(t.s_at(n) == sp.derivative() + s0 * lp, "s recurrence " + std::to_string(i));
        if (n >= 1)
          c.expect(t.delta_at(n) == t.lambda_at(n) * sp - lp * t.s_at(n), "delta definition " + std::to_string(i));
      }
    }
    info << "recurrence 100";
  }
  {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> n_d(0, 3), p(1, 6), q(1, 4);
    for (int i = 0; i < 100; ++i) {
      int n = n_d(rng);
      Rational alpha(p(rng), q(rng));
      alpha.canonicalize();
      NormalForm l0 = NormalForm(Rational(2) * alpha) * NormalForm::variable(kX);
      NormalForm s0(Rational(-4 * n) * alpha);
      AimOptions o;
      o.n_max = std::max(1, 2 * n);
      AimTrace t = aim_iterate(l0, s0, o);
      TerminationResult r = find_termination(t);
      if (r.status != TerminationStatus::Terminates) {
        c.expect(false, "ratio instance " + std::to_string(i) + " did not terminate");
        continue;
      }
      int k = r.n;
      c.expect(t.s_at(k) * t.lambda_at(k - 1) == t.s_at(k - 1) * t.lambda_at(k), "ratio " + std::to_string(i));
    }
    info << ", ratio 100";
  }
  {
    std::mt19937_64 rng(20240611);
    int homo = 0, product = 0;
    for (int i = 0; homo < 100 || product < 100; ++i) {
      Expr e1 = random_expr(rng, 3), e2 = random_expr(rng, 3);
      NormalForm n1, n2;
      try {
        n1 = normalize(e1);
        n2 = normalize(e2);
      } catch (const Error&) {
        continue;
      }
      try {
        NormalForm sum = normalize(e1 + e2);
        c.expect(sum == n1 + n2, "sum " + e1.to_string() + " ; " + e2.to_string());
      } catch (const UnsupportedFormError&) {
      }
      c.expect(normalize(e1 * e2) == n1 * n2, "product " + e1.to_string() + " ; " + e2.to_string());
      if (!n2.is_zero()) c.expect(normalize(e1 / e2) == n1 / n2, "quotient " + e1.to_string());
      c.expect(normalize(parse_expr(e1.to_string(), {"a", "b"})) == n1, "round trip " + e1.to_string());
      ++homo;
      NormalForm lhs = normalize(differentiate(e1 * e2));
      NormalForm rhs = normalize(differentiate(e1)) * n2 + n1 * normalize(differentiate(e2));
      c.expect((lhs - rhs).is_zero(), "product rule " + e1.to_string() + " ; " + e2.to_string());
      ++product;
    }
    info << ", homomorphism " << homo << ", product rule " << product;
  }
  {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> num_d(-30, 30), den_d(1, 9), k_d(0, 12);
    for (int i = 0; i < 200; ++i) {
      Rational a(num_d(rng), den_d(rng));
      a.canonicalize();
      unsigned k = static_cast<unsigned>(k_d(rng));
      c.expect(pochhammer(a, k + 1) == pochhammer(a, k) * (a + static_cast<long>(k)), "pochhammer " + a.get_str());
    }
    info << ", pochhammer 200";
  }
  {
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> n_d(0, 6), num_d(-9, 9), den_d(1, 5);
    std::uniform_real_distribution<double> z_d(-2.0, 2.0);
    int counts[2] = {0, 0};
    while (counts[0] < 100 || counts[1] < 100) {
      int shape = counts[0] < 100 ? (counts[1] < 100 ? static_cast<int>(rng() % 2) : 0) : 1;
      HyperSpec s;
      s.argument = Expr::symbol("x");
      s.numerator.push_back(Expr::number(Rational(-n_d(rng))));
      if (shape) {
        Rational a(num_d(rng), den_d(rng));
        a.canonicalize();
        s.numerator.push_back(Expr::number(a));
      }
      Rational b(num_d(rng), den_d(rng));
      b.canonicalize();
      if (b.get_den() == 1 && b <= 0) continue;
      s.denominator.push_back(Expr::number(b));
      ++counts[shape];
      NormalForm poly = normalize(expand_polynomial(s));
      for (int j = 0; j < 20; ++j) {
        double z = z_d(rng);
        double direct = evaluate(s, z, {});
        double expanded = poly.evaluate(z, std::map<std::string, double>{});
        c.expect(std::fabs(expanded - direct) <= 1e-12 * std::max(1.0, std::fabs(direct)),
                 (shape ? "2F1" : "1F1") + std::string(" at ") + std::to_string(z));
      }
    }
    info << ", 1F1 " << counts[0] << ", 2F1 " << counts[1];
  }
  {
    std::mt19937_64 rng(41);
    int checked = 0;
    double worst = 0;
    while (checked < 100) {
      NormalForm yp = random_poly(rng, 2), P = random_poly(rng, 1), Q = random_poly(rng, 1);
      if (Q.is_zero()) Q = NormalForm(Rational(1));
      RiccatiEquation e = RiccatiEquation::make(P, Q, yp.derivative() + P * yp + Q * yp * yp);
      // Base step count with h * max|P + 2 Q y| <= 1/2 on [0, 1].
      double lipschitz = 0;
      for (double x : equispaced(0.0, 1.0, 101))
        lipschitz = std::max(lipschitz, std::fabs(P.evaluate(x, Bindings{}) +
                                                   2 * Q.evaluate(x, Bindings{}) * yp.evaluate(x, Bindings{})));
      int coarse = 16;
      while (lipschitz / coarse > 0.5) coarse *= 2;
      double d1, d2;
      try {
        d1 = rk_crosscheck(e, yp, 0.0, 1.0, coarse, {});
        d2 = rk_crosscheck(e, yp, 0.0, 1.0, 2 * coarse, {});
      } catch (const Error&) {
        continue;
      }
      if (d1 < 1e-13) continue;
      ++checked;
      worst = std::max(worst, d2 / d1);
      c.expect(d2 / d1 <= 1.0 / 12.0, "rk ratio " + std::to_string(d2 / d1));
    }
    info << ", rk order 100 (worst ratio " << worst << ")";
  }
  c.info = info.str();
}

void quick(Check& c) {
  for (const std::string f : {"1", "x", "x^2", "1/(1+x^2)"}) {
    RiccatiEquation eq = RiccatiEquation::parse("-x*(" + f + ")", "-1", f, {});
    auto y = quick_particular(eq);
    c.expect(y.has_value(), "f=" + f + " returned empty");
    if (y) {
      c.expect(*y == nf("-1/x"), "f=" + f + " y = " + y->to_string());
      c.expect(symbolic_residual(eq, *y).is_zero(), "f=" + f + " residual nonzero");
    }
    RiccatiEquation perturbed = RiccatiEquation::parse("-x*(" + f + ")", "-1", "(" + f + ")+1", {});
    c.expect(!quick_particular(perturbed).has_value(), "f=" + f + " perturbed returned a solution");
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Example 1: delta_2 = 0 and the quotient solution", 5, example1},
      {2, "Example 3: lambda0 = 3x^3, s0 = -27x^2, termination at n = 9", 30, example3},
      {3, "Example 4: branch factors and y = -m/(a x^(n+1))", 0, example4},
      {4, "Tables 1 and 2 over their n values", 600, tables},
      {5, "Example 2: branch solutions under a-elimination", 0, example2},
      {6, "Numeric coherence over all fixtures", 0, coherence},
      {7, "Property suites", 120, properties},
      {8, "Quick criterion on y' - x f y - y^2 = f", 0, quick},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check check;
    auto start = std::chrono::steady_clock::now();
    try {
      cr.body(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.budget_s > 0 && seconds >= cr.budget_s) {
      std::ostringstream msg;
      msg << "runtime " << seconds << " s over the " << cr.budget_s << " s budget";
      check.failures.push_back(msg.str());
    }
    bool ok = check.failures.empty();
    failed += !ok;
    char time[32];
    std::snprintf(time, sizeof time, "%.3f s", seconds);
    std::cout << (ok ? "PASS" : "FAIL") << " [" << cr.id << "] " << cr.name << " (" << time;
    if (cr.budget_s > 0) std::cout << ", budget " << cr.budget_s << " s";
    std::cout << ")";
    if (!check.info.empty()) std::cout << ": " << check.info;
    std::cout << "\n";
    for (const auto& f : check.failures) std::cout << "    " << f << "\n";
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
