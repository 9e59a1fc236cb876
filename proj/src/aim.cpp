#include "aimsolve/aim.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace aimsolve {
namespace {

void guard(const NormalForm& f, const AimOptions& opts, int n, const char* what) {
  const Polynomial& num = f.numerator();
  if (num.total_degree() > opts.max_degree) {
    throw ResourceError(std::string(what) + " at n=" + std::to_string(n) + " exceeds degree bound " +
                        std::to_string(opts.max_degree));
  }
  if (num.size() > opts.max_terms || f.denominator().size() > opts.max_terms) {
    throw ResourceError(std::string(what) + " at n=" + std::to_string(n) + " exceeds term bound " +
                        std::to_string(opts.max_terms));
  }
}

bool residual_vanishes(const NormalForm& y, const NormalForm& lambda0, const NormalForm& s0, int quad_sign) {
  try {
    NormalForm r = y.derivative() - lambda0 * y + NormalForm(Rational(quad_sign)) * y * y -
                   NormalForm(Rational(quad_sign)) * s0;
    return r.is_zero();
  } catch (const Error&) {
    return false;
  }
}

std::string join_constraints(const std::vector<Polynomial>& cs) {
  std::string s;
  for (std::size_t i = 0; i < cs.size(); ++i) s += (i ? ", " : "") + constraint_to_string(cs[i]);
  return s;
}

}  // namespace

AimTrace aim_iterate(const NormalForm& lambda0, const NormalForm& s0, const AimOptions& opts) {
  if (opts.n_max < 1) throw std::invalid_argument("n_max must be at least 1");
  AimTrace t;
  t.lambda0 = lambda0;
  t.s0 = s0;
  t.n_max = opts.n_max;
  t.lambda.push_back(NormalForm(Rational(1)));
  t.s.push_back(NormalForm());
  t.lambda.push_back(lambda0);
  t.s.push_back(s0);
  try {
    for (int n = 1; n <= opts.n_max; ++n) {
      const NormalForm& lp = t.lambda.back();
      const NormalForm& sp = t.s.back();
      NormalForm ln = lp.derivative() + sp + lambda0 * lp;
      guard(ln, opts, n, "lambda");
      NormalForm sn = sp.derivative() + s0 * lp;
      guard(sn, opts, n, "s");
      NormalForm dn = ln * sp - lp * sn;
      t.lambda.push_back(std::move(ln));
      t.s.push_back(std::move(sn));
      t.delta.push_back(std::move(dn));
      if (opts.stop_at_termination && t.delta.back().is_zero()) break;
    }
  } catch (const ResourceError& e) {
    if (!opts.truncate_on_limit) throw;
    t.stopped = e.what();
    // Keep λ, s aligned with δ.
    t.lambda.resize(t.delta.size() + 2);
    t.s.resize(t.delta.size() + 2);
  }
  return t;
}

AimTrace aim_iterate(const Expr& lambda0, const Expr& s0, int n_max) {
  AimOptions opts;
  opts.n_max = n_max;
  return aim_iterate(normalize(lambda0), normalize(s0), opts);
}

TerminationResult find_termination(const AimTrace& trace) {
  TerminationResult r;
  for (int n = 1; n <= trace.computed(); ++n) {
    if (trace.delta_at(n).is_zero()) {
      r.status = TerminationStatus::Terminates;
      r.n = n;
      return r;
    }
  }
  for (int n = 1; n <= trace.computed(); ++n) {
    auto cs = zero_constraints(trace.delta_at(n));
    if (!cs.empty()) {
      r.status = TerminationStatus::Conditional;
      r.n = n;
      r.constraints = std::move(cs);
      return r;
    }
  }
  return r;
}

std::vector<ConditionalBranch> conditional_branches(const AimTrace& trace) {
  std::vector<ConditionalBranch> out;
  std::vector<Polynomial> seen;
  for (int n = 1; n <= trace.computed(); ++n) {
    if (trace.delta_at(n).is_zero()) break;
    for (auto& c : zero_constraints(trace.delta_at(n))) {
      if (std::find(seen.begin(), seen.end(), c) != seen.end()) continue;
      seen.push_back(c);
      out.push_back({n, c});
    }
  }
  return out;
}

std::optional<Elimination> linear_elimination(const Polynomial& constraint, const std::string& prefer,
                                              const std::vector<std::string>& avoid) {
  struct Candidate {
    int rank;
    std::string var;
    Polynomial coef, rest;
  };
  std::vector<Candidate> cands;
  for (const auto& v : constraint.used_variables()) {
    if (v == kX || constraint.degree(v) != 1) continue;
    auto c = constraint.coefficients(v);
    bool avoided = std::find(avoid.begin(), avoid.end(), v) != avoid.end();
    int rank;
    if (v == prefer) rank = 0;
    else if (c[1].is_constant() && !avoided) rank = 1;
    else if (!avoided) rank = 2;
    else rank = 3;
    cands.push_back({rank, v, c[1], c[0]});
  }
  if (cands.empty()) return std::nullopt;
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    return a.rank != b.rank ? a.rank < b.rank : a.var < b.var;
  });
  const Candidate& best = cands.front();
  return Elimination{best.var, NormalForm::make(-best.rest, best.coef)};
}

NormalForm apply_eliminations(const NormalForm& f, const std::vector<Elimination>& elims) {
  NormalForm out = f;
  for (const auto& e : elims) out = out.substitute(e.variable, e.value);
  return out;
}

std::string method_name(Method m) {
  switch (m) {
    case Method::T1: return "T1";
    case Method::T2: return "T2";
    case Method::T3: return "T3";
    case Method::T4: return "T4";
    case Method::T5: return "T5";
    case Method::T6: return "T6";
    case Method::Quick: return "quick";
  }
  return "?";
}

std::optional<TerminationPoint> choose_termination(const AimTrace& trace, const SolveOptions& opts,
                                                   const std::vector<std::string>& avoid) {
  for (int n = 1; n <= trace.computed(); ++n) {
    if (trace.delta_at(n).is_zero()) {
      TerminationPoint tp;
      tp.n = n;
      tp.lambda_prev = trace.lambda_at(n - 1);
      tp.s_prev = trace.s_at(n - 1);
      return tp;
    }
  }
  std::vector<Polynomial> seen;
  for (int n = 1; n <= trace.computed(); ++n) {
    if (opts.branch && n > *opts.branch) break;
    for (auto& c : zero_constraints(trace.delta_at(n))) {
      if (std::find(seen.begin(), seen.end(), c) != seen.end()) continue;
      seen.push_back(c);
      if (opts.branch && n != *opts.branch) continue;
      auto el = linear_elimination(c, opts.eliminate, avoid);
      if (!el) continue;
      TerminationPoint tp;
      tp.n = n;
      tp.constraints = {c};
      tp.eliminations = {*el};
      try {
        tp.lambda_prev = apply_eliminations(trace.lambda_at(n - 1), tp.eliminations);
        tp.s_prev = apply_eliminations(trace.s_at(n - 1), tp.eliminations);
      } catch (const Error&) {
        continue;
      }
      return tp;
    }
  }
  return std::nullopt;
}

namespace {

Solution solve_simple(const NormalForm& lambda0, const NormalForm& s0, const SolveOptions& opts, int quad_sign) {
  AimOptions ao;
  ao.n_max = opts.branch ? std::min(opts.n_max, *opts.branch) : opts.n_max;
  ao.stop_at_termination = true;
  ao.truncate_on_limit = true;
  auto trace = std::make_shared<const AimTrace>(aim_iterate(lambda0, s0, ao));
  auto tp = choose_termination(*trace, opts);
  const char* stated_form = quad_sign > 0 ? "y = -s/lambda" : "y = s/lambda";
  if (!tp) {
    std::string msg = "no termination within n_max=" + std::to_string(opts.n_max);
    if (!trace->stopped.empty()) msg += " (" + trace->stopped + ")";
    throw NoTerminationError(msg, {trace});
  }
  if (tp->lambda_prev.is_zero() && !tp->s_prev.is_zero()) {
    throw DegenerateError("lambda_" + std::to_string(tp->n - 1) + " vanishes identically at termination n=" +
                          std::to_string(tp->n));
  }
  Solution sol;
  sol.method = quad_sign > 0 ? Method::T1 : Method::T2;
  sol.n = tp->n;
  sol.constraints = tp->constraints;
  sol.eliminations = tp->eliminations;
  sol.trace = trace;
  NormalForm l0 = apply_eliminations(lambda0, sol.eliminations);
  NormalForm s0e = apply_eliminations(s0, sol.eliminations);
  NormalForm ratio = tp->s_prev.is_zero() ? NormalForm() : tp->s_prev / tp->lambda_prev;
  NormalForm stated = quad_sign > 0 ? -ratio : ratio;
  sol.y = stated;
  sol.residual_zero = residual_vanishes(stated, l0, s0e, quad_sign);
  if (!sol.residual_zero && residual_vanishes(-stated, l0, s0e, quad_sign)) {
    sol.y = -stated;
    sol.residual_zero = true;
    sol.provenance.push_back(std::string("sign flipped relative to ") + stated_form + " (residual certifies the opposite sign)");
  }
  if (sol.constraints.empty()) {
    sol.provenance.push_back("delta_" + std::to_string(sol.n) + " = 0 exactly");
  } else {
    sol.provenance.push_back("conditional termination at n=" + std::to_string(sol.n) + " on " +
                             join_constraints(sol.constraints) + ", eliminated " + sol.eliminations[0].variable +
                             " = " + sol.eliminations[0].value.to_string());
  }
  return sol;
}

}  // namespace

Solution solve_theorem1(const NormalForm& lambda0, const NormalForm& s0, const SolveOptions& opts) {
  return solve_simple(lambda0, s0, opts, 1);
}

Solution solve_theorem2(const NormalForm& lambda0, const NormalForm& s0, const SolveOptions& opts) {
  return solve_simple(lambda0, s0, opts, -1);
}

std::string LinearSolution::describe() const {
  if (needs_quadrature) return "u = exp(-int(" + integrand.to_string() + ")) (numeric quadrature required)";
  return "u = exp(-(" + antiderivative.to_string() + "))";
}

LinearSolution linear_solution(const NormalForm& lambda0, const NormalForm& s0, int n) {
  if (n < 1) throw std::invalid_argument("termination index must be at least 1");
  AimOptions ao;
  ao.n_max = n;
  AimTrace t = aim_iterate(lambda0, s0, ao);
  LinearSolution out;
  if (!t.s_at(n - 1).is_zero()) {
    if (t.lambda_at(n - 1).is_zero()) throw DegenerateError("lambda vanishes at the termination index");
    out.integrand = t.s_at(n - 1) / t.lambda_at(n - 1);
  }
  try {
    out.antiderivative = integrate(out.integrand);
    out.needs_quadrature = !out.antiderivative.closed();
  } catch (const UnsupportedFormError&) {
    out.needs_quadrature = true;
  }
  return out;
}

std::vector<GeneralSample> general_solution_numeric(const NormalForm& lambda0, const NormalForm& s0, int n, double c1,
                                                    double c2, const std::vector<double>& grid) {
  if (grid.empty()) return {};
  AimOptions ao;
  ao.n_max = n;
  AimTrace t = aim_iterate(lambda0, s0, ao);
  if (t.lambda_at(n - 1).is_zero() && !t.s_at(n - 1).is_zero()) {
    throw DegenerateError("lambda vanishes at the termination index");
  }
  NormalForm alpha = t.s_at(n - 1).is_zero() ? NormalForm() : t.s_at(n - 1) / t.lambda_at(n - 1);
  const std::map<std::string, double> none;
  auto check_pole = [&](const NormalForm& f, double x) {
    double d = f.denominator().evaluate([&](const std::string& v) -> double {
      if (v == kX) return x;
      throw UnboundParameterError(v);
    });
    if (std::fabs(d) <= 1e-6) throw PoleError("pole of alpha or lambda0 near grid point x=" + std::to_string(x));
  };
  for (double x : grid) {
    check_pole(alpha, x);
    check_pole(lambda0, x);
  }
  auto a_of = [&](double x) { return alpha.evaluate(x, none); };
  auto b_of = [&](double x) { return lambda0.evaluate(x, none) + 2 * a_of(x); };
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double x0 = grid.front();
  auto integral = [&](auto f, double a, double b) {
    if (a == b) return 0.0;
    double err = 0;
    double v = GK::integrate(f, a, b, 0, 1e-12, &err);
    if (std::isfinite(v) && err <= 1e-13 * (std::fabs(b - a) + std::fabs(v))) return v;
    v = GK::integrate(f, a, b, 15, 1e-12, &err);
    if (!std::isfinite(v) || err > 1e-7 * std::max(1.0, std::fabs(v))) {
      throw QuadratureError("quadrature did not converge on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
    }
    return v;
  };
  std::vector<GeneralSample> out;
  for (double x : grid) {
    double A = integral(a_of, x0, x);
    double B = integral(b_of, x0, x);
    double G = 0;
    if (c1 != 0) {
      G = integral([&](double s) { return std::exp(integral(b_of, x0, s)); }, x0, x);
    }
    double u = std::exp(-A) * (c2 + c1 * G);
    double y = -a_of(x) + c1 * std::exp(B) / (c2 + c1 * G);
    out.push_back({x, u, y});
  }
  return out;
}

}  // namespace aimsolve
