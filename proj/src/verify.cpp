#include "aimsolve/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include <boost/numeric/odeint/stepper/runge_kutta4.hpp>

namespace aimsolve {
namespace {

constexpr double kPoleTol = 1e-6;
constexpr double kEscape = 1e12;

std::function<double(const std::string&)> lookup_at(double x, const Bindings& b) {
  return [x, &b](const std::string& v) -> double {
    if (v == kX) return x;
    auto it = b.find(v);
    if (it == b.end()) throw UnboundParameterError(v);
    return it->second;
  };
}

bool near_pole(const NormalForm& f, double x, const Bindings& b) {
  if (std::fabs(f.denominator().evaluate(lookup_at(x, b))) <= kPoleTol) return true;
  try {
    return !std::isfinite(f.evaluate(x, b));
  } catch (const PoleError&) {
    return true;
  }
}

}  // namespace

Bindings to_double(const ExactBindings& b) {
  Bindings out;
  for (const auto& [k, v] : b) out[k] = v.get_d();
  return out;
}

NormalForm symbolic_residual(const RiccatiEquation& eq, const NormalForm& y) { return riccati_residual(eq, y); }

std::vector<double> equispaced(double lo, double hi, int points) {
  std::vector<double> g;
  if (points == 1) return {lo};
  for (int i = 0; i < points; ++i) g.push_back(lo + (hi - lo) * i / (points - 1));
  return g;
}

std::vector<double> pole_free(const RiccatiEquation& eq, const NormalForm& y, const std::vector<double>& grid,
                              const Bindings& bindings) {
  const NormalForm dy = y.derivative();
  std::vector<double> out;
  for (double x : grid) {
    bool bad = false;
    for (const NormalForm* f : {&y, &dy, &eq.P, &eq.Q, &eq.R}) {
      if (near_pole(*f, x, bindings)) {
        bad = true;
        break;
      }
    }
    if (!bad) out.push_back(x);
  }
  return out;
}

double numeric_residual_grid(const RiccatiEquation& eq, const NormalForm& y, const std::vector<double>& grid,
                             const Bindings& bindings) {
  const NormalForm dy = y.derivative();
  double worst = 0;
  for (double x : grid) {
    for (const NormalForm* f : {&y, &dy, &eq.P, &eq.Q, &eq.R}) {
      if (near_pole(*f, x, bindings)) throw PoleError("grid point x=" + std::to_string(x) + " is at a pole");
    }
    double yv = y.evaluate(x, bindings);
    double r = dy.evaluate(x, bindings) + eq.P.evaluate(x, bindings) * yv + eq.Q.evaluate(x, bindings) * yv * yv -
               eq.R.evaluate(x, bindings);
    worst = std::max(worst, std::fabs(r));
  }
  return worst;
}

double rk_crosscheck(const RiccatiEquation& eq, const NormalForm& y, double x0, double x1, int steps,
                     const Bindings& bindings) {
  if (steps < 1) throw std::invalid_argument("steps must be positive");
  auto rhs = [&](const double& v, double& dv, double x) {
    dv = eq.R.evaluate(x, bindings) - eq.P.evaluate(x, bindings) * v - eq.Q.evaluate(x, bindings) * v * v;
  };
  boost::numeric::odeint::runge_kutta4<double> stepper;
  double v = y.evaluate(x0, bindings);
  if (!std::isfinite(v)) throw PoleError("closed form is not finite at x0");
  const double h = (x1 - x0) / steps;
  double worst = 0;
  for (int i = 0; i < steps; ++i) {
    double x = x0 + h * i;
    stepper.do_step(rhs, v, x, h);
    double xn = i + 1 == steps ? x1 : x0 + h * (i + 1);
    if (!std::isfinite(v) || std::fabs(v) > kEscape) {
      throw IntegrationEscapedError("RK solution escaped near x=" + std::to_string(xn), xn);
    }
    worst = std::max(worst, std::fabs(v - y.evaluate(xn, bindings)));
  }
  return worst;
}

ExactBindings random_bindings(const std::vector<std::string>& params, const std::vector<NormalForm>& exprs,
                              std::mt19937_64& rng) {
  std::uniform_int_distribution<int> den_d(1, 7);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    ExactBindings b;
    for (const auto& p : params) {
      int q = den_d(rng);
      std::uniform_int_distribution<int> num_d(q, 5 * q);
      Rational r(num_d(rng), q);
      r.canonicalize();
      b[p] = r;
    }
    bool ok = true;
    for (const auto& e : exprs) {
      try {
        NormalForm s = e.substitute(b);
        if (s.denominator().is_zero()) ok = false;
      } catch (const Error&) {
        ok = false;
      }
      if (!ok) break;
    }
    if (ok) return b;
  }
  throw DegenerateError("could not find parameter bindings that keep every denominator nonzero");
}

VerificationReport verify_solution(const RiccatiEquation& eq, const NormalForm& y, const VerifyOptions& opts) {
  VerificationReport rep;
  try {
    rep.symbolic_residual_zero = symbolic_residual(eq, y).is_zero();
  } catch (const Error&) {
    rep.symbolic_residual_zero = false;
  }
  std::set<std::string> params;
  for (const NormalForm* f : {&y, &eq.P, &eq.Q, &eq.R})
    for (const auto& p : f->parameters())
      if (!opts.fixed.count(p)) params.insert(p);
  std::mt19937_64 rng(opts.seed);
  rep.bindings = random_bindings({params.begin(), params.end()}, {y, eq.P, eq.Q, eq.R}, rng);
  for (const auto& [k, v] : opts.fixed) rep.bindings[k] = v;
  Bindings b = to_double(rep.bindings);

  std::vector<double> full = equispaced(opts.lo, opts.hi, opts.grid_points);
  rep.grid = pole_free(eq, y, full, b);
  if (rep.grid.empty()) {
    rep.rk_note = "no pole-free grid points";
    rep.max_numeric_residual = std::nan("");
    return rep;
  }
  rep.max_numeric_residual = numeric_residual_grid(eq, y, rep.grid, b);

  // RK runs on the longest stretch of consecutive pole-free points with no
  // denominator sign change between neighbours.
  const NormalForm dy = y.derivative();
  auto den_sign = [&](const NormalForm& f, double x) {
    return std::signbit(f.denominator().evaluate(lookup_at(x, b)));
  };
  auto joined = [&](double u, double v) {
    for (const NormalForm* f : {&y, &dy, &eq.P, &eq.Q, &eq.R})
      if (den_sign(*f, u) != den_sign(*f, v)) return false;
    return true;
  };
  std::size_t best_lo = 0, best_len = 0;
  for (std::size_t i = 0; i < rep.grid.size();) {
    std::size_t j = i + 1;
    while (j < rep.grid.size() && joined(rep.grid[j - 1], rep.grid[j]) &&
           std::find(full.begin(), full.end(), rep.grid[j]) - std::find(full.begin(), full.end(), rep.grid[j - 1]) == 1)
      ++j;
    if (j - i > best_len) {
      best_len = j - i;
      best_lo = i;
    }
    i = j;
  }
  if (best_len < full.size()) rep.rk_note = "closed form has a pole in the interval; RK restricted to a pole-free stretch";
  if (best_len < 2) {
    rep.rk_note = "no pole-free stretch for RK";
    return rep;
  }
  double x0 = rep.grid[best_lo], x1 = rep.grid[best_lo + best_len - 1];
  int steps = std::max(1, static_cast<int>(std::lround(opts.rk_steps * (best_len - 1) / double(full.size() - 1))));
  try {
    rep.rk_max_deviation = rk_crosscheck(eq, y, x0, x1, steps, b);
  } catch (const IntegrationEscapedError& e) {
    rep.rk_note = e.what();
  } catch (const PoleError& e) {
    rep.rk_note = e.what();
  }
  return rep;
}

}  // namespace aimsolve
