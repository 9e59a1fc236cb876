#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "aimsolve/riccati.hpp"

namespace aimsolve {

using Bindings = std::map<std::string, double>;
using ExactBindings = std::map<std::string, Rational>;

Bindings to_double(const ExactBindings& b);

// normalize(y' + P y + Q y² - R).
NormalForm symbolic_residual(const RiccatiEquation& eq, const NormalForm& y);

// `points` equispaced values on [lo, hi].
std::vector<double> equispaced(double lo, double hi, int points = 41);

// Drops points where any denominator of y, P, Q, R has magnitude <= 1e-6
// or where a log argument is not positive.
std::vector<double> pole_free(const RiccatiEquation& eq, const NormalForm& y, const std::vector<double>& grid,
                              const Bindings& bindings);

// max |y'(x) + P y + Q y² - R| over the grid, each term evaluated separately.
// Throws PoleError when a grid point is within 1e-6 of a pole.
double numeric_residual_grid(const RiccatiEquation& eq, const NormalForm& y, const std::vector<double>& grid,
                             const Bindings& bindings);

// Classic RK4 with fixed step from y(x0) to x1; max |y_rk - y| over the
// mesh. Throws IntegrationEscapedError when |y_rk| exceeds 1e12.
double rk_crosscheck(const RiccatiEquation& eq, const NormalForm& y, double x0, double x1, int steps,
                     const Bindings& bindings);

// Rationals in [1, 5] with denominators <= 7, re-rolled while any of the
// expressions loses its denominator (or becomes undefined) under them.
ExactBindings random_bindings(const std::vector<std::string>& params, const std::vector<NormalForm>& exprs,
                              std::mt19937_64& rng);

struct VerificationReport {
  bool symbolic_residual_zero = false;
  double max_numeric_residual = 0;
  std::vector<double> grid;
  std::optional<double> rk_max_deviation;
  std::string rk_note;  // why the RK check was skipped or flagged
  ExactBindings bindings;
};

struct VerifyOptions {
  double lo = 0.1, hi = 0.9;
  int grid_points = 41;
  int rk_steps = 1000;
  std::uint64_t seed = 1;
  ExactBindings fixed;  // bindings that override random ones
};

// eq and y must already have any eliminations applied.
VerificationReport verify_solution(const RiccatiEquation& eq, const NormalForm& y, const VerifyOptions& opts = {});

}  // namespace aimsolve
