#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aimsolve/error.hpp"
#include "aimsolve/expr.hpp"
#include "aimsolve/integrate.hpp"
#include "aimsolve/normal_form.hpp"

namespace aimsolve {

struct AimOptions {
  int n_max = 24;
  std::uint32_t max_degree = 512;  // numerator total degree guard
  std::size_t max_terms = 200000;  // numerator term-count guard
  // Stop after the first δ_n that is exactly zero.
  bool stop_at_termination = false;
  // Keep the partial trace instead of throwing when a guard trips.
  bool truncate_on_limit = false;
};

// λ_n, s_n for n = -1..N and δ_n for n = 1..N (stored in canonical form).
struct AimTrace {
  NormalForm lambda0, s0;
  std::vector<NormalForm> lambda;  // lambda[n + 1] = λ_n
  std::vector<NormalForm> s;       // s[n + 1] = s_n
  std::vector<NormalForm> delta;   // delta[n - 1] = δ_n
  int n_max = 0;
  std::string stopped;  // why iteration ended early (guard message), else empty

  const NormalForm& lambda_at(int n) const { return lambda.at(static_cast<std::size_t>(n + 1)); }
  const NormalForm& s_at(int n) const { return s.at(static_cast<std::size_t>(n + 1)); }
  const NormalForm& delta_at(int n) const { return delta.at(static_cast<std::size_t>(n - 1)); }
  int computed() const { return static_cast<int>(delta.size()); }
};

AimTrace aim_iterate(const NormalForm& lambda0, const NormalForm& s0, const AimOptions& opts);
AimTrace aim_iterate(const Expr& lambda0, const Expr& s0, int n_max);

enum class TerminationStatus { Terminates, Conditional, None };

struct TerminationResult {
  TerminationStatus status = TerminationStatus::None;
  int n = 0;
  std::vector<Polynomial> constraints;
};

TerminationResult find_termination(const AimTrace& trace);

// For every x-free factor of any δ_n, the first index where it appears.
struct ConditionalBranch {
  int n;
  Polynomial constraint;
};
std::vector<ConditionalBranch> conditional_branches(const AimTrace& trace);

// var := value solves constraint = 0.
struct Elimination {
  std::string variable;
  NormalForm value;
};

// Picks a parameter in which the constraint is linear: `prefer` if given
// and linear, else one with a constant coefficient that is not in `avoid`,
// else any linear one (alphabetical tie-break).
std::optional<Elimination> linear_elimination(const Polynomial& constraint, const std::string& prefer = "",
                                              const std::vector<std::string>& avoid = {});

NormalForm apply_eliminations(const NormalForm& f, const std::vector<Elimination>& elims);

enum class Method { T1, T2, T3, T4, T5, T6, Quick };
std::string method_name(Method m);

struct Solution {
  NormalForm y;
  Method method = Method::T1;
  int n = 0;
  std::vector<Polynomial> constraints;
  std::vector<Elimination> eliminations;
  bool residual_zero = false;  // symbolic certificate (under the eliminations)
  std::vector<std::string> provenance;
  std::shared_ptr<const AimTrace> trace;
};

class NoTerminationError : public Error {
 public:
  NoTerminationError(const std::string& msg, std::vector<std::shared_ptr<const AimTrace>> traces)
      : Error(msg), traces_(std::move(traces)) {}
  const std::vector<std::shared_ptr<const AimTrace>>& traces() const { return traces_; }

 private:
  std::vector<std::shared_ptr<const AimTrace>> traces_;
};

struct SolveOptions {
  int n_max = 24;
  std::string eliminate;  // preferred parameter for conditional branches
  // Pick the conditional branch at this δ index instead of the first.
  std::optional<int> branch;
};

// The termination point to use: exact if any, else a conditional branch
// (with its elimination), with λ_{n-1}, s_{n-1} reduced accordingly.
struct TerminationPoint {
  int n = 0;
  std::vector<Polynomial> constraints;
  std::vector<Elimination> eliminations;
  NormalForm lambda_prev, s_prev;
};
std::optional<TerminationPoint> choose_termination(const AimTrace& trace, const SolveOptions& opts,
                                                   const std::vector<std::string>& avoid = {});

// y' - λ0 y + y² = s0.
Solution solve_theorem1(const NormalForm& lambda0, const NormalForm& s0, const SolveOptions& opts = {});
// y' - λ0 y - y² = -s0.
Solution solve_theorem2(const NormalForm& lambda0, const NormalForm& s0, const SolveOptions& opts = {});

// Integrand α = s_{n-1}/λ_{n-1} of u = exp(-∫α) and its antiderivative.
struct LinearSolution {
  NormalForm integrand;
  Antiderivative antiderivative;
  bool needs_quadrature = false;
  std::string describe() const;  // "u = exp(-(...))" or a quadrature note
};
LinearSolution linear_solution(const NormalForm& lambda0, const NormalForm& s0, int n);

struct GeneralSample {
  double x, u, y;
};
// u = exp(-∫α)·(C2 + C1·∫exp(∫(λ0 + 2α))) with integrals from grid.front();
// y = u'/u. Parameters must already be bound.
std::vector<GeneralSample> general_solution_numeric(const NormalForm& lambda0, const NormalForm& s0, int n, double c1,
                                                    double c2, const std::vector<double>& grid);

}  // namespace aimsolve
