#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aimsolve/aim.hpp"

namespace aimsolve {

// y' + P y + Q y² = R.
struct RiccatiEquation {
  NormalForm P, Q, R;
  std::vector<std::string> params;

  // Throws UnsupportedFormError when Q normalizes to zero.
  static RiccatiEquation make(NormalForm P, NormalForm Q, NormalForm R, std::vector<std::string> params = {});
  static RiccatiEquation parse(const std::string& P, const std::string& Q, const std::string& R,
                               const std::vector<std::string>& params);
  // y' - λ0 y + y² = s0.
  static RiccatiEquation simple1(const NormalForm& lambda0, const NormalForm& s0);
  // y' - λ0 y - y² = -s0.
  static RiccatiEquation simple2(const NormalForm& lambda0, const NormalForm& s0);

  RiccatiEquation eliminated(const std::vector<Elimination>& elims) const;
  // Parameters that occur inside exponents (never eliminated).
  std::vector<std::string> exponent_parameters() const;
  std::string to_string() const;
};

// y' + P y + Q y² - R.
NormalForm riccati_residual(const RiccatiEquation& eq, const NormalForm& y);

enum class Transform { T3, T4, T5, T6 };
Method method_of(Transform t);

// Throws TransformInapplicableError when R ≡ 0 for T4/T5.
std::pair<NormalForm, NormalForm> to_linear(const RiccatiEquation& eq, Transform t);

// Solution from λ_{n-1}, s_{n-1}; throws DegenerateError when the back-map
// divides by something identically zero.
NormalForm back_map(const RiccatiEquation& eq, Transform t, const NormalForm& lambda_prev, const NormalForm& s_prev);

// y = 1/(xQ) when Q'/Q - P + xQR normalizes to zero.
std::optional<NormalForm> quick_particular(const RiccatiEquation& eq);

enum class Strategy { Auto, T3, T4, T5, T6 };

// Auto: quick check, then the first transform (T3..T6 order) whose trace
// terminates exactly, then the first that terminates conditionally.
Solution solve(const RiccatiEquation& eq, Strategy strategy, const SolveOptions& opts = {});

enum class FamilyKind { T3, T3R, T5R, T6 };
std::string family_name(FamilyKind k);

struct Family {
  FamilyKind kind;
  RiccatiEquation equation;
  Solution solution;
  std::vector<std::string> notes;
};

// Each generator solves the seed (λ0, s0) with the AIM and builds an
// equation with its particular solution. `fn` is the free function: P for
// T3 and T6, R for T3R and T5R. `base` is the lower limit used when an
// exponent needs numeric quadrature.
Family generate_family(FamilyKind kind, const NormalForm& lambda0, const NormalForm& s0, const NormalForm& fn,
                       const SolveOptions& opts = {}, double base = 0.0);

}  // namespace aimsolve
