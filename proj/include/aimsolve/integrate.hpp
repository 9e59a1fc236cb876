#pragma once

#include <string>
#include <vector>

#include "aimsolve/normal_form.hpp"

namespace aimsolve {

struct LogTerm {
  Polynomial arg;          // primitive, positive leading coefficient, x only
  NormalForm coefficient;  // x-free
};

// Antiderivative of a rational function in x split as
//   polynomial + rational + sum coefficient*log(arg) + int(remainder).
// The remainder is left when the log coefficients are not rational numbers
// (for example 1/(x^2 + 1)) or the denominator mixes x with parameters.
struct Antiderivative {
  NormalForm polynomial;
  NormalForm rational;
  std::vector<LogTerm> logs;
  NormalForm remainder;

  bool closed() const { return remainder.is_zero(); }
  // Exponent ingredient: polynomial and logs as they are, the rest as one
  // integral atom (with the rational part as its closed form when there is
  // no remainder). `base` is the lower limit used for quadrature.
  NormalForm as_exponent(double base = 0.0) const;
  std::string to_string() const;
};

// Throws UnsupportedFormError when f contains exp or formal atoms.
Antiderivative integrate(const NormalForm& f);

inline NormalForm integral_exponent(const NormalForm& f, double base = 0.0) {
  return integrate(f).as_exponent(base);
}

}  // namespace aimsolve
