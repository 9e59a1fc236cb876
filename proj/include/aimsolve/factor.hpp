#pragma once

#include <string>
#include <vector>

#include "aimsolve/polynomial.hpp"

namespace aimsolve {

struct Factor {
  Polynomial factor;  // primitive, positive leading coefficient
  unsigned multiplicity = 1;
};

// Rational roots of f, which must involve no variable other than var.
// Returned sorted ascending, without repetition.
std::vector<Rational> rational_roots(const Polynomial& f, const std::string& var);

// Best-effort factorization over the rationals. Splits off monomials,
// contents, repeated factors and every factor that is linear in one of the
// variables; a remaining piece of degree >= 2 in all its variables is
// returned whole. Constant content is dropped. Output is sorted.
std::vector<Factor> factor(const Polynomial& f);

// Distinct factors only, same guarantees as factor().
std::vector<Polynomial> distinct_factors(const Polynomial& f);

}  // namespace aimsolve
