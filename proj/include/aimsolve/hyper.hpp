#pragma once

#include <map>
#include <string>
#include <vector>

#include "aimsolve/expr.hpp"

namespace aimsolve {

// pFq(a_1..a_p; b_1..b_q; z). Parameters are expressions in the declared
// parameters (usually plain rationals).
struct HyperSpec {
  std::vector<Expr> numerator;
  std::vector<Expr> denominator;
  Expr argument;
};

Rational pochhammer(const Rational& a, unsigned k);
// a(a+1)...(a+k-1): a number when a is constant, else a product tree.
Expr pochhammer(const Expr& a, unsigned k);

// Finite sum when a numerator parameter is a nonpositive integer -n and all
// denominator parameters are numeric and not zero or negative integers.
// Throws NoTruncationError otherwise.
Expr expand_polynomial(const HyperSpec& spec);

// Truncated sum when available, else partial sums until the relative change
// is below tol. Throws NonConvergenceError for divergent (p > q + 1)
// non-truncating series or when max_terms is reached.
double evaluate(const HyperSpec& spec, double x, const std::map<std::string, double>& bindings,
                int max_terms = 2000, double tol = 1e-15);

// Replaces every F[a1,...;b1,...;z] in text by its polynomial expansion
// after substituting `bindings` into parameters and argument.
std::string expand_hyper_markers(const std::string& text, const std::vector<std::string>& params,
                                 const std::map<std::string, Rational>& bindings);

}  // namespace aimsolve
