#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aimsolve/polynomial.hpp"

namespace aimsolve {

// Definition of a formal atom that may appear (linearly, with x-free
// coefficients) inside an exponent.
//
// Log: log(arg) for a primitive polynomial arg in x with positive leading
// coefficient; d/dx = arg'/arg. Numerically defined only where arg > 0.
//
// Integral: an antiderivative of num/den. When `closed` is set
// it is an exact rational antiderivative used for evaluation; otherwise
// values come from quadrature starting at `base`.
struct FormalDef {
  enum class Kind { Log, Integral };
  Kind kind = Kind::Log;
  Polynomial arg;
  Polynomial num, den;
  std::optional<std::pair<Polynomial, Polynomial>> closed;
  double base = 0.0;

  std::string display() const;  // "log(x - 1)" or "int((...)/(...))"
};

using FormalTable = std::map<std::string, FormalDef>;
using FormalTablePtr = std::shared_ptr<const FormalTable>;

std::string log_token_name(const Polynomial& arg);
std::string integral_token_name(const Polynomial& num, const Polynomial& den);

// Canonical (num/den)·exp(exp_arg).
//
// den is a primitive integer polynomial with positive leading coefficient,
// gcd(num, den) = 1, num carries the rational scale. num and den never
// contain formal atoms; exp_arg is polynomial in x and parameters plus
// x-free multiples of formal atoms. For every log atom the constant term of
// its coefficient lies in [0, 1); integer parts are moved into num/den.
class NormalForm {
 public:
  NormalForm() : num_(), den_(Rational(1)) {}
  explicit NormalForm(const Rational& c) : num_(c), den_(Rational(1)) {}
  explicit NormalForm(const Polynomial& p) : num_(p), den_(Rational(1)) {}

  // Canonicalizing constructor. Throws DivisionByZeroError if den == 0.
  static NormalForm make(const Polynomial& num, const Polynomial& den,
                         const Polynomial& exp_arg = Polynomial(), FormalTablePtr formals = nullptr);
  static NormalForm variable(const std::string& name) { return NormalForm(Polynomial::variable(name)); }
  // exp(arg) where arg must satisfy the exponent rules above.
  static NormalForm exp_of(const NormalForm& arg);
  // Formal atom as a bare polynomial variable; only meaningful as an
  // exponent ingredient.
  static NormalForm atom(const std::string& name, const FormalDef& def);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  const Polynomial& exp_arg() const { return exp_; }
  const FormalTablePtr& formals() const { return formals_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_rational() const { return exp_.is_zero(); }
  bool is_polynomial() const { return exp_.is_zero() && den_.is_constant(); }
  bool is_constant() const { return exp_.is_zero() && num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const;  // requires is_constant()
  bool depends_on(const std::string& var) const;
  bool has_atoms() const;  // formal atoms in num or den (only transiently)

  NormalForm operator-() const;
  friend NormalForm operator+(const NormalForm& a, const NormalForm& b);
  friend NormalForm operator-(const NormalForm& a, const NormalForm& b) { return a + (-b); }
  friend NormalForm operator*(const NormalForm& a, const NormalForm& b);
  friend NormalForm operator/(const NormalForm& a, const NormalForm& b);
  NormalForm& operator+=(const NormalForm& o) { return *this = *this + o; }
  NormalForm& operator-=(const NormalForm& o) { return *this = *this - o; }
  NormalForm& operator*=(const NormalForm& o) { return *this = *this * o; }
  NormalForm inverse() const;
  NormalForm pow(int k) const;

  friend bool operator==(const NormalForm& a, const NormalForm& b);
  friend bool operator!=(const NormalForm& a, const NormalForm& b) { return !(a == b); }

  NormalForm derivative() const;  // d/dx
  // Replace a parameter (or x) by a rational expression. The exponent may
  // only receive polynomial values.
  NormalForm substitute(const std::string& var, const NormalForm& value) const;
  NormalForm substitute(const std::map<std::string, Rational>& values) const;

  // Floating value at x. Throws PoleError at a zero of the denominator and
  // UnboundParameterError for a parameter without a binding.
  double evaluate(double x, const std::map<std::string, double>& bindings) const;
  double evaluate(double x, const std::function<double(const std::string&)>& lookup) const;

  // Parameters (not x, not atoms) appearing anywhere.
  std::vector<std::string> parameters() const;
  std::string to_string() const;

 private:
  // Canonicalizes; when coprime is set the caller guarantees gcd(num, den) = 1.
  static NormalForm build(Polynomial num, Polynomial den, Polynomial e, FormalTablePtr formals,
                          bool coprime);
  NormalForm(Polynomial num, Polynomial den, Polynomial e, FormalTablePtr f)
      : num_(std::move(num)), den_(std::move(den)), exp_(std::move(e)), formals_(std::move(f)) {}

  Polynomial num_, den_, exp_;
  FormalTablePtr formals_;
};

// Merge atom tables (same name means same atom).
FormalTablePtr merge_formals(const FormalTablePtr& a, const FormalTablePtr& b);

// Formal log of a rational function in x alone, as an exponent
// ingredient: sum of multiplicity * log(factor). Throws UnsupportedFormError
// if the argument carries a constant factor other than 1, depends on
// parameters, or contains exp.
NormalForm log_of(const NormalForm& arg);

// x-free factors of the numerator (canonical constraints). Factors that are
// a single bare parameter are left out.
std::vector<Polynomial> zero_constraints(const NormalForm& nf);

// Numerical value of an atom at x.
double formal_value(const FormalDef& def, double x, const std::function<double(const std::string&)>& lookup);

std::string constraint_to_string(const Polynomial& c);

}  // namespace aimsolve
