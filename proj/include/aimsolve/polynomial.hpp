#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace aimsolve {

using Rational = mpq_class;
using Integer = mpz_class;

// Name of the independent variable.
inline const std::string kX = "x";

// Formal atoms (logarithms, opaque antiderivatives) use names that cannot
// come out of the expression parser: anything not starting with a letter.
bool is_formal_name(std::string_view name);

// Fixed variable order: x first, then parameters alphabetically, then formal
// atoms. Combined with graded-lex this is the canonical monomial order.
bool variable_before(std::string_view a, std::string_view b);

using Exponents = std::vector<std::uint32_t>;
using VarList = std::shared_ptr<const std::vector<std::string>>;

// Sparse multivariate polynomial with exact rational coefficients.
//
// Terms are kept strictly descending in graded-lex order over the ring's
// variable list; no stored coefficient is zero. Two polynomials built over
// different variable lists are embedded into the union before combining.
class Polynomial {
 public:
  struct Term {
    Exponents exps;
    std::uint32_t degree = 0;
    Rational coeff;
  };

  Polynomial();
  explicit Polynomial(const Rational& c);
  explicit Polynomial(long c) : Polynomial(Rational(c)) {}

  static Polynomial variable(const std::string& name, std::uint32_t power = 1);
  // Terms need not be sorted or combined.
  static Polynomial from_terms(VarList vars, std::vector<Term> terms);

  const std::vector<std::string>& variables() const { return *vars_; }
  const VarList& var_list() const { return vars_; }
  std::vector<std::string> used_variables() const;
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  Rational constant_value() const;  // requires is_constant()
  const Rational& leading_coefficient() const;
  std::uint32_t total_degree() const;
  std::uint32_t degree(std::string_view var) const;
  bool depends_on(std::string_view var) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const Rational& c) const;
  Polynomial pow(unsigned k) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }
  // Total order used for deterministic sorting of factor lists.
  friend bool operator<(const Polynomial& a, const Polynomial& b);

  Polynomial derivative(std::string_view var) const;
  // Coefficients in powers of `var`, index = exponent.
  std::vector<Polynomial> coefficients(std::string_view var) const;
  static Polynomial from_coefficients(std::string_view var, const std::vector<Polynomial>& coeffs);
  Polynomial substitute(std::string_view var, const Polynomial& value) const;
  // Drop terms whose degree in `vars` exceeds `max_degree`.
  Polynomial truncated(const std::vector<std::string>& vars, std::uint32_t max_degree) const;
  // Divide out the monomial x^k..., returning the removed exponents by name.
  std::map<std::string, std::uint32_t> monomial_content() const;
  Polynomial divide_monomial(const std::map<std::string, std::uint32_t>& m) const;

  Rational evaluate(const std::map<std::string, Rational>& values) const;
  double evaluate(const std::function<double(const std::string&)>& value_of) const;
  // Partial evaluation: substitutes numbers for the named variables only.
  Polynomial partial_evaluate(const std::map<std::string, Rational>& values) const;

  // Rational content with the sign of the leading coefficient: p = content * primitive.
  Rational content() const;
  // Integer coefficients, coprime, positive leading coefficient.
  Polynomial primitive_part() const;

  Polynomial embedded(const VarList& vars) const;
  // name_of maps variable names to their printed form (identity if empty).
  std::string to_string(const std::function<std::string(const std::string&)>& name_of = {}) const;

 private:
  Polynomial(VarList vars, std::vector<Term> terms)
      : vars_(std::move(vars)), terms_(std::move(terms)) {}
  int index_of(std::string_view var) const;

  VarList vars_;
  std::vector<Term> terms_;

  friend class Aligned;
  friend std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b);
};

// Views two polynomials over a common variable list, copying only when the
// lists differ.
class Aligned {
 public:
  Aligned(const Polynomial& a, const Polynomial& b);
  const Polynomial& a() const { return *a_; }
  const Polynomial& b() const { return *b_; }

 private:
  const Polynomial* a_;
  const Polynomial* b_;
  Polynomial ta_, tb_;
};

// Embeds both operands into a common variable list.
std::pair<Polynomial, Polynomial> align(const Polynomial& a, const Polynomial& b);

// a / b if b divides a exactly, otherwise nullopt. Throws on b == 0.
std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b);

// Greatest common divisor as a primitive integer polynomial with positive
// leading coefficient (subresultant PRS, recursive in the variables).
// gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

// gcd of the coefficients of p viewed as a polynomial in var.
Polynomial content_wrt(const Polynomial& p, const std::string& var);

std::string rational_to_string(const Rational& q);

}  // namespace aimsolve
