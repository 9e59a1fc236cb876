#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "aimsolve/normal_form.hpp"
#include "aimsolve/polynomial.hpp"

namespace aimsolve {

// Immutable expression tree over x and named parameters with exact rational
// literals. Log and Integral nodes are only legal inside an exp argument
// once normalized.
class Expr {
 public:
  enum class Kind { Number, Symbol, Sum, Product, Power, Quotient, Negate, Exp, Log, Integral };

  Expr();  // the number 0
  static Expr number(const Rational& q);
  static Expr symbol(const std::string& name);
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr power(const Expr& base, int exponent);
  static Expr quotient(const Expr& num, const Expr& den);
  static Expr negate(const Expr& e);
  static Expr exp(const Expr& arg);
  static Expr log(const Expr& arg);
  // Formal antiderivative with respect to x.
  static Expr integral(const Expr& integrand);

  Kind kind() const;
  const Rational& value() const;  // Number
  const std::string& name() const;  // Symbol
  const std::vector<Expr>& children() const;
  int exponent() const;  // Power

  std::string to_string() const;

  friend Expr operator+(const Expr& a, const Expr& b) { return sum({a, b}); }
  friend Expr operator-(const Expr& a, const Expr& b) { return sum({a, negate(b)}); }
  friend Expr operator*(const Expr& a, const Expr& b) { return product({a, b}); }
  friend Expr operator/(const Expr& a, const Expr& b) { return quotient(a, b); }
  Expr operator-() const { return negate(*this); }

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Parses the expression grammar. `params` lists the allowed parameter names;
// `x` is always the independent variable.
Expr parse_expr(std::string_view text, const std::vector<std::string>& params);

Expr differentiate(const Expr& e);

// Canonical form; throws UnsupportedFormError for exp of a non-polynomial or
// a log/int appearing outside an exponent, DivisionByZeroError for a
// division by something that normalizes to zero.
NormalForm normalize(const Expr& e);

// Canonical tree for a normal form (prints the same as nf.to_string()).
Expr to_expr(const NormalForm& nf);

double evaluate_numeric(const Expr& e, double x, const std::map<std::string, double>& bindings);

}  // namespace aimsolve
