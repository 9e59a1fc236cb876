#include "aimsolve/expr.hpp"

#include <cmath>

#include "aimsolve/error.hpp"
#include "aimsolve/integrate.hpp"

namespace aimsolve {

struct Expr::Node {
  Kind kind = Kind::Number;
  Rational value;
  std::string name;
  std::vector<Expr> children;
  int exponent = 0;
};

namespace {

std::shared_ptr<Expr::Node> fresh(Expr::Kind k) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = k;
  return n;
}

bool is_number(const Expr& e, const Rational& v) { return e.kind() == Expr::Kind::Number && e.value() == v; }

}  // namespace

Expr::Expr() : node_(fresh(Kind::Number)) {}

Expr Expr::number(const Rational& q) {
  auto n = fresh(Kind::Number);
  n->value = q;
  n->value.canonicalize();
  return Expr(n);
}

Expr Expr::symbol(const std::string& name) {
  auto n = fresh(Kind::Symbol);
  n->name = name;
  return Expr(n);
}

Expr Expr::sum(std::vector<Expr> terms) {
  if (terms.size() == 1) return terms[0];
  if (terms.empty()) return Expr();
  auto n = fresh(Kind::Sum);
  n->children = std::move(terms);
  return Expr(n);
}

Expr Expr::product(std::vector<Expr> factors) {
  if (factors.size() == 1) return factors[0];
  if (factors.empty()) return number(1);
  auto n = fresh(Kind::Product);
  n->children = std::move(factors);
  return Expr(n);
}

Expr Expr::power(const Expr& base, int exponent) {
  auto n = fresh(Kind::Power);
  n->children = {base};
  n->exponent = exponent;
  return Expr(n);
}

Expr Expr::quotient(const Expr& num, const Expr& den) {
  auto n = fresh(Kind::Quotient);
  n->children = {num, den};
  return Expr(n);
}

Expr Expr::negate(const Expr& e) {
  auto n = fresh(Kind::Negate);
  n->children = {e};
  return Expr(n);
}

Expr Expr::exp(const Expr& arg) {
  auto n = fresh(Kind::Exp);
  n->children = {arg};
  return Expr(n);
}

Expr Expr::log(const Expr& arg) {
  auto n = fresh(Kind::Log);
  n->children = {arg};
  return Expr(n);
}

Expr Expr::integral(const Expr& integrand) {
  auto n = fresh(Kind::Integral);
  n->children = {integrand};
  return Expr(n);
}

Expr::Kind Expr::kind() const { return node_->kind; }
const Rational& Expr::value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
const std::vector<Expr>& Expr::children() const { return node_->children; }
int Expr::exponent() const { return node_->exponent; }

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

int precedence(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Number:
      return (e.value().get_den() == 1 && sgn(e.value()) >= 0) ? 5 : 2;
    case Expr::Kind::Symbol:
    case Expr::Kind::Exp:
    case Expr::Kind::Log:
    case Expr::Kind::Integral:
      return 5;
    case Expr::Kind::Power:
      return 4;
    case Expr::Kind::Product:
    case Expr::Kind::Quotient:
      return 3;
    case Expr::Kind::Negate:
      return 2;
    case Expr::Kind::Sum:
      return 1;
  }
  return 0;
}

std::string paren(const std::string& s) { return "(" + s + ")"; }

std::string wrap_below(const Expr& e, int level) {
  std::string s = e.to_string();
  return precedence(e) < level ? paren(s) : s;
}

}  // namespace

std::string Expr::to_string() const {
  const auto& ch = children();
  switch (kind()) {
    case Kind::Number:
      return rational_to_string(value());
    case Kind::Symbol:
      return name();
    case Kind::Sum: {
      std::string s = wrap_below(ch[0], 2);
      for (std::size_t i = 1; i < ch.size(); ++i) {
        const Expr& c = ch[i];
        if (c.kind() == Kind::Negate) {
          s += " - " + wrap_below(c.children()[0], 3);
        } else if (c.kind() == Kind::Number && sgn(c.value()) < 0) {
          s += " - " + rational_to_string(-c.value());
        } else {
          s += " + " + wrap_below(c, 2);
        }
      }
      return s;
    }
    case Kind::Product: {
      std::string s;
      for (std::size_t i = 0; i < ch.size(); ++i) {
        if (i) s += "*";
        s += wrap_below(ch[i], 3);
      }
      return s;
    }
    case Kind::Quotient: {
      const Expr& n = ch[0];
      const Expr& d = ch[1];
      std::string ns = (precedence(n) < 3 || n.kind() == Kind::Quotient) ? paren(n.to_string()) : n.to_string();
      bool bare = d.kind() == Kind::Symbol || d.kind() == Kind::Exp || d.kind() == Kind::Log ||
                  d.kind() == Kind::Integral || (d.kind() == Kind::Number && precedence(d) == 5) ||
                  (d.kind() == Kind::Power && d.children()[0].kind() == Kind::Symbol);
      return ns + "/" + (bare ? d.to_string() : paren(d.to_string()));
    }
    case Kind::Power:
      return wrap_below(ch[0], 5) + "^" + std::to_string(exponent());
    case Kind::Negate:
      return "-" + wrap_below(ch[0], 3);
    case Kind::Exp:
      return "exp(" + ch[0].to_string() + ")";
    case Kind::Log:
      return "log(" + ch[0].to_string() + ")";
    case Kind::Integral:
      return "int(" + ch[0].to_string() + ")";
  }
  return "";
}

// ---------------------------------------------------------------------------
// Differentiation
// ---------------------------------------------------------------------------

namespace {

Expr plus(const Expr& a, const Expr& b) {
  if (is_number(a, 0)) return b;
  if (is_number(b, 0)) return a;
  return Expr::sum({a, b});
}

Expr times(const Expr& a, const Expr& b) {
  if (is_number(a, 0) || is_number(b, 0)) return Expr();
  if (is_number(a, 1)) return b;
  if (is_number(b, 1)) return a;
  return Expr::product({a, b});
}

}  // namespace

Expr differentiate(const Expr& e) {
  const auto& ch = e.children();
  switch (e.kind()) {
    case Expr::Kind::Number:
      return Expr();
    case Expr::Kind::Symbol:
      return Expr::number(e.name() == kX ? 1 : 0);
    case Expr::Kind::Sum: {
      Expr acc;
      for (const auto& c : ch) acc = plus(acc, differentiate(c));
      return acc;
    }
    case Expr::Kind::Product: {
      Expr acc;
      for (std::size_t i = 0; i < ch.size(); ++i) {
        Expr term = differentiate(ch[i]);
        for (std::size_t j = 0; j < ch.size(); ++j)
          if (j != i) term = times(term, ch[j]);
        acc = plus(acc, term);
      }
      return acc;
    }
    case Expr::Kind::Quotient: {
      Expr du = differentiate(ch[0]);
      Expr dv = differentiate(ch[1]);
      if (is_number(dv, 0)) return is_number(du, 0) ? Expr() : Expr::quotient(du, ch[1]);
      Expr top = plus(times(du, ch[1]), Expr::negate(times(ch[0], dv)));
      return Expr::quotient(top, Expr::power(ch[1], 2));
    }
    case Expr::Kind::Power: {
      int k = e.exponent();
      if (k == 0) return Expr();
      Expr du = differentiate(ch[0]);
      Expr lower = k - 1 == 1 ? ch[0] : Expr::power(ch[0], k - 1);
      if (k - 1 == 0) lower = Expr::number(1);
      return times(times(Expr::number(k), lower), du);
    }
    case Expr::Kind::Negate: {
      Expr d = differentiate(ch[0]);
      return is_number(d, 0) ? d : Expr::negate(d);
    }
    case Expr::Kind::Exp:
      return times(e, differentiate(ch[0]));
    case Expr::Kind::Log: {
      Expr d = differentiate(ch[0]);
      return is_number(d, 0) ? Expr() : Expr::quotient(d, ch[0]);
    }
    case Expr::Kind::Integral:
      return ch[0];
  }
  return Expr();
}

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------

namespace {

// May leave formal atoms in the numerator (exponent ingredients).
NormalForm normalize_raw(const Expr& e) {
  const auto& ch = e.children();
  switch (e.kind()) {
    case Expr::Kind::Number:
      return NormalForm(e.value());
    case Expr::Kind::Symbol:
      return NormalForm::variable(e.name());
    case Expr::Kind::Sum: {
      NormalForm acc;
      for (const auto& c : ch) acc += normalize_raw(c);
      return acc;
    }
    case Expr::Kind::Product: {
      NormalForm acc(Rational(1));
      for (const auto& c : ch) acc *= normalize_raw(c);
      return acc;
    }
    case Expr::Kind::Quotient: {
      NormalForm d = normalize_raw(ch[1]);
      if (d.is_zero()) throw DivisionByZeroError("division by " + ch[1].to_string() + ", which is zero");
      return normalize_raw(ch[0]) / d;
    }
    case Expr::Kind::Power: {
      NormalForm b = normalize_raw(ch[0]);
      if (b.is_zero() && e.exponent() < 0) throw DivisionByZeroError("negative power of zero");
      return b.pow(e.exponent());
    }
    case Expr::Kind::Negate:
      return -normalize_raw(ch[0]);
    case Expr::Kind::Exp:
      return NormalForm::exp_of(normalize_raw(ch[0]));
    case Expr::Kind::Log:
      return log_of(normalize_raw(ch[0]));
    case Expr::Kind::Integral:
      return integral_exponent(normalize_raw(ch[0]));
  }
  return NormalForm();
}

Expr poly_to_expr(const Polynomial& p, const FormalTablePtr& formals) {
  if (p.is_zero()) return Expr();
  const auto& vars = p.variables();
  std::vector<Expr> terms;
  for (const auto& t : p.terms()) {
    std::vector<Expr> factors;
    Rational c = t.coeff;
    bool negative = sgn(c) < 0;
    if (negative) c = -c;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (t.exps[i] == 0) continue;
      Expr base;
      if (!vars[i].empty() && vars[i].front() == '@') {
        const FormalDef& def = formals->at(vars[i]);
        if (def.kind == FormalDef::Kind::Log) {
          base = Expr::log(poly_to_expr(def.arg, nullptr));
        } else {
          base = Expr::integral(to_expr(NormalForm::make(def.num, def.den)));
        }
      } else {
        base = Expr::symbol(vars[i]);
      }
      factors.push_back(t.exps[i] == 1 ? base : Expr::power(base, static_cast<int>(t.exps[i])));
    }
    Expr term;
    if (factors.empty()) {
      term = Expr::number(c);
    } else {
      if (c != 1) factors.insert(factors.begin(), Expr::number(c));
      term = Expr::product(factors);
    }
    terms.push_back(negative ? Expr::negate(term) : term);
  }
  return Expr::sum(terms);
}

}  // namespace

NormalForm normalize(const Expr& e) {
  NormalForm nf = normalize_raw(e);
  if (nf.has_atoms()) {
    throw UnsupportedFormError("log and int are only supported inside an exponent: " + e.to_string());
  }
  return nf;
}

Expr to_expr(const NormalForm& nf) {
  if (nf.is_zero()) return Expr();
  Expr rat = poly_to_expr(nf.numerator(), nullptr);
  if (!(nf.denominator().is_constant() && nf.denominator().constant_value() == 1)) {
    rat = Expr::quotient(rat, poly_to_expr(nf.denominator(), nullptr));
  }
  if (nf.is_rational()) return rat;
  Expr ex = Expr::exp(poly_to_expr(nf.exp_arg(), nf.formals()));
  if (is_number(rat, 1)) return ex;
  return Expr::product({rat, ex});
}

// ---------------------------------------------------------------------------
// Numeric evaluation
// ---------------------------------------------------------------------------

double evaluate_numeric(const Expr& e, double x, const std::map<std::string, double>& bindings) {
  const auto& ch = e.children();
  switch (e.kind()) {
    case Expr::Kind::Number:
      return e.value().get_d();
    case Expr::Kind::Symbol: {
      if (e.name() == kX) return x;
      auto it = bindings.find(e.name());
      if (it == bindings.end()) throw UnboundParameterError(e.name());
      return it->second;
    }
    case Expr::Kind::Sum: {
      double s = 0;
      for (const auto& c : ch) s += evaluate_numeric(c, x, bindings);
      return s;
    }
    case Expr::Kind::Product: {
      double s = 1;
      for (const auto& c : ch) s *= evaluate_numeric(c, x, bindings);
      return s;
    }
    case Expr::Kind::Quotient: {
      double d = evaluate_numeric(ch[1], x, bindings);
      if (d == 0) throw PoleError("pole at x=" + std::to_string(x));
      return evaluate_numeric(ch[0], x, bindings) / d;
    }
    case Expr::Kind::Power: {
      double b = evaluate_numeric(ch[0], x, bindings);
      if (b == 0 && e.exponent() < 0) throw PoleError("pole at x=" + std::to_string(x));
      return std::pow(b, e.exponent());
    }
    case Expr::Kind::Negate:
      return -evaluate_numeric(ch[0], x, bindings);
    case Expr::Kind::Exp:
      return std::exp(evaluate_numeric(ch[0], x, bindings));
    case Expr::Kind::Log: {
      double a = evaluate_numeric(ch[0], x, bindings);
      if (!(a > 0)) throw PoleError("log of a non-positive value at x=" + std::to_string(x));
      return std::log(a);
    }
    case Expr::Kind::Integral:
      return normalize_raw(e).evaluate(x, bindings);
  }
  return 0.0;
}

}  // namespace aimsolve
