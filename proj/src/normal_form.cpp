#include "aimsolve/normal_form.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "aimsolve/error.hpp"
#include "aimsolve/factor.hpp"

namespace aimsolve {
namespace {

bool is_atom_name(const std::string& name) { return !name.empty() && name.front() == '@'; }

std::vector<std::string> atoms_in(const Polynomial& p) {
  std::vector<std::string> out;
  for (const auto& v : p.used_variables())
    if (is_atom_name(v)) out.push_back(v);
  return out;
}

Rational constant_term(const Polynomial& p) {
  for (const auto& t : p.terms())
    if (t.degree == 0) return t.coeff;
  return 0;
}

Rational floor_of(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(f);
}

const FormalDef& lookup_def(const FormalTablePtr& table, const std::string& name) {
  if (!table) throw std::logic_error("formal atom without definition: " + name);
  auto it = table->find(name);
  if (it == table->end()) throw std::logic_error("formal atom without definition: " + name);
  return it->second;
}

FormalTablePtr restrict_to(const FormalTablePtr& table, const std::vector<std::string>& used) {
  if (!table || used.empty()) return nullptr;
  if (table->size() == used.size()) return table;
  auto out = std::make_shared<FormalTable>();
  for (const auto& n : used) out->emplace(n, lookup_def(table, n));
  return out;
}

std::string fraction_string(const Polynomial& num, const Polynomial& den) {
  if (den.is_constant() && den.constant_value() == 1) return num.to_string();
  auto wrap = [](const Polynomial& p) {
    std::string s = p.to_string();
    return p.size() > 1 ? "(" + s + ")" : s;
  };
  std::string d = den.to_string();
  bool bare = den.is_monomial() && den.used_variables().size() == 1 &&
              den.leading_coefficient() == 1;
  return wrap(num) + "/" + (bare ? d : "(" + d + ")");
}

NormalForm atom_derivative(const FormalDef& def) {
  if (def.kind == FormalDef::Kind::Log) return NormalForm::make(def.arg.derivative(kX), def.arg);
  return NormalForm::make(def.num, def.den);
}

}  // namespace

std::string log_token_name(const Polynomial& arg) { return "@log(" + arg.to_string() + ")"; }

std::string integral_token_name(const Polynomial& num, const Polynomial& den) {
  return "@int(" + fraction_string(num, den) + ")";
}

std::string FormalDef::display() const {
  if (kind == Kind::Log) return "log(" + arg.to_string() + ")";
  return "int(" + fraction_string(num, den) + ")";
}

FormalTablePtr merge_formals(const FormalTablePtr& a, const FormalTablePtr& b) {
  if (!a || a->empty()) return b;
  if (!b || b->empty() || a == b) return a;
  bool subset = true;
  for (const auto& [k, v] : *b) {
    if (!a->count(k)) {
      subset = false;
      break;
    }
  }
  if (subset) return a;
  auto out = std::make_shared<FormalTable>(*a);
  for (const auto& [k, v] : *b) out->emplace(k, v);
  return out;
}

NormalForm NormalForm::build(Polynomial num, Polynomial den, Polynomial e, FormalTablePtr formals,
                             bool coprime) {
  if (den.is_zero()) throw DivisionByZeroError("division by zero");
  if (num.is_zero()) return NormalForm();
  bool changed = false;
  for (const auto& name : atoms_in(e)) {
    std::vector<Polynomial> c = e.coefficients(name);
    if (c.size() > 2) throw UnsupportedFormError("exponent is not linear in " + name);
    const Polynomial& coef = c[1];
    if (coef.depends_on(kX) || !atoms_in(coef).empty()) {
      throw UnsupportedFormError("exponent coefficient of a formal atom must not involve x");
    }
    const FormalDef& def = lookup_def(formals, name);
    if (def.kind != FormalDef::Kind::Log) continue;
    Rational k = floor_of(constant_term(coef));
    if (k == 0) continue;
    e -= Polynomial::variable(name).scaled(k);
    long kk = k.get_num().get_si();
    if (kk > 0) num *= def.arg.pow(static_cast<unsigned>(kk));
    else den *= def.arg.pow(static_cast<unsigned>(-kk));
    changed = true;
  }
  if (!coprime || changed) {
    Polynomial g = gcd(num, den);
    if (!g.is_constant()) {
      num = *exact_divide(num, g);
      den = *exact_divide(den, g);
    }
  }
  Rational c = den.content();
  if (c != 1) {
    Rational inv = 1 / c;
    den = den.scaled(inv);
    num = num.scaled(inv);
  }
  std::vector<std::string> used = atoms_in(e);
  for (const auto& n : atoms_in(num)) used.push_back(n);
  for (const auto& n : atoms_in(den)) used.push_back(n);
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  return NormalForm(std::move(num), std::move(den), std::move(e), restrict_to(formals, used));
}

NormalForm NormalForm::make(const Polynomial& num, const Polynomial& den, const Polynomial& exp_arg,
                            FormalTablePtr formals) {
  return build(num, den, exp_arg, std::move(formals), false);
}

NormalForm NormalForm::exp_of(const NormalForm& arg) {
  if (arg.is_zero()) return NormalForm(Rational(1));
  if (!arg.is_rational() || !arg.den_.is_constant()) {
    throw UnsupportedFormError("exponent must be a polynomial, got " + arg.to_string());
  }
  Polynomial e = arg.num_.scaled(1 / arg.den_.constant_value());
  return build(Polynomial(Rational(1)), Polynomial(Rational(1)), e, arg.formals_, true);
}

NormalForm NormalForm::atom(const std::string& name, const FormalDef& def) {
  auto table = std::make_shared<FormalTable>();
  table->emplace(name, def);
  return NormalForm(Polynomial::variable(name), Polynomial(Rational(1)), Polynomial(), table);
}

Rational NormalForm::constant_value() const {
  return num_.constant_value() / den_.constant_value();
}

bool NormalForm::depends_on(const std::string& var) const {
  return num_.depends_on(var) || den_.depends_on(var) || exp_.depends_on(var);
}

bool NormalForm::has_atoms() const { return !atoms_in(num_).empty() || !atoms_in(den_).empty(); }

NormalForm NormalForm::operator-() const { return NormalForm(-num_, den_, exp_, formals_); }

NormalForm operator+(const NormalForm& a, const NormalForm& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.exp_ != b.exp_) {
    throw UnsupportedFormError("sum of terms with different exponential factors: exp(" +
                               a.exp_.to_string() + ") and exp(" + b.exp_.to_string() + ")");
  }
  FormalTablePtr f = merge_formals(a.formals_, b.formals_);
  if (a.den_ == b.den_) return NormalForm::build(a.num_ + b.num_, a.den_, a.exp_, f, false);
  Polynomial g = gcd(a.den_, b.den_);
  if (g.is_constant()) {
    return NormalForm::build(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, a.exp_, f, false);
  }
  Polynomial da = *exact_divide(a.den_, g);
  Polynomial db = *exact_divide(b.den_, g);
  Polynomial num = a.num_ * db + b.num_ * da;
  if (num.is_zero()) return NormalForm();
  Polynomial h = gcd(num, g);
  if (!h.is_constant()) {
    num = *exact_divide(num, h);
    g = *exact_divide(g, h);
  }
  return NormalForm::build(num, da * db * g, a.exp_, f, true);
}

NormalForm operator*(const NormalForm& a, const NormalForm& b) {
  if (a.is_zero() || b.is_zero()) return NormalForm();
  Polynomial an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
  Polynomial g1 = gcd(an, bd);
  if (!g1.is_constant()) {
    an = *exact_divide(an, g1);
    bd = *exact_divide(bd, g1);
  }
  Polynomial g2 = gcd(bn, ad);
  if (!g2.is_constant()) {
    bn = *exact_divide(bn, g2);
    ad = *exact_divide(ad, g2);
  }
  return NormalForm::build(an * bn, ad * bd, a.exp_ + b.exp_, merge_formals(a.formals_, b.formals_),
                           true);
}

NormalForm NormalForm::inverse() const {
  if (is_zero()) throw DivisionByZeroError("division by an expression that normalizes to zero");
  return build(den_, num_, -exp_, formals_, true);
}

NormalForm operator/(const NormalForm& a, const NormalForm& b) { return a * b.inverse(); }

NormalForm NormalForm::pow(int k) const {
  if (k == 0) return NormalForm(Rational(1));
  if (k < 0) return inverse().pow(-k);
  auto uk = static_cast<unsigned>(k);
  return build(num_.pow(uk), den_.pow(uk), exp_.scaled(Rational(k)), formals_, true);
}

bool operator==(const NormalForm& a, const NormalForm& b) {
  return a.num_ == b.num_ && a.den_ == b.den_ && a.exp_ == b.exp_;
}

NormalForm NormalForm::derivative() const {
  if (is_zero()) return NormalForm();
  NormalForm rat_part = build(num_.derivative(kX) * den_ - num_ * den_.derivative(kX), den_ * den_, exp_,
                              formals_, false);
  for (const auto& name : atoms_in(num_)) {
    rat_part += build(num_.derivative(name), den_, exp_, formals_, false) * atom_derivative(lookup_def(formals_, name));
  }
  if (exp_.is_zero()) return rat_part;
  NormalForm de(exp_.derivative(kX));
  for (const auto& name : atoms_in(exp_)) {
    Polynomial coef = exp_.coefficients(name)[1];
    de += NormalForm(coef) * atom_derivative(lookup_def(formals_, name));
  }
  NormalForm self(num_, den_, exp_, formals_);
  return rat_part + self * de;
}

namespace {

NormalForm horner_nf(const Polynomial& p, const std::string& var, const NormalForm& value) {
  std::vector<Polynomial> c = p.coefficients(var);
  NormalForm acc;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * value + NormalForm(c[i]);
  return acc;
}

}  // namespace

NormalForm NormalForm::substitute(const std::string& var, const NormalForm& value) const {
  if (!value.is_rational()) throw UnsupportedFormError("substituted value must not contain exp");
  bool in_defs = false;
  if (formals_) {
    for (const auto& [name, def] : *formals_) {
      if (def.kind == FormalDef::Kind::Integral && (def.num.depends_on(var) || def.den.depends_on(var)))
        in_defs = true;
    }
  }
  if (!depends_on(var) && !in_defs) return *this;
  Polynomial e = exp_;
  FormalTablePtr table = merge_formals(formals_, value.formals_);
  if (in_defs) {
    auto fresh = std::make_shared<FormalTable>();
    for (const auto& [name, def] : *formals_) {
      if (def.kind != FormalDef::Kind::Integral || (!def.num.depends_on(var) && !def.den.depends_on(var))) {
        fresh->emplace(name, def);
        continue;
      }
      NormalForm integrand = NormalForm::make(def.num, def.den).substitute(var, value);
      FormalDef nd = def;
      nd.num = integrand.num_;
      nd.den = integrand.den_;
      if (def.closed) {
        NormalForm cf = NormalForm::make(def.closed->first, def.closed->second).substitute(var, value);
        nd.closed = std::make_pair(cf.num_, cf.den_);
      }
      std::string nn = integral_token_name(nd.num, nd.den);
      fresh->emplace(nn, nd);
      e = e.substitute(name, Polynomial::variable(nn));
    }
    table = merge_formals(fresh, value.formals_);
  }
  if (e.depends_on(var)) {
    if (!value.is_polynomial()) {
      throw UnsupportedFormError("cannot substitute a non-polynomial value into an exponent");
    }
    e = e.substitute(var, value.num_.scaled(1 / value.den_.constant_value()));
  }
  NormalForm n = horner_nf(num_, var, value);
  NormalForm d = horner_nf(den_, var, value);
  NormalForm scale = build(Polynomial(Rational(1)), Polynomial(Rational(1)), e, table, true);
  return n / d * scale;
}

NormalForm NormalForm::substitute(const std::map<std::string, Rational>& values) const {
  NormalForm out = *this;
  for (const auto& [name, v] : values) out = out.substitute(name, NormalForm(v));
  return out;
}

double formal_value(const FormalDef& def, double x, const std::function<double(const std::string&)>& lookup) {
  auto value_of = [&](const std::string& n) { return n == kX ? x : lookup(n); };
  if (def.kind == FormalDef::Kind::Log) {
    double p = def.arg.evaluate(value_of);
    if (!(p > 0)) throw PoleError("log argument " + def.arg.to_string() + " is not positive at x=" + std::to_string(x));
    return std::log(p);
  }
  if (def.closed) {
    double d = def.closed->second.evaluate(value_of);
    if (d == 0) throw PoleError("pole of antiderivative at x=" + std::to_string(x));
    return def.closed->first.evaluate(value_of) / d;
  }
  if (x == def.base) return 0.0;
  auto integrand = [&](double t) {
    auto at = [&](const std::string& n) { return n == kX ? t : lookup(n); };
    double d = def.den.evaluate(at);
    if (d == 0) throw PoleError("pole of integrand at x=" + std::to_string(t));
    return def.num.evaluate(at) / d;
  };
  double err = 0;
  double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, def.base, x, 15, 1e-13, &err);
  if (!std::isfinite(v) || err > 1e-8 * std::max(1.0, std::fabs(v))) {
    throw QuadratureError("quadrature of " + def.display() + " did not converge");
  }
  return v;
}

double NormalForm::evaluate(double x, const std::function<double(const std::string&)>& lookup) const {
  auto value_of = [&](const std::string& n) -> double {
    if (n == kX) return x;
    if (is_atom_name(n)) return formal_value(lookup_def(formals_, n), x, lookup);
    return lookup(n);
  };
  double d = den_.evaluate(value_of);
  if (d == 0) throw PoleError("pole at x=" + std::to_string(x));
  double v = num_.evaluate(value_of) / d;
  if (!exp_.is_zero()) v *= std::exp(exp_.evaluate(value_of));
  return v;
}

double NormalForm::evaluate(double x, const std::map<std::string, double>& bindings) const {
  return evaluate(x, [&](const std::string& n) {
    auto it = bindings.find(n);
    if (it == bindings.end()) throw UnboundParameterError(n);
    return it->second;
  });
}

std::vector<std::string> NormalForm::parameters() const {
  std::set<std::string> out;
  auto add = [&](const Polynomial& p) {
    for (const auto& v : p.used_variables())
      if (v != kX && !is_atom_name(v)) out.insert(v);
  };
  add(num_);
  add(den_);
  add(exp_);
  if (formals_) {
    for (const auto& [name, def] : *formals_) {
      add(def.arg);
      add(def.num);
      add(def.den);
    }
  }
  return {out.begin(), out.end()};
}

std::string NormalForm::to_string() const {
  if (num_.is_zero()) return "0";
  std::string rat = fraction_string(num_, den_);
  if (exp_.is_zero()) return rat;
  auto names = [&](const std::string& n) {
    return is_atom_name(n) ? lookup_def(formals_, n).display() : n;
  };
  std::string e = "exp(" + exp_.to_string(names) + ")";
  bool unit_den = den_.is_constant();
  if (unit_den && num_.is_constant() && num_.constant_value() == 1) return e;
  if (unit_den && num_.is_constant() && num_.constant_value() == -1) return "-" + e;
  if (unit_den && num_.size() > 1) return "(" + rat + ")*" + e;
  if (!unit_den && num_.size() > 1) return fraction_string(num_, den_) + "*" + e;
  return rat + "*" + e;
}

NormalForm log_of(const NormalForm& arg) {
  if (!arg.is_rational() || arg.has_atoms()) throw UnsupportedFormError("log argument must be rational in x");
  for (const auto& v : arg.parameters()) {
    throw UnsupportedFormError("log argument must not depend on parameter " + v);
  }
  if (arg.is_zero()) throw UnsupportedFormError("log of zero");
  if (arg.numerator() != arg.numerator().primitive_part()) {
    throw UnsupportedFormError("log argument must have unit content and positive leading coefficient");
  }
  NormalForm out;
  auto add = [&](const Polynomial& p, int sign) {
    for (const auto& f : factor(p)) {
      FormalDef def;
      def.kind = FormalDef::Kind::Log;
      def.arg = f.factor;
      out += NormalForm::atom(log_token_name(f.factor), def) * NormalForm(Rational(sign * static_cast<int>(f.multiplicity)));
    }
  };
  add(arg.numerator(), 1);
  add(arg.denominator(), -1);
  return out;
}

std::vector<Polynomial> zero_constraints(const NormalForm& nf) {
  if (nf.is_zero()) return {};
  const Polynomial& n = nf.numerator();
  Polynomial c = n.depends_on(kX) ? content_wrt(n, kX) : n.primitive_part();
  std::vector<Polynomial> out;
  if (c.is_constant()) return out;
  for (auto& f : distinct_factors(c)) {
    if (f.is_monomial() && f.total_degree() == 1) continue;
    out.push_back(f);
  }
  return out;
}

std::string constraint_to_string(const Polynomial& c) { return c.to_string() + " = 0"; }

}  // namespace aimsolve
