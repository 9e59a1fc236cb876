#include "aimsolve/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <stdexcept>

#include "aimsolve/error.hpp"

namespace aimsolve {

namespace {

int variable_rank(std::string_view name) {
  if (name == kX) return 0;
  return is_formal_name(name) ? 2 : 1;
}

const VarList& empty_vars() {
  static const VarList vars = std::make_shared<const std::vector<std::string>>();
  return vars;
}

// Descending graded-lex comparison: true when a sorts before b.
bool term_before(const Polynomial::Term& a, const Polynomial::Term& b) {
  if (a.degree != b.degree) return a.degree > b.degree;
  for (std::size_t i = 0; i < a.exps.size(); ++i) {
    if (a.exps[i] != b.exps[i]) return a.exps[i] > b.exps[i];
  }
  return false;
}

int compare_exps(const Polynomial::Term& a, const Polynomial::Term& b) {
  if (term_before(a, b)) return -1;
  if (term_before(b, a)) return 1;
  return 0;
}

void sort_and_combine(std::vector<Polynomial::Term>& terms) {
  std::sort(terms.begin(), terms.end(), term_before);
  std::vector<Polynomial::Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().degree == t.degree && out.back().exps == t.exps) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
  terms = std::move(out);
}

// Merge b*sign into a; both sorted descending.
std::vector<Polynomial::Term> merge_terms(const std::vector<Polynomial::Term>& a,
                                          const std::vector<Polynomial::Term>& b, bool subtract) {
  std::vector<Polynomial::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size()) {
      c = 1;
    } else if (j == b.size()) {
      c = -1;
    } else {
      c = compare_exps(a[i], b[j]);
    }
    if (c < 0) {
      out.push_back(a[i++]);
    } else if (c > 0) {
      out.push_back(b[j++]);
      if (subtract) out.back().coeff = -out.back().coeff;
    } else {
      Rational s = subtract ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
      if (sgn(s) != 0) out.push_back({a[i].exps, a[i].degree, s});
      ++i;
      ++j;
    }
  }
  return out;
}

VarList union_vars(const VarList& a, const VarList& b) {
  if (a == b || *a == *b) return a;
  if (a->empty()) return b;
  if (b->empty()) return a;
  std::vector<std::string> merged;
  merged.reserve(a->size() + b->size());
  std::merge(a->begin(), a->end(), b->begin(), b->end(), std::back_inserter(merged),
             [](const std::string& l, const std::string& r) { return variable_before(l, r); });
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  if (merged == *a) return a;
  if (merged == *b) return b;
  return std::make_shared<const std::vector<std::string>>(std::move(merged));
}

Integer lcm_of_denominators(const std::vector<Polynomial::Term>& terms) {
  Integer l = 1;
  for (const auto& t : terms) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  return l;
}

Integer gcd_of_numerators(const std::vector<Polynomial::Term>& terms) {
  Integer g = 0;
  for (const auto& t : terms) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
    if (g == 1) break;
  }
  return g;
}

struct ExponentsHash {
  std::size_t operator()(const Exponents& e) const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (auto v : e) h = (h ^ v) * 0x100000001b3ULL;
    return h;
  }
};

}  // namespace

bool is_formal_name(std::string_view name) {
  return name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()));
}

bool variable_before(std::string_view a, std::string_view b) {
  int ra = variable_rank(a);
  int rb = variable_rank(b);
  if (ra != rb) return ra < rb;
  return a < b;
}

std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Polynomial::Polynomial() : vars_(empty_vars()) {}

Polynomial::Polynomial(const Rational& c) : vars_(empty_vars()) {
  if (sgn(c) != 0) terms_.push_back({{}, 0, c});
}

Polynomial Polynomial::variable(const std::string& name, std::uint32_t power) {
  auto vars = std::make_shared<const std::vector<std::string>>(std::vector<std::string>{name});
  return Polynomial(vars, {{{power}, power, Rational(1)}});
}

Polynomial Polynomial::from_terms(VarList vars, std::vector<Term> terms) {
  for (auto& t : terms) {
    t.degree = std::accumulate(t.exps.begin(), t.exps.end(), std::uint32_t{0});
  }
  sort_and_combine(terms);
  return Polynomial(std::move(vars), std::move(terms));
}

int Polynomial::index_of(std::string_view var) const {
  for (std::size_t i = 0; i < vars_->size(); ++i) {
    if ((*vars_)[i] == var) return static_cast<int>(i);
  }
  return -1;
}

std::vector<std::string> Polynomial::used_variables() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < vars_->size(); ++i) {
    for (const auto& t : terms_) {
      if (t.exps[i] > 0) {
        out.push_back((*vars_)[i]);
        break;
      }
    }
  }
  return out;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().degree == 0);
}

Rational Polynomial::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) throw std::logic_error("constant_value on non-constant polynomial");
  return terms_.front().coeff;
}

const Rational& Polynomial::leading_coefficient() const {
  if (terms_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
  return terms_.front().coeff;
}

std::uint32_t Polynomial::total_degree() const { return terms_.empty() ? 0 : terms_.front().degree; }

std::uint32_t Polynomial::degree(std::string_view var) const {
  int idx = index_of(var);
  if (idx < 0) return 0;
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exps[idx]);
  return d;
}

bool Polynomial::depends_on(std::string_view var) const { return degree(var) > 0; }

Polynomial Polynomial::embedded(const VarList& vars) const {
  if (vars == vars_) return *this;
  if (*vars == *vars_) return Polynomial(vars, terms_);
  std::vector<int> map(vars_->size());
  for (std::size_t i = 0; i < vars_->size(); ++i) {
    auto it = std::find(vars->begin(), vars->end(), (*vars_)[i]);
    if (it == vars->end()) throw std::logic_error("embedding into a ring missing a variable");
    map[i] = static_cast<int>(it - vars->begin());
  }
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Exponents e(vars->size(), 0);
    for (std::size_t i = 0; i < map.size(); ++i) e[map[i]] = t.exps[i];
    out.push_back({std::move(e), t.degree, t.coeff});
  }
  return Polynomial(vars, std::move(out));
}

std::pair<Polynomial, Polynomial> align(const Polynomial& a, const Polynomial& b) {
  Aligned al(a, b);
  return {al.a(), al.b()};
}

Aligned::Aligned(const Polynomial& a, const Polynomial& b) : a_(&a), b_(&b) {
  if (a.vars_ == b.vars_ || *a.vars_ == *b.vars_) return;
  VarList u = union_vars(a.vars_, b.vars_);
  if (u != a.vars_) {
    ta_ = a.embedded(u);
    a_ = &ta_;
  }
  if (u != b.vars_) {
    tb_ = b.embedded(u);
    b_ = &tb_;
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  Aligned al(*this, other);
  const Polynomial& a = al.a();
  const Polynomial& b = al.b();
  return *this = Polynomial(a.vars_, merge_terms(a.terms_, b.terms_, false));
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.is_zero()) return *this;
  Aligned al(*this, other);
  const Polynomial& a = al.a();
  const Polynomial& b = al.b();
  return *this = Polynomial(a.vars_, merge_terms(a.terms_, b.terms_, true));
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return Polynomial();
  if (lhs.is_constant()) return rhs.scaled(lhs.constant_value());
  if (rhs.is_constant()) return lhs.scaled(rhs.constant_value());
  Aligned al(lhs, rhs);
  const Polynomial& a = al.a();
  const Polynomial& b = al.b();
  const std::size_t nv = a.vars_->size();
  if (a.terms_.size() == 1 || b.terms_.size() == 1) {
    // Monomial times polynomial preserves the order.
    const auto& m = a.terms_.size() == 1 ? a.terms_.front() : b.terms_.front();
    const auto& p = a.terms_.size() == 1 ? b.terms_ : a.terms_;
    std::vector<Polynomial::Term> out;
    out.reserve(p.size());
    for (const auto& t : p) {
      Exponents e(nv);
      for (std::size_t i = 0; i < nv; ++i) e[i] = t.exps[i] + m.exps[i];
      out.push_back({std::move(e), t.degree + m.degree, t.coeff * m.coeff});
    }
    return Polynomial(a.vars_, std::move(out));
  }
  // Accumulate by exponent vector, then sort the distinct monomials once.
  std::vector<Polynomial::Term> prod;
  std::unordered_map<Exponents, std::size_t, ExponentsHash> slot;
  slot.reserve(a.terms_.size() + b.terms_.size());
  Exponents e(nv);
  Rational c;
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      for (std::size_t i = 0; i < nv; ++i) e[i] = s.exps[i] + t.exps[i];
      mpq_mul(c.get_mpq_t(), s.coeff.get_mpq_t(), t.coeff.get_mpq_t());
      auto [it, fresh] = slot.try_emplace(e, prod.size());
      if (fresh) {
        prod.push_back({e, s.degree + t.degree, c});
      } else {
        prod[it->second].coeff += c;
      }
    }
  }
  prod.erase(std::remove_if(prod.begin(), prod.end(), [](const Polynomial::Term& t) { return sgn(t.coeff) == 0; }),
             prod.end());
  std::sort(prod.begin(), prod.end(), term_before);
  return Polynomial(a.vars_, std::move(prod));
}

Polynomial& Polynomial::operator*=(const Polynomial& other) { return *this = *this * other; }

Polynomial Polynomial::scaled(const Rational& c) const {
  if (sgn(c) == 0) return Polynomial();
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result(Rational(1));
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1u) result *= base;
    k >>= 1u;
    if (k > 0) base *= base;
  }
  return result;
}

bool operator==(const Polynomial& lhs, const Polynomial& rhs) {
  if (lhs.terms_.size() != rhs.terms_.size()) return false;
  if (lhs.is_zero()) return true;
  Aligned al(lhs, rhs);
  const Polynomial& a = al.a();
  const Polynomial& b = al.b();
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].exps != b.terms_[i].exps || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

bool operator<(const Polynomial& lhs, const Polynomial& rhs) {
  Aligned al(lhs, rhs);
  const Polynomial& a = al.a();
  const Polynomial& b = al.b();
  std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare_exps(a.terms_[i], b.terms_[i]);
    if (c != 0) return c > 0;  // smaller leading monomial first
    if (a.terms_[i].coeff != b.terms_[i].coeff) return a.terms_[i].coeff < b.terms_[i].coeff;
  }
  return a.terms_.size() < b.terms_.size();
}

Polynomial Polynomial::derivative(std::string_view var) const {
  int idx = index_of(var);
  if (idx < 0) return Polynomial();
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (t.exps[idx] == 0) continue;
    Term d = t;
    d.coeff *= t.exps[idx];
    d.exps[idx] -= 1;
    d.degree -= 1;
    out.push_back(std::move(d));
  }
  // Lowering one exponent keeps grlex order among the survivors except for
  // ties in degree; re-sort to be safe.
  return from_terms(vars_, std::move(out));
}

std::vector<Polynomial> Polynomial::coefficients(std::string_view var) const {
  int idx = index_of(var);
  if (idx < 0) return {*this};
  std::uint32_t deg = degree(var);
  std::vector<std::vector<Term>> buckets(deg + 1);
  for (const auto& t : terms_) {
    Term c = t;
    c.degree -= t.exps[idx];
    c.exps[idx] = 0;
    buckets[t.exps[idx]].push_back(std::move(c));
  }
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) {
    // Terms of equal x-degree keep relative order after removing that exponent.
    out.push_back(Polynomial(vars_, std::move(b)));
  }
  if (is_zero()) out.assign(1, Polynomial());
  return out;
}

Polynomial Polynomial::from_coefficients(std::string_view var, const std::vector<Polynomial>& coeffs) {
  Polynomial v = variable(std::string(var));
  Polynomial result;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    result = result * v + coeffs[k];
  }
  return result;
}

Polynomial Polynomial::substitute(std::string_view var, const Polynomial& value) const {
  if (!depends_on(var)) return *this;
  auto coeffs = coefficients(var);
  Polynomial result;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    result = result * value + coeffs[k];
  }
  return result;
}

Polynomial Polynomial::truncated(const std::vector<std::string>& vars, std::uint32_t max_degree) const {
  std::vector<int> idx;
  for (const auto& v : vars) {
    int i = index_of(v);
    if (i >= 0) idx.push_back(i);
  }
  std::vector<Term> out;
  for (const auto& t : terms_) {
    std::uint32_t d = 0;
    for (int i : idx) d += t.exps[i];
    if (d <= max_degree) out.push_back(t);
  }
  return Polynomial(vars_, std::move(out));
}

std::map<std::string, std::uint32_t> Polynomial::monomial_content() const {
  std::map<std::string, std::uint32_t> out;
  if (terms_.empty()) return out;
  for (std::size_t i = 0; i < vars_->size(); ++i) {
    std::uint32_t m = terms_.front().exps[i];
    for (const auto& t : terms_) m = std::min(m, t.exps[i]);
    if (m > 0) out[(*vars_)[i]] = m;
  }
  return out;
}

Polynomial Polynomial::divide_monomial(const std::map<std::string, std::uint32_t>& m) const {
  if (m.empty()) return *this;
  Polynomial r = *this;
  for (const auto& [name, e] : m) {
    int idx = index_of(name);
    if (idx < 0) throw std::logic_error("monomial division by absent variable");
    for (auto& t : r.terms_) {
      if (t.exps[idx] < e) throw std::logic_error("monomial does not divide polynomial");
      t.exps[idx] -= e;
      t.degree -= e;
    }
  }
  return r;
}

Rational Polynomial::evaluate(const std::map<std::string, Rational>& values) const {
  Rational sum = 0;
  std::vector<const Rational*> v(vars_->size(), nullptr);
  for (std::size_t i = 0; i < vars_->size(); ++i) {
    auto it = values.find((*vars_)[i]);
    if (it != values.end()) v[i] = &it->second;
  }
  for (const auto& t : terms_) {
    Rational term = t.coeff;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (t.exps[i] == 0) continue;
      if (!v[i]) throw UnboundParameterError((*vars_)[i]);
      Rational p;
      mpz_pow_ui(p.get_num_mpz_t(), v[i]->get_num_mpz_t(), t.exps[i]);
      mpz_pow_ui(p.get_den_mpz_t(), v[i]->get_den_mpz_t(), t.exps[i]);
      p.canonicalize();
      term *= p;
    }
    sum += term;
  }
  return sum;
}

double Polynomial::evaluate(const std::function<double(const std::string&)>& value_of) const {
  std::vector<double> v(vars_->size(), 0.0);
  std::vector<bool> needed(vars_->size(), false);
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (t.exps[i] > 0) needed[i] = true;
    }
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (needed[i]) v[i] = value_of((*vars_)[i]);
  }
  double sum = 0.0;
  for (const auto& t : terms_) {
    double term = t.coeff.get_d();
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::uint32_t k = 0; k < t.exps[i]; ++k) term *= v[i];
    }
    sum += term;
  }
  return sum;
}

Polynomial Polynomial::partial_evaluate(const std::map<std::string, Rational>& values) const {
  Polynomial r = *this;
  for (const auto& [name, value] : values) {
    if (r.depends_on(name)) r = r.substitute(name, Polynomial(value));
  }
  return r;
}

Rational Polynomial::content() const {
  if (terms_.empty()) return Rational(0);
  Rational c(gcd_of_numerators(terms_), lcm_of_denominators(terms_));
  c.canonicalize();
  if (sgn(terms_.front().coeff) < 0) c = -c;
  return c;
}

Polynomial Polynomial::primitive_part() const {
  if (terms_.empty()) return *this;
  Rational c = content();
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff /= c;
  return r;
}

std::string Polynomial::to_string(const std::function<std::string(const std::string&)>& name_of) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    bool negative = sgn(c) < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < vars_->size(); ++i) {
      if (t.exps[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += name_of ? name_of((*vars_)[i]) : (*vars_)[i];
      if (t.exps[i] > 1) mono += "^" + std::to_string(t.exps[i]);
    }
    if (mono.empty()) {
      os << rational_to_string(c);
    } else if (c == 1) {
      os << mono;
    } else {
      os << rational_to_string(c) << "*" << mono;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Exact division and GCD
// ---------------------------------------------------------------------------

std::optional<Polynomial> exact_divide(const Polynomial& lhs, const Polynomial& rhs) {
  if (rhs.is_zero()) throw DivisionByZeroError("polynomial division by zero");
  if (lhs.is_zero()) return Polynomial();
  if (rhs.is_constant()) return lhs.scaled(1 / rhs.constant_value());
  Aligned al(lhs, rhs);
  const Polynomial& a = al.a();
  const Polynomial& b = al.b();
  const std::size_t nv = a.vars_->size();
  for (std::size_t i = 0; i < nv; ++i) {
    std::uint32_t da = 0, db = 0;
    for (const auto& t : a.terms_) da = std::max(da, t.exps[i]);
    for (const auto& t : b.terms_) db = std::max(db, t.exps[i]);
    if (db > da) return std::nullopt;
  }
  if (b.total_degree() > a.total_degree()) return std::nullopt;

  const auto& lead = b.terms_.front();
  Rational inv_lead = 1 / lead.coeff;
  std::vector<Polynomial::Term> rem = a.terms_;
  std::vector<Polynomial::Term> quot;
  std::vector<Polynomial::Term> scaled;
  while (!rem.empty()) {
    const auto& r = rem.front();
    Polynomial::Term q;
    q.exps.resize(nv);
    for (std::size_t i = 0; i < nv; ++i) {
      if (r.exps[i] < lead.exps[i]) return std::nullopt;
      q.exps[i] = r.exps[i] - lead.exps[i];
    }
    q.degree = r.degree - lead.degree;
    q.coeff = r.coeff * inv_lead;
    scaled.clear();
    scaled.reserve(b.terms_.size());
    for (const auto& t : b.terms_) {
      Exponents e(nv);
      for (std::size_t i = 0; i < nv; ++i) e[i] = t.exps[i] + q.exps[i];
      scaled.push_back({std::move(e), t.degree + q.degree, t.coeff * q.coeff});
    }
    rem = merge_terms(rem, scaled, true);
    quot.push_back(std::move(q));
  }
  return Polynomial(a.vars_, std::move(quot));
}

namespace {

using UPoly = std::vector<Polynomial>;  // coefficients, low to high, no trailing zeros

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int udeg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly to_upoly(const Polynomial& p, const std::string& var) {
  UPoly u = p.coefficients(var);
  trim(u);
  return u;
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
UPoly prem(UPoly a, const UPoly& b) {
  const Polynomial& lb = b.back();
  int db = udeg(b);
  int e = udeg(a) - db + 1;
  while (!a.empty() && udeg(a) >= db) {
    Polynomial la = a.back();
    int shift = udeg(a) - db;
    for (auto& c : a) c *= lb;
    for (int i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
    trim(a);
    --e;
  }
  if (e > 0) {
    Polynomial f = lb.pow(static_cast<unsigned>(e));
    for (auto& c : a) c *= f;
  }
  return a;
}

Polynomial divide_or_throw(const Polynomial& a, const Polynomial& b) {
  auto q = exact_divide(a, b);
  if (!q) throw std::logic_error("expected exact polynomial division");
  return *q;
}

Polynomial upoly_content(const UPoly& p) {
  Polynomial g;
  for (const auto& c : p) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) return Polynomial(Rational(1));
  }
  return g;
}

// Content of p viewed as a polynomial in var.
Polynomial content_in(const Polynomial& p, const std::string& var) {
  return upoly_content(to_upoly(p, var));
}

Polynomial subresultant_gcd_in(const UPoly& a, const UPoly& b, const std::string& var) {
  UPoly x = a, y = b;
  if (udeg(x) < udeg(y)) std::swap(x, y);
  Polynomial g(Rational(1)), h(Rational(1));
  while (true) {
    int delta = udeg(x) - udeg(y);
    UPoly r = prem(x, y);
    if (r.empty()) break;
    if (udeg(r) == 0) return Polynomial(Rational(1));
    Polynomial divisor = g * h.pow(static_cast<unsigned>(delta));
    if (!divisor.is_constant() || divisor.constant_value() != 1) {
      for (auto& c : r) c = divide_or_throw(c, divisor);
    }
    x = std::move(y);
    y = std::move(r);
    g = x.back();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = divide_or_throw(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
    }
  }
  Polynomial c = upoly_content(y);
  for (auto& coef : y) coef = divide_or_throw(coef, c);
  return Polynomial::from_coefficients(var, y).primitive_part();
}

Polynomial gcd_nonmonomial(const Polynomial& a, const Polynomial& b) {
  if (a.is_constant() || b.is_constant()) return Polynomial(Rational(1));
  auto va = a.used_variables();
  auto vb = b.used_variables();
  for (const auto& v : va) {
    if (std::find(vb.begin(), vb.end(), v) == vb.end()) {
      return gcd(content_in(a, v), b);
    }
  }
  for (const auto& v : vb) {
    if (std::find(va.begin(), va.end(), v) == va.end()) {
      return gcd(a, content_in(b, v));
    }
  }
  // Cheap divisibility shortcut.
  if (b.size() <= a.size()) {
    if (exact_divide(a, b)) return b.primitive_part();
  } else if (exact_divide(b, a)) {
    return a.primitive_part();
  }
  std::string main;
  std::uint32_t best = 0;
  for (const auto& v : va) {
    std::uint32_t d = std::max(a.degree(v), b.degree(v));
    if (main.empty() || d < best) {
      main = v;
      best = d;
    }
  }
  UPoly ua = to_upoly(a, main);
  UPoly ub = to_upoly(b, main);
  Polynomial ca = upoly_content(ua);
  Polynomial cb = upoly_content(ub);
  Polynomial c = gcd(ca, cb);
  if (!ca.is_constant() || ca.constant_value() != 1) {
    for (auto& k : ua) k = divide_or_throw(k, ca);
  }
  if (!cb.is_constant() || cb.constant_value() != 1) {
    for (auto& k : ub) k = divide_or_throw(k, cb);
  }
  Polynomial g = subresultant_gcd_in(ua, ub, main);
  return (c * g).primitive_part();
}

}  // namespace

Polynomial content_wrt(const Polynomial& p, const std::string& var) { return content_in(p, var); }

Polynomial gcd(const Polynomial& lhs, const Polynomial& rhs) {
  if (lhs.is_zero()) return rhs.primitive_part();
  if (rhs.is_zero()) return lhs.primitive_part();
  if (lhs.is_constant() || rhs.is_constant()) return Polynomial(Rational(1));
  Aligned al(lhs, rhs);
  const Polynomial& a = al.a();
  const Polynomial& b = al.b();
  auto ma = a.monomial_content();
  auto mb = b.monomial_content();
  std::map<std::string, std::uint32_t> common;
  for (const auto& [name, e] : ma) {
    auto it = mb.find(name);
    if (it != mb.end()) common[name] = std::min(e, it->second);
  }
  Polynomial ra = a.divide_monomial(ma).primitive_part();
  Polynomial rb = b.divide_monomial(mb).primitive_part();
  Polynomial g = gcd_nonmonomial(ra, rb);
  Polynomial mono(Rational(1));
  for (const auto& [name, e] : common) mono *= Polynomial::variable(name, e);
  return (g * mono).primitive_part();
}

}  // namespace aimsolve
