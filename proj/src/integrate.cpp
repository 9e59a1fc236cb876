#include "aimsolve/integrate.hpp"

#include <map>

#include "aimsolve/error.hpp"
#include "aimsolve/factor.hpp"

namespace aimsolve {
namespace {

// Dense univariate polynomial over Q in x, index = exponent.
using UPoly = std::vector<Rational>;

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int deg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly to_upoly(const Polynomial& p) {
  UPoly out;
  for (const auto& c : p.coefficients(kX)) out.push_back(c.is_zero() ? Rational(0) : c.constant_value());
  trim(out);
  return out;
}

Polynomial to_poly(const UPoly& p) {
  std::vector<Polynomial> c;
  for (const auto& q : p) c.emplace_back(q);
  return Polynomial::from_coefficients(kX, c);
}

UPoly add(UPoly a, const UPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  trim(a);
  return a;
}

UPoly scale(UPoly a, const Rational& c) {
  for (auto& q : a) q *= c;
  trim(a);
  return a;
}

UPoly sub(const UPoly& a, const UPoly& b) { return add(a, scale(b, -1)); }

UPoly mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

UPoly deriv(const UPoly& a) {
  UPoly out;
  for (std::size_t i = 1; i < a.size(); ++i) out.push_back(a[i] * static_cast<long>(i));
  trim(out);
  return out;
}

std::pair<UPoly, UPoly> divmod(UPoly a, const UPoly& b) {
  if (b.empty()) throw DivisionByZeroError("polynomial division by zero");
  UPoly q;
  if (deg(a) >= deg(b)) q.assign(a.size() - b.size() + 1, 0);
  while (!a.empty() && deg(a) >= deg(b)) {
    int shift = deg(a) - deg(b);
    Rational c = a.back() / b.back();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
    trim(a);
  }
  trim(q);
  return {q, a};
}

UPoly exact_quo(const UPoly& a, const UPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.empty()) throw std::logic_error("inexact univariate division");
  return q;
}

UPoly monic(UPoly a) {
  if (a.empty()) return a;
  return scale(a, 1 / a.back());
}

UPoly ugcd(UPoly a, UPoly b) {
  while (!b.empty()) {
    UPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

// s*a + t*b = c with deg s < deg b; requires gcd(a, b) | c.
std::pair<UPoly, UPoly> solve_bezout(const UPoly& a, const UPoly& b, const UPoly& c) {
  UPoly r0 = a, r1 = b, s0{1}, s1{};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1);
    UPoly s2 = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // s0*a = r0 (mod b)
  auto [q, rem] = divmod(c, r0);
  if (!rem.empty()) throw std::logic_error("bezout right-hand side not in the ideal");
  UPoly s = divmod(mul(s0, q), b).second;
  UPoly t = exact_quo(sub(c, mul(s, a)), b);
  return {s, t};
}

NormalForm nf_of(const UPoly& num, const UPoly& den) {
  return NormalForm::make(to_poly(num), to_poly(den));
}

// Solves M c = v exactly; nullopt when inconsistent.
std::optional<std::vector<Rational>> solve_linear(std::vector<std::vector<Rational>> m, std::vector<Rational> v) {
  std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    std::swap(v[p], v[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
      v[i] -= f * v[r];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (v[i] != 0) return std::nullopt;
  std::vector<Rational> out(cols, 0);
  for (std::size_t i = 0; i < r; ++i) out[pivot_col[i]] = v[i] / m[i][pivot_col[i]];
  return out;
}

struct UniResult {
  UPoly poly;
  NormalForm rational;
  std::vector<std::pair<Polynomial, Rational>> logs;
  NormalForm remainder;
};

// Polynomial part, Hermite reduction, then logs over the rational factors
// of the squarefree denominator.
UniResult integrate_univariate(const UPoly& num, const UPoly& den) {
  UniResult out;
  auto [q, a] = divmod(num, den);
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (out.poly.size() < i + 2) out.poly.resize(i + 2);
    out.poly[i + 1] = q[i] / static_cast<long>(i + 1);
  }
  trim(out.poly);
  if (a.empty()) return out;
  UPoly d = den;
  UPoly dminus = ugcd(d, deriv(d));
  UPoly dstar = exact_quo(d, dminus);
  while (deg(dminus) > 0) {
    UPoly dminus2 = ugcd(dminus, deriv(dminus));
    UPoly dminus_star = exact_quo(dminus, dminus2);
    UPoly lhs = scale(exact_quo(mul(dstar, deriv(dminus)), dminus), -1);
    auto [b, c] = solve_bezout(lhs, dminus_star, a);
    a = sub(c, exact_quo(mul(deriv(b), dstar), dminus_star));
    out.rational += nf_of(b, dminus);
    dminus = dminus2;
  }
  auto [q2, a2] = divmod(a, dstar);
  if (!q2.empty()) {
    UPoly extra;
    for (std::size_t i = 0; i < q2.size(); ++i) {
      if (extra.size() < i + 2) extra.resize(i + 2);
      extra[i + 1] = q2[i] / static_cast<long>(i + 1);
    }
    out.poly = add(out.poly, extra);
  }
  a = a2;
  if (a.empty()) return out;
  std::vector<Polynomial> factors = distinct_factors(to_poly(dstar));
  std::size_t n = static_cast<std::size_t>(deg(dstar));
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(factors.size(), 0));
  for (std::size_t j = 0; j < factors.size(); ++j) {
    UPoly p = to_upoly(factors[j]);
    UPoly col = mul(deriv(p), exact_quo(dstar, p));
    for (std::size_t i = 0; i < col.size() && i < n; ++i) m[i][j] = col[i];
  }
  std::vector<Rational> rhs(n, 0);
  for (std::size_t i = 0; i < a.size(); ++i) rhs[i] = a[i];
  if (auto c = solve_linear(m, rhs)) {
    for (std::size_t j = 0; j < factors.size(); ++j)
      if ((*c)[j] != 0) out.logs.emplace_back(factors[j], (*c)[j]);
  } else {
    out.remainder = nf_of(a, dstar);
  }
  return out;
}

}  // namespace

Antiderivative integrate(const NormalForm& f) {
  if (!f.is_rational() || f.has_atoms()) throw UnsupportedFormError("integrand must be a rational function");
  Antiderivative out;
  if (f.is_zero()) return out;
  const Polynomial& den = f.denominator();
  Polynomial dc = den.depends_on(kX) ? content_wrt(den, kX) : den;
  Polynomial dx = *exact_divide(den, dc);
  bool dx_pure = dx.used_variables().size() <= 1;
  if (!dx_pure) {
    out.remainder = f;
    return out;
  }
  // Split the numerator by parameter monomials; each piece is x-only.
  const Polynomial& num = f.numerator();
  std::map<Polynomial, Polynomial> pieces;
  {
    const auto& vars = num.variables();
    for (const auto& t : num.terms()) {
      Polynomial::Term xpart{std::vector<std::uint32_t>(vars.size(), 0), 0, t.coeff};
      Polynomial::Term ppart{t.exps, 0, Rational(1)};
      for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i] == kX) {
          xpart.exps[i] = t.exps[i];
          ppart.exps[i] = 0;
        }
      }
      Polynomial key = Polynomial::from_terms(num.var_list(), {ppart});
      pieces[key] += Polynomial::from_terms(num.var_list(), {xpart});
    }
  }
  UPoly uden = to_upoly(dx);
  NormalForm inv_dc = NormalForm::make(Polynomial(Rational(1)), dc);
  std::map<Polynomial, NormalForm> log_coeffs;
  for (const auto& [mono, xpoly] : pieces) {
    NormalForm scale = NormalForm(mono) * inv_dc;
    UniResult r = integrate_univariate(to_upoly(xpoly), uden);
    out.polynomial += scale * NormalForm(to_poly(r.poly));
    out.rational += scale * r.rational;
    out.remainder += scale * r.remainder;
    for (const auto& [arg, c] : r.logs) log_coeffs[arg] += scale * NormalForm(c);
  }
  for (const auto& [arg, c] : log_coeffs)
    if (!c.is_zero()) out.logs.push_back({arg, c});
  return out;
}

NormalForm Antiderivative::as_exponent(double base) const {
  NormalForm e = polynomial;
  for (const auto& l : logs) {
    FormalDef def;
    def.kind = FormalDef::Kind::Log;
    def.arg = l.arg;
    e += l.coefficient * NormalForm::atom(log_token_name(l.arg), def);
  }
  NormalForm rest = remainder;
  if (!rational.is_zero()) rest += rational.derivative();
  if (!rest.is_zero()) {
    FormalDef def;
    def.kind = FormalDef::Kind::Integral;
    def.num = rest.numerator();
    def.den = rest.denominator();
    if (remainder.is_zero()) def.closed = std::make_pair(rational.numerator(), rational.denominator());
    def.base = base;
    e += NormalForm::atom(integral_token_name(def.num, def.den), def);
  }
  return e;
}

std::string Antiderivative::to_string() const {
  std::vector<std::string> parts;
  if (!polynomial.is_zero()) parts.push_back(polynomial.to_string());
  if (!rational.is_zero()) parts.push_back(rational.to_string());
  for (const auto& l : logs) {
    std::string c = l.coefficient.to_string();
    std::string lg = "log(" + l.arg.to_string() + ")";
    if (c == "1") parts.push_back(lg);
    else if (c == "-1") parts.push_back("-" + lg);
    else parts.push_back("(" + c + ")*" + lg);
  }
  if (!remainder.is_zero()) parts.push_back("int(" + remainder.to_string() + ")");
  if (parts.empty()) return "0";
  std::string s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
  return s;
}

}  // namespace aimsolve
