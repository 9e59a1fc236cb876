#include "aimsolve/hyper.hpp"

#include <cmath>
#include <optional>

#include "aimsolve/error.hpp"

namespace aimsolve {
namespace {

std::optional<Rational> constant_of(const Expr& e) {
  try {
    NormalForm nf = normalize(e);
    if (nf.is_constant()) return nf.constant_value();
  } catch (const Error&) {
  }
  return std::nullopt;
}

bool is_nonpositive_integer(const Rational& q) { return q.get_den() == 1 && sgn(q) <= 0; }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t") == std::string::npos; }

}  // namespace

Rational pochhammer(const Rational& a, unsigned k) {
  Rational r = 1;
  for (unsigned i = 0; i < k; ++i) r *= a + static_cast<long>(i);
  return r;
}

Expr pochhammer(const Expr& a, unsigned k) {
  if (auto c = constant_of(a)) return Expr::number(pochhammer(*c, k));
  if (k == 0) return Expr::number(1);
  std::vector<Expr> factors;
  for (unsigned i = 0; i < k; ++i) factors.push_back(i == 0 ? a : a + Expr::number(static_cast<long>(i)));
  return Expr::product(factors);
}

Expr expand_polynomial(const HyperSpec& spec) {
  std::optional<long> order;
  for (const auto& a : spec.numerator) {
    auto c = constant_of(a);
    if (c && is_nonpositive_integer(*c)) {
      long n = -c->get_num().get_si();
      if (!order || n < *order) order = n;
    }
  }
  if (!order) throw NoTruncationError("no numerator parameter is a nonpositive integer");
  std::vector<Rational> dens;
  for (const auto& b : spec.denominator) {
    auto c = constant_of(b);
    if (!c) throw NoTruncationError("denominator parameter " + b.to_string() + " is not numeric");
    if (is_nonpositive_integer(*c)) {
      throw NoTruncationError("denominator parameter " + b.to_string() + " is zero or a negative integer");
    }
    dens.push_back(*c);
  }
  std::vector<Expr> terms;
  NormalForm coeff(Rational(1));
  for (long k = 0; k <= *order; ++k) {
    if (k > 0) {
      NormalForm step(Rational(1, k));
      for (const auto& a : spec.numerator) step *= normalize(a) + NormalForm(Rational(k - 1));
      for (const auto& b : dens) step = step / NormalForm(b + (k - 1));
      coeff *= step;
    }
    if (coeff.is_zero()) break;
    Expr c = to_expr(coeff);
    if (k == 0) {
      terms.push_back(c);
    } else {
      Expr z = k == 1 ? spec.argument : Expr::power(spec.argument, static_cast<int>(k));
      terms.push_back(coeff.is_constant() && coeff.constant_value() == 1 ? z : c * z);
    }
  }
  return Expr::sum(terms);
}

double evaluate(const HyperSpec& spec, double x, const std::map<std::string, double>& bindings, int max_terms,
                double tol) {
  std::vector<double> as, bs;
  std::optional<long> order;
  for (const auto& a : spec.numerator) {
    double v = evaluate_numeric(a, x, bindings);
    as.push_back(v);
    double r = std::round(v);
    if (r <= 0 && std::fabs(v - r) < 1e-12) {
      long n = static_cast<long>(-r);
      if (!order || n < *order) order = n;
    }
  }
  for (const auto& b : spec.denominator) bs.push_back(evaluate_numeric(b, x, bindings));
  double z = evaluate_numeric(spec.argument, x, bindings);
  if (!order && as.size() > bs.size() + 1 && z != 0) {
    throw NonConvergenceError("divergent non-truncating series with p > q + 1");
  }
  double sum = 1, term = 1;
  long limit = order ? *order : max_terms;
  for (long k = 1; k <= limit; ++k) {
    double ratio = z / static_cast<double>(k);
    for (double a : as) ratio *= a + static_cast<double>(k - 1);
    for (double b : bs) {
      double d = b + static_cast<double>(k - 1);
      if (d == 0) throw PoleError("denominator parameter reaches zero");
      ratio /= d;
    }
    term *= ratio;
    sum += term;
    if (!order && std::fabs(term) <= tol * std::fabs(sum)) return sum;
    if (term == 0) return sum;
  }
  if (!order) throw NonConvergenceError("series did not converge within " + std::to_string(max_terms) + " terms");
  return sum;
}

std::string expand_hyper_markers(const std::string& text, const std::vector<std::string>& params,
                                 const std::map<std::string, Rational>& bindings) {
  auto bound = [&](const std::string& s) { return to_expr(normalize(parse_expr(s, params)).substitute(bindings)); };
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t start = text.find("F[", i);
    if (start == std::string::npos) {
      out += text.substr(i);
      break;
    }
    out += text.substr(i, start - i);
    std::size_t end = text.find(']', start);
    if (end == std::string::npos) throw ParseError("unterminated hypergeometric marker", start);
    std::vector<std::string> parts = split(text.substr(start + 2, end - start - 2), ';');
    if (parts.size() != 3) throw ParseError("hypergeometric marker needs three ';'-separated parts", start);
    HyperSpec spec;
    for (const auto& a : split(parts[0], ','))
      if (!blank(a)) spec.numerator.push_back(bound(a));
    for (const auto& b : split(parts[1], ','))
      if (!blank(b)) spec.denominator.push_back(bound(b));
    spec.argument = bound(parts[2]);
    out += "(" + expand_polynomial(spec).to_string() + ")";
    i = end + 1;
  }
  return out;
}

}  // namespace aimsolve
