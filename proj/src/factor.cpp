#include "aimsolve/factor.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <random>

#include <Eigen/Dense>

namespace aimsolve {
namespace {

const std::string kZ = "#z";

Polynomial as_primitive(const Polynomial& p) { return p.primitive_part(); }

std::vector<Rational> constant_coefficients(const Polynomial& f, const std::string& var) {
  std::vector<Rational> out;
  for (const auto& c : f.coefficients(var)) out.push_back(c.is_zero() ? Rational(0) : c.constant_value());
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

Rational horner(const std::vector<Rational>& c, const Rational& t) {
  Rational v = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
  return v;
}

// Convergents of t whose denominators divide lc; each is checked exactly.
void rationalize_into(long double t, const std::vector<Rational>& coeffs, const Integer& lc,
                      std::vector<Rational>& roots) {
  Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  long double r = t;
  Integer lc_abs = abs(lc);
  for (int step = 0; step < 64; ++step) {
    long double fl = std::floor(r);
    Integer a;
    a = static_cast<double>(fl);
    Integer h2 = a * h1 + h0;
    Integer k2 = a * k1 + k0;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (k1 > lc_abs) return;
    if (lc_abs % k1 == 0) {
      Rational q(h1, k1);
      q.canonicalize();
      if (horner(coeffs, q) == 0) {
        roots.push_back(q);
        return;
      }
    }
    long double frac = r - fl;
    if (std::fabs(frac) < 1e-18L) return;
    r = 1.0L / frac;
    if (!std::isfinite(r)) return;
  }
}

std::vector<std::string> used_except(const Polynomial& g, const std::string& v) {
  std::vector<std::string> out;
  for (const auto& name : g.used_variables())
    if (name != v) out.push_back(name);
  return out;
}

Polynomial horner_truncated(const std::vector<Polynomial>& cz, const Polynomial& z,
                            const std::vector<std::string>& yvars, std::uint32_t k) {
  Polynomial val = cz.back();
  for (std::size_t i = cz.size() - 1; i-- > 0;) {
    val = (val * z).truncated(yvars, k) + cz[i];
  }
  return val.truncated(yvars, k);
}

// Tries to find a factor of g of degree one in v. g is primitive in v.
std::optional<Polynomial> linear_factor(const Polynomial& g, const std::string& v) {
  std::uint32_t d = g.degree(v);
  if (d < 2) return std::nullopt;
  std::vector<std::string> others = used_except(g, v);
  Polynomial pv = Polynomial::variable(v);
  if (others.empty()) {
    for (const auto& r : rational_roots(g, v)) {
      Polynomial h = pv.scaled(Rational(r.get_den())) - Polynomial(Rational(r.get_num()));
      return h.primitive_part();
    }
    return std::nullopt;
  }
  std::vector<Polynomial> c = g.coefficients(v);
  const Polynomial& lead = c[d];
  // Monic transform: G(z) = L^(d-1) F(z / L).
  Polynomial G = Polynomial::variable(kZ, d);
  Polynomial lpow(Rational(1));
  for (std::uint32_t k = d; k-- > 0;) {
    G += c[k] * lpow * Polynomial::variable(kZ, k);
    lpow *= lead;
  }
  std::uint32_t bound = G.total_degree();
  std::mt19937_64 rng(0x5eedULL + d);
  std::uniform_int_distribution<int> pick(-12, 12);
  std::vector<std::string> yvars;
  for (std::size_t i = 0; i < others.size(); ++i) yvars.push_back("#y" + std::to_string(i));

  for (int attempt = 0; attempt < 4; ++attempt) {
    std::map<std::string, Rational> point;
    for (const auto& o : others) point[o] = pick(rng);
    if (lead.evaluate(point) == 0) continue;
    Polynomial Gs = G;
    for (std::size_t i = 0; i < others.size(); ++i) {
      Gs = Gs.substitute(others[i], Polynomial::variable(yvars[i]) + Polynomial(point[others[i]]));
    }
    std::map<std::string, Rational> origin;
    for (const auto& y : yvars) origin[y] = 0;
    Polynomial g0 = Gs.partial_evaluate(origin);
    Polynomial dg0 = g0.derivative(kZ);
    if (!gcd(g0, dg0).is_constant()) continue;
    std::vector<Polynomial> cz = Gs.coefficients(kZ);
    for (const auto& r0 : rational_roots(g0, kZ)) {
      Rational slope = dg0.evaluate(std::map<std::string, Rational>{{kZ, r0}});
      Polynomial z(r0);
      for (std::uint32_t k = 1; k <= bound; ++k) {
        Polynomial val = horner_truncated(cz, z, yvars, k);
        Polynomial part = val - val.truncated(yvars, k - 1);
        z -= part.scaled(1 / slope);
      }
      Polynomial r = z;
      for (std::size_t i = 0; i < others.size(); ++i) {
        r = r.substitute(yvars[i], Polynomial::variable(others[i]) - Polynomial(point[others[i]]));
      }
      Polynomial h = lead * pv - r;
      Polynomial cont = content_wrt(h, v);
      if (!cont.is_constant()) h = *exact_divide(h, cont);
      h = h.primitive_part();
      if (h.degree(v) != 1) continue;
      if (exact_divide(g, h)) return h;
    }
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::vector<Rational> rational_roots(const Polynomial& f, const std::string& var) {
  std::vector<Rational> roots;
  if (f.is_zero() || f.is_constant()) return roots;
  Polynomial sf = f.primitive_part();
  Polynomial g = gcd(sf, sf.derivative(var));
  if (!g.is_constant()) sf = *exact_divide(sf, g);
  std::vector<Rational> c = constant_coefficients(sf, var);
  std::size_t shift = 0;
  while (shift < c.size() && c[shift] == 0) ++shift;
  if (shift > 0) {
    roots.push_back(0);
    c.erase(c.begin(), c.begin() + static_cast<long>(shift));
  }
  int deg = static_cast<int>(c.size()) - 1;
  if (deg == 1) {
    roots.push_back(-c[0] / c[1]);
  } else if (deg >= 2) {
    Integer lc = c.back().get_num();  // coefficients are integers after primitive_part
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    double top = c.back().get_d();
    for (int i = 0; i < deg; ++i) comp(0, i) = -c[deg - 1 - i].get_d() / top;
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    for (int i = 0; i < deg; ++i) {
      std::complex<double> ev = es.eigenvalues()[i];
      if (std::fabs(ev.imag()) > 1e-6 * std::max(1.0, std::fabs(ev.real()))) continue;
      rationalize_into(ev.real(), c, lc, roots);
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

std::vector<Polynomial> distinct_factors(const Polynomial& f) {
  std::vector<Polynomial> result;
  if (f.is_zero() || f.is_constant()) return result;
  std::deque<Polynomial> queue{f.primitive_part()};
  while (!queue.empty()) {
    Polynomial g = queue.front();
    queue.pop_front();
    if (g.is_constant()) continue;
    auto mono = g.monomial_content();
    if (!mono.empty()) {
      for (const auto& [name, e] : mono) result.push_back(Polynomial::variable(name));
      queue.push_back(g.divide_monomial(mono).primitive_part());
      continue;
    }
    std::vector<std::string> vars = g.used_variables();
    bool split = false;
    for (const auto& v : vars) {
      Polynomial cont = content_wrt(g, v);
      if (!cont.is_constant()) {
        queue.push_back(cont.primitive_part());
        queue.push_back(exact_divide(g, cont)->primitive_part());
        split = true;
        break;
      }
    }
    if (split) continue;
    bool irreducible = false;
    for (const auto& v : vars) {
      if (g.degree(v) == 1) {
        irreducible = true;
        break;
      }
    }
    if (irreducible) {
      result.push_back(g);
      continue;
    }
    for (const auto& v : vars) {
      Polynomial h = gcd(g, g.derivative(v));
      if (!h.is_constant()) {
        queue.push_back(h);
        queue.push_back(exact_divide(g, h)->primitive_part());
        split = true;
        break;
      }
    }
    if (split) continue;
    for (const auto& v : vars) {
      if (auto h = linear_factor(g, v)) {
        queue.push_back(*h);
        queue.push_back(exact_divide(g, *h)->primitive_part());
        split = true;
        break;
      }
    }
    if (!split) result.push_back(g);
  }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  // Coprime refinement: leftover composite pieces may share factors.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < result.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < result.size() && !changed; ++j) {
        Polynomial h = gcd(result[i], result[j]);
        if (h.is_constant()) continue;
        std::vector<Polynomial> pieces{h};
        for (std::size_t k : {i, j}) {
          Polynomial rest = exact_divide(result[k], h)->primitive_part();
          if (!rest.is_constant()) pieces.push_back(rest);
        }
        result.erase(result.begin() + static_cast<long>(j));
        result.erase(result.begin() + static_cast<long>(i));
        for (auto& p : pieces) result.push_back(as_primitive(p));
        std::sort(result.begin(), result.end());
        result.erase(std::unique(result.begin(), result.end()), result.end());
        changed = true;
      }
    }
  }
  return result;
}

std::vector<Factor> factor(const Polynomial& f) {
  std::vector<Factor> out;
  Polynomial rest = f;
  for (const auto& p : distinct_factors(f)) {
    unsigned m = 0;
    while (auto q = exact_divide(rest, p)) {
      rest = *q;
      ++m;
    }
    out.push_back({p, std::max(m, 1u)});
  }
  return out;
}

}  // namespace aimsolve
