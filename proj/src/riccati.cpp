#include "aimsolve/riccati.hpp"

#include <algorithm>
#include <set>

namespace aimsolve {
namespace {

const NormalForm kOne(Rational(1));

bool vanishes(const RiccatiEquation& eq, const NormalForm& y) {
  try {
    return riccati_residual(eq, y).is_zero();
  } catch (const Error&) {
    return false;
  }
}

std::string wrap(const NormalForm& f) {
  std::string s = f.to_string();
  bool simple = s.find_first_of(" +*/") == std::string::npos || (s.front() == '(' && s.back() == ')');
  return simple ? s : "(" + s + ")";
}

std::shared_ptr<const AimTrace> run_trace(const NormalForm& lambda0, const NormalForm& s0, int n_max) {
  AimOptions ao;
  ao.n_max = n_max;
  ao.stop_at_termination = true;
  ao.truncate_on_limit = true;
  return std::make_shared<const AimTrace>(aim_iterate(lambda0, s0, ao));
}

bool terminates_exactly(const AimTrace& t) {
  return t.computed() > 0 && t.delta.back().is_zero();
}

}  // namespace

RiccatiEquation RiccatiEquation::make(NormalForm P, NormalForm Q, NormalForm R, std::vector<std::string> params) {
  if (Q.is_zero()) throw UnsupportedFormError("Q is identically zero: the equation is linear, not Riccati");
  return RiccatiEquation{std::move(P), std::move(Q), std::move(R), std::move(params)};
}

RiccatiEquation RiccatiEquation::parse(const std::string& P, const std::string& Q, const std::string& R,
                                       const std::vector<std::string>& params) {
  return make(normalize(parse_expr(P, params)), normalize(parse_expr(Q, params)), normalize(parse_expr(R, params)),
              params);
}

RiccatiEquation RiccatiEquation::simple1(const NormalForm& lambda0, const NormalForm& s0) {
  return make(-lambda0, kOne, s0);
}

RiccatiEquation RiccatiEquation::simple2(const NormalForm& lambda0, const NormalForm& s0) {
  return make(-lambda0, -kOne, -s0);
}

RiccatiEquation RiccatiEquation::eliminated(const std::vector<Elimination>& elims) const {
  if (elims.empty()) return *this;
  RiccatiEquation out = *this;
  out.P = apply_eliminations(P, elims);
  out.Q = apply_eliminations(Q, elims);
  out.R = apply_eliminations(R, elims);
  return out;
}

std::vector<std::string> RiccatiEquation::exponent_parameters() const {
  std::set<std::string> out;
  for (const NormalForm* f : {&P, &Q, &R}) {
    for (const auto& v : f->exp_arg().used_variables())
      if (v != kX && !is_formal_name(v)) out.insert(v);
    if (f->formals()) {
      for (const auto& [name, def] : *f->formals()) {
        for (const Polynomial* p : {&def.num, &def.den})
          for (const auto& v : p->used_variables())
            if (v != kX) out.insert(v);
      }
    }
  }
  return {out.begin(), out.end()};
}

std::string RiccatiEquation::to_string() const {
  return "y' + " + wrap(P) + "*y + " + wrap(Q) + "*y^2 = " + R.to_string();
}

NormalForm riccati_residual(const RiccatiEquation& eq, const NormalForm& y) {
  return y.derivative() + eq.P * y + eq.Q * y * y - eq.R;
}

Method method_of(Transform t) {
  switch (t) {
    case Transform::T3: return Method::T3;
    case Transform::T4: return Method::T4;
    case Transform::T5: return Method::T5;
    case Transform::T6: return Method::T6;
  }
  return Method::T3;
}

std::pair<NormalForm, NormalForm> to_linear(const RiccatiEquation& eq, Transform t) {
  const NormalForm& P = eq.P;
  const NormalForm& Q = eq.Q;
  const NormalForm& R = eq.R;
  if ((t == Transform::T4 || t == Transform::T5) && R.is_zero()) {
    throw TransformInapplicableError(method_name(method_of(t)) + " needs R not identically zero");
  }
  switch (t) {
    case Transform::T3:
      return {Q.derivative() / Q - P, Q * R};
    case Transform::T4:
      return {R.derivative() / R + P, Q * R};
    case Transform::T5:
      return {R.derivative() / R - P, R * (Q - (P / R).derivative())};
    case Transform::T6:
      return {P + Q.derivative() / Q, Q * ((P / Q).derivative() + R)};
  }
  throw std::logic_error("unknown transform");
}

NormalForm back_map(const RiccatiEquation& eq, Transform t, const NormalForm& lambda_prev, const NormalForm& s_prev) {
  auto guard = [&](const NormalForm& d, const char* what) {
    if (d.is_zero()) {
      throw DegenerateError(method_name(method_of(t)) + " back-map: " + what + " vanishes identically");
    }
  };
  switch (t) {
    case Transform::T3:
      if (s_prev.is_zero()) return NormalForm();
      guard(lambda_prev, "lambda_{n-1}");
      return -s_prev / (eq.Q * lambda_prev);
    case Transform::T4:
      guard(s_prev, "s_{n-1}");
      return -(eq.R * lambda_prev) / s_prev;
    case Transform::T5: {
      NormalForm den = -s_prev + eq.P * lambda_prev;
      guard(den, "-s_{n-1} + P*lambda_{n-1}");
      return eq.R * lambda_prev / den;
    }
    case Transform::T6:
      guard(lambda_prev, "lambda_{n-1}");
      return (-s_prev - eq.P * lambda_prev) / (eq.Q * lambda_prev);
  }
  throw std::logic_error("unknown transform");
}

std::optional<NormalForm> quick_particular(const RiccatiEquation& eq) {
  try {
    NormalForm x = NormalForm::variable(kX);
    NormalForm cond = eq.Q.derivative() / eq.Q - eq.P + x * eq.Q * eq.R;
    if (!cond.is_zero()) return std::nullopt;
    return (x * eq.Q).inverse();
  } catch (const Error&) {
    return std::nullopt;
  }
}

namespace {

struct Attempt {
  Transform t;
  std::shared_ptr<const AimTrace> trace;
};

std::optional<Solution> finish(const RiccatiEquation& eq, const Attempt& a, const SolveOptions& opts,
                               std::vector<std::string>& notes) {
  auto tp = choose_termination(*a.trace, opts, eq.exponent_parameters());
  if (!tp) return std::nullopt;
  RiccatiEquation reduced = eq.eliminated(tp->eliminations);
  Solution sol;
  try {
    sol.y = back_map(reduced, a.t, tp->lambda_prev, tp->s_prev);
  } catch (const Error& e) {
    notes.push_back(e.what());
    return std::nullopt;
  }
  sol.method = method_of(a.t);
  sol.n = tp->n;
  sol.constraints = tp->constraints;
  sol.eliminations = tp->eliminations;
  sol.trace = a.trace;
  sol.residual_zero = vanishes(reduced, sol.y);
  if (tp->constraints.empty()) {
    sol.provenance.push_back(method_name(sol.method) + ": delta_" + std::to_string(sol.n) + " = 0 exactly");
  } else {
    sol.provenance.push_back(method_name(sol.method) + ": conditional termination at n=" + std::to_string(sol.n) +
                             " on " + constraint_to_string(tp->constraints[0]) + ", eliminated " +
                             tp->eliminations[0].variable + " = " + tp->eliminations[0].value.to_string());
  }
  return sol;
}

}  // namespace

Solution solve(const RiccatiEquation& eq, Strategy strategy, const SolveOptions& opts) {
  std::vector<Transform> order;
  if (strategy == Strategy::Auto) {
    if (auto y = quick_particular(eq)) {
      Solution sol;
      sol.y = *y;
      sol.method = Method::Quick;
      sol.residual_zero = vanishes(eq, *y);
      sol.provenance.push_back("quick criterion Q'/Q - P + x*Q*R = 0 gives y = 1/(x*Q)");
      return sol;
    }
    order = {Transform::T3, Transform::T4, Transform::T5, Transform::T6};
  } else {
    order = {static_cast<Transform>(static_cast<int>(strategy) - 1)};
  }
  std::vector<Attempt> attempts;
  std::vector<std::string> notes;
  for (Transform t : order) {
    std::pair<NormalForm, NormalForm> seed;
    try {
      seed = to_linear(eq, t);
    } catch (const Error& e) {
      if (strategy != Strategy::Auto) throw;
      notes.push_back(method_name(method_of(t)) + ": " + e.what());
      continue;
    }
    Attempt a{t, run_trace(seed.first, seed.second, opts.branch ? std::min(opts.n_max, *opts.branch) : opts.n_max)};
    attempts.push_back(a);
    if (terminates_exactly(*a.trace)) {
      if (auto sol = finish(eq, a, opts, notes)) return *sol;
    }
  }
  for (const auto& a : attempts) {
    if (terminates_exactly(*a.trace)) continue;
    if (auto sol = finish(eq, a, opts, notes)) return *sol;
  }
  std::vector<std::shared_ptr<const AimTrace>> traces;
  std::string msg = "no transform terminated within n_max=" + std::to_string(opts.n_max);
  for (const auto& a : attempts) {
    traces.push_back(a.trace);
    if (!a.trace->stopped.empty()) notes.push_back(method_name(method_of(a.t)) + ": " + a.trace->stopped);
  }
  for (const auto& n : notes) msg += "; " + n;
  throw NoTerminationError(msg, traces);
}

std::string family_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::T3: return "T3";
    case FamilyKind::T3R: return "T3R";
    case FamilyKind::T5R: return "T5R";
    case FamilyKind::T6: return "T6";
  }
  return "?";
}

Family generate_family(FamilyKind kind, const NormalForm& lambda0, const NormalForm& s0, const NormalForm& fn,
                       const SolveOptions& opts, double base) {
  auto trace = run_trace(lambda0, s0, opts.n_max);
  auto tp = choose_termination(*trace, opts);
  if (!tp) throw NoTerminationError("seed does not terminate within n_max=" + std::to_string(opts.n_max), {trace});
  if (tp->lambda_prev.is_zero() && !tp->s_prev.is_zero()) {
    throw DegenerateError("lambda_{n-1} vanishes identically");
  }
  NormalForm l0 = apply_eliminations(lambda0, tp->eliminations);
  NormalForm s0e = apply_eliminations(s0, tp->eliminations);
  NormalForm f = apply_eliminations(fn, tp->eliminations);
  NormalForm ratio = tp->s_prev.is_zero() ? NormalForm() : tp->s_prev / tp->lambda_prev;
  Family fam{kind, RiccatiEquation{}, Solution{}, {}};
  NormalForm P, Q, R, y;
  switch (kind) {
    case FamilyKind::T3: {
      NormalForm E = integral_exponent(l0 + f, base);
      Q = NormalForm::exp_of(E);
      R = s0e * NormalForm::exp_of(-E);
      P = f;
      y = -ratio * NormalForm::exp_of(-E);
      break;
    }
    case FamilyKind::T3R: {
      if (s0e.is_zero()) throw DegenerateError("T3R family needs s0 not identically zero");
      if (f.is_zero()) throw DegenerateError("T3R family needs R not identically zero");
      P = s0e.derivative() / s0e - f.derivative() / f - l0;
      Q = s0e / f;
      R = f;
      y = -(f / s0e) * ratio;
      break;
    }
    case FamilyKind::T5R: {
      if (f.is_zero()) throw DegenerateError("T5R family needs R not identically zero");
      P = f.derivative() / f - l0;
      Q = s0e / f + (P / f).derivative();
      R = f;
      NormalForm den = P - ratio;
      if (den.is_zero()) throw DegenerateError("T5R back-map denominator -s_{n-1} + P*lambda_{n-1} vanishes");
      y = f / den;
      break;
    }
    case FamilyKind::T6: {
      NormalForm J = integral_exponent(l0 - f, base);
      Q = NormalForm::exp_of(J);
      P = f;
      R = s0e / Q - (P / Q).derivative();
      y = (-ratio - P) * NormalForm::exp_of(-J);
      fam.notes.push_back("solution carries the -P term: y = (-s/lambda - P)*exp(-int(lambda0 - P))");
      break;
    }
  }
  std::set<std::string> params;
  for (const NormalForm* g : {&P, &Q, &R, &y})
    for (const auto& v : g->parameters()) params.insert(v);
  fam.equation = RiccatiEquation::make(P, Q, R, {params.begin(), params.end()});
  fam.solution.y = y;
  fam.solution.method = kind == FamilyKind::T6 ? Method::T6 : (kind == FamilyKind::T5R ? Method::T5 : Method::T3);
  fam.solution.n = tp->n;
  fam.solution.constraints = tp->constraints;
  fam.solution.eliminations = tp->eliminations;
  fam.solution.trace = trace;
  fam.solution.residual_zero = vanishes(fam.equation, y);
  fam.solution.provenance.push_back(family_name(kind) + " family from seed terminating at n=" + std::to_string(tp->n));
  return fam;
}

}  // namespace aimsolve
