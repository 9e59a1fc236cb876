#include "aimsolve/cli.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "aimsolve/tables.hpp"

namespace aimsolve {
namespace {

using Json = nlohmann::ordered_json;

struct Request {
  std::string form = "general";
  std::string lambda0, s0, P, Q, R, y, fn;
  std::string params;
  int n_max = 24;
  std::string strategy = "auto";
  std::string interval = "0.1,0.9";
  bool json = false;
  std::uint64_t seed = 1;
  std::string eliminate;
  std::optional<int> branch;
  std::string transform = "t3";
  double base = 0;
  std::vector<int> tables, n_values;
  bool examples = false;
  unsigned threads = 0;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::pair<double, double> parse_interval(const std::string& s) {
  std::vector<std::string> parts = split_list(s);
  if (parts.size() != 2) throw std::invalid_argument("--interval expects lo,hi");
  double lo = std::stod(parts[0]), hi = std::stod(parts[1]);
  if (!(lo < hi)) throw std::invalid_argument("--interval needs lo < hi");
  return {lo, hi};
}

Strategy parse_strategy(const std::string& s) {
  if (s == "auto") return Strategy::Auto;
  if (s == "t3") return Strategy::T3;
  if (s == "t4") return Strategy::T4;
  if (s == "t5") return Strategy::T5;
  if (s == "t6") return Strategy::T6;
  throw std::invalid_argument("unknown strategy '" + s + "'");
}

FamilyKind parse_family(const std::string& s) {
  if (s == "t3") return FamilyKind::T3;
  if (s == "t3r") return FamilyKind::T3R;
  if (s == "t5r") return FamilyKind::T5R;
  if (s == "t6") return FamilyKind::T6;
  throw std::invalid_argument("unknown family transform '" + s + "'");
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << v;
  return os.str();
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json verification_json(const VerificationReport& r, double lo, double hi) {
  Json v;
  v["symbolic"] = r.symbolic_residual_zero;
  v["max_residual"] = number_or_null(r.max_numeric_residual);
  v["rk_deviation"] = r.rk_max_deviation ? Json(*r.rk_max_deviation) : Json(nullptr);
  v["rk_note"] = r.rk_note;
  v["interval"] = Json::array({lo, hi});
  v["grid_points"] = r.grid.size();
  Json b = Json::object();
  for (const auto& [k, q] : r.bindings) b[k] = q.get_str();
  v["bindings"] = b;
  return v;
}

Json trace_json(const AimTrace* trace) {
  Json t = Json::array();
  if (!trace) return t;
  for (int n = 1; n <= trace->computed(); ++n) {
    const NormalForm& d = trace->delta_at(n);
    Json c = Json::array();
    if (!d.is_zero())
      for (const auto& p : zero_constraints(d)) c.push_back(constraint_to_string(p));
    t.push_back(Json{{"n", n}, {"delta_zero", d.is_zero()}, {"constraints", c}});
  }
  return t;
}

Json error_json(const std::string& type, const std::string& message, std::optional<std::size_t> position = {}) {
  Json e{{"type", type}, {"message", message}};
  if (position) e["position"] = *position;
  return Json{{"status", "error"}, {"error", e}};
}

void print_report(std::ostream& out, const VerificationReport& r) {
  out << "verification: symbolic residual " << (r.symbolic_residual_zero ? "zero" : "NONZERO")
      << ", max residual " << fmt(r.max_numeric_residual) << " on " << r.grid.size() << " points";
  if (r.rk_max_deviation) out << ", rk deviation " << fmt(*r.rk_max_deviation);
  out << "\n";
  if (!r.rk_note.empty()) out << "rk note: " << r.rk_note << "\n";
  if (!r.bindings.empty()) {
    out << "bindings:";
    for (const auto& [k, q] : r.bindings) out << " " << k << "=" << q.get_str();
    out << "\n";
  }
}

class Reporter {
 public:
  Reporter(const Request& req, std::ostream& out, std::ostream& err) : req_(req), out_(out), err_(err) {}

  int input_error(const std::string& type, const std::string& message, std::optional<std::size_t> position = {}) {
    if (req_.json) out_ << error_json(type, message, position).dump(2) << "\n";
    else err_ << "error: " << message << "\n";
    return kExitInput;
  }

  // Runs f and maps library errors to exit code 1.
  template <class F>
  int guarded(F&& f) {
    try {
      return f();
    } catch (const NoTerminationError& e) {
      Json j{{"status", "no_termination"}, {"message", e.what()}};
      j["trace"] = trace_json(e.traces().empty() ? nullptr : e.traces().front().get());
      if (req_.json) out_ << j.dump(2) << "\n";
      else out_ << "status: no termination\n" << e.what() << "\n";
      return kExitNoTermination;
    } catch (const ParseError& e) {
      return input_error("parse", e.what(), e.position());
    } catch (const UnknownSymbolError& e) {
      return input_error("unknown_symbol", e.what(), e.position());
    } catch (const Error& e) {
      return input_error("input", e.what());
    } catch (const std::invalid_argument& e) {
      return input_error("argument", e.what());
    }
  }

 private:
  const Request& req_;
  std::ostream& out_;
  std::ostream& err_;
};

struct Built {
  RiccatiEquation eq;
  NormalForm lambda0, s0;
};

Built build_equation(const Request& req) {
  std::vector<std::string> params = split_list(req.params);
  auto nf = [&](const std::string& s, const char* flag) {
    if (s.empty()) throw std::invalid_argument(std::string("--") + flag + " is required for form " + req.form);
    return normalize(parse_expr(s, params));
  };
  Built b;
  if (req.form == "simple1" || req.form == "simple2") {
    b.lambda0 = nf(req.lambda0, "lambda0");
    b.s0 = nf(req.s0, "s0");
    b.eq = req.form == "simple1" ? RiccatiEquation::simple1(b.lambda0, b.s0) : RiccatiEquation::simple2(b.lambda0, b.s0);
    b.eq.params = params;
  } else if (req.form == "general") {
    b.eq = RiccatiEquation::make(nf(req.P, "P"), nf(req.Q, "Q"), nf(req.R, "R"), params);
  } else {
    throw std::invalid_argument("unknown form '" + req.form + "'");
  }
  return b;
}

SolveOptions solve_options(const Request& req) {
  SolveOptions o;
  o.n_max = req.n_max;
  o.eliminate = req.eliminate;
  o.branch = req.branch;
  return o;
}

VerifyOptions verify_options(const Request& req) {
  auto [lo, hi] = parse_interval(req.interval);
  VerifyOptions o;
  o.lo = lo;
  o.hi = hi;
  o.seed = req.seed;
  return o;
}

int cmd_solve(const Request& req, std::ostream& out) {
  VerifyOptions vo = verify_options(req);
  Built b = build_equation(req);
  SolveOptions so = solve_options(req);
  Solution sol;
  if (req.form == "simple1") sol = solve_theorem1(b.lambda0, b.s0, so);
  else if (req.form == "simple2") sol = solve_theorem2(b.lambda0, b.s0, so);
  else sol = solve(b.eq, parse_strategy(req.strategy), so);
  RiccatiEquation eq = b.eq.eliminated(sol.eliminations);
  VerificationReport rep = verify_solution(eq, sol.y, vo);

  if (req.json) {
    Json j;
    j["status"] = "solved";
    j["solution"] = sol.y.to_string();
    j["theorem"] = method_name(sol.method);
    j["n"] = sol.n;
    Json c = Json::array();
    for (const auto& p : sol.constraints) c.push_back(constraint_to_string(p));
    j["constraints"] = c;
    Json el = Json::array();
    for (const auto& e : sol.eliminations) el.push_back(Json{{"variable", e.variable}, {"value", e.value.to_string()}});
    j["eliminations"] = el;
    j["verification"] = verification_json(rep, vo.lo, vo.hi);
    j["trace"] = trace_json(sol.trace.get());
    j["provenance"] = sol.provenance;
    out << j.dump(2) << "\n";
  } else {
    out << "status: solved\n";
    out << "theorem: " << method_name(sol.method) << "\n";
    out << "n: " << sol.n << "\n";
    out << "y = " << sol.y.to_string() << "\n";
    for (const auto& p : sol.constraints) out << "constraint: " << constraint_to_string(p) << " = 0\n";
    for (const auto& e : sol.eliminations) out << "eliminated: " << e.variable << " = " << e.value.to_string() << "\n";
    for (const auto& p : sol.provenance) out << "note: " << p << "\n";
    print_report(out, rep);
  }
  return kExitOk;
}

int cmd_verify(const Request& req, std::ostream& out) {
  VerifyOptions vo = verify_options(req);
  Built b = build_equation(req);
  if (req.y.empty()) throw std::invalid_argument("--y is required");
  NormalForm y = normalize(parse_expr(req.y, split_list(req.params)));
  VerificationReport rep = verify_solution(b.eq, y, vo);
  bool ok = rep.symbolic_residual_zero;
  if (req.json) {
    Json j;
    j["status"] = ok ? "verified" : "not_verified";
    j["solution"] = y.to_string();
    j["residual"] = symbolic_residual(b.eq, y).to_string();
    j["verification"] = verification_json(rep, vo.lo, vo.hi);
    out << j.dump(2) << "\n";
  } else {
    out << "status: " << (ok ? "verified" : "not verified") << "\n";
    out << "y = " << y.to_string() << "\n";
    out << "residual: " << symbolic_residual(b.eq, y).to_string() << "\n";
    print_report(out, rep);
  }
  return ok ? kExitOk : kExitFailed;
}

int cmd_families(const Request& req, std::ostream& out) {
  VerifyOptions vo = verify_options(req);
  std::vector<std::string> params = split_list(req.params);
  auto nf = [&](const std::string& s, const char* flag) {
    if (s.empty()) throw std::invalid_argument(std::string("--") + flag + " is required");
    return normalize(parse_expr(s, params));
  };
  FamilyKind kind = parse_family(req.transform);
  Family fam = generate_family(kind, nf(req.lambda0, "lambda0"), nf(req.s0, "s0"), nf(req.fn, "fn"),
                               solve_options(req), req.base);
  VerificationReport rep = verify_solution(fam.equation, fam.solution.y, vo);
  if (req.json) {
    Json j;
    j["status"] = "solved";
    j["family"] = family_name(kind);
    j["equation"] = Json{{"P", fam.equation.P.to_string()},
                         {"Q", fam.equation.Q.to_string()},
                         {"R", fam.equation.R.to_string()}};
    j["solution"] = fam.solution.y.to_string();
    j["n"] = fam.solution.n;
    j["notes"] = fam.notes;
    j["verification"] = verification_json(rep, vo.lo, vo.hi);
    out << j.dump(2) << "\n";
  } else {
    out << "family: " << family_name(kind) << "\n";
    out << "equation: " << fam.equation.to_string() << "\n";
    out << "n: " << fam.solution.n << "\n";
    out << "y = " << fam.solution.y.to_string() << "\n";
    for (const auto& s : fam.notes) out << "note: " << s << "\n";
    print_report(out, rep);
  }
  return kExitOk;
}

int cmd_tables(const Request& req, std::ostream& out) {
  std::vector<int> ids = req.tables.empty() ? table_ids() : req.tables;
  std::vector<Fixture> fixtures;
  for (int t : ids) {
    std::vector<int> ns = req.n_values;
    if (t == 5) std::erase(ns, 0);
    if (!req.n_values.empty() && ns.empty()) continue;
    for (auto& f : table_fixtures(t, ns)) fixtures.push_back(std::move(f));
  }
  if (req.examples)
    for (auto& f : example_fixtures()) fixtures.push_back(std::move(f));
  auto start = std::chrono::steady_clock::now();
  std::vector<FixtureResult> results = run_fixtures(fixtures, req.threads, req.seed);
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::size_t failed = 0;
  Json list = Json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    const Fixture& f = fixtures[i];
    const FixtureResult& r = results[i];
    if (!r.passed()) ++failed;
    if (req.json) {
      Json j;
      j["id"] = r.id;
      j["table"] = f.table;
      j["row"] = f.row;
      j["n_param"] = f.n;
      j["variant"] = f.variant;
      j["status"] = r.passed() ? "pass" : "fail";
      j["theorem"] = method_name(f.method);
      j["n"] = r.solved ? Json(r.solution.n) : Json(nullptr);
      j["solution"] = r.solved ? Json(r.solution.y.to_string()) : Json(nullptr);
      j["expected"] = f.expected.to_string();
      j["matches"] = r.matches;
      j["printed_matches"] = r.printed_matches ? Json(*r.printed_matches) : Json(nullptr);
      j["verification"] = verification_json(r.report, f.lo, f.hi);
      j["note"] = f.note;
      j["error"] = r.error;
      list.push_back(j);
    } else {
      out << (r.passed() ? "PASS " : "FAIL ") << std::left << std::setw(18) << r.id << method_name(f.method);
      if (r.solved) {
        out << " n=" << r.solution.n << (r.matches ? " match" : " MISMATCH")
            << (r.solution.residual_zero ? " residual=0" : " RESIDUAL") << " max=" << fmt(r.report.max_numeric_residual);
        if (r.report.rk_max_deviation) out << " rk=" << fmt(*r.report.rk_max_deviation);
        if (r.printed_matches) out << (*r.printed_matches ? " printed-ok" : " printed-corrected");
      } else {
        out << " error: " << r.error;
      }
      out << "\n";
    }
  }
  if (req.json) {
    Json j;
    j["status"] = failed == 0 ? "pass" : "fail";
    j["total"] = results.size();
    j["failed"] = failed;
    j["fixtures"] = list;
    out << j.dump(2) << "\n";
  } else {
    out << results.size() - failed << "/" << results.size() << " fixtures passed in " << std::fixed
        << std::setprecision(2) << seconds << " s\n";
  }
  return failed == 0 ? kExitOk : kExitFailed;
}

void add_equation_options(CLI::App* cmd, Request& req) {
  cmd->add_option("--form", req.form, "simple1 | simple2 | general")->check(CLI::IsMember({"simple1", "simple2", "general"}));
  cmd->add_option("--lambda0", req.lambda0, "lambda0(x) for the simple forms");
  cmd->add_option("--s0", req.s0, "s0(x) for the simple forms");
  cmd->add_option("--P", req.P, "P(x) of y' + P y + Q y^2 = R");
  cmd->add_option("--Q", req.Q, "Q(x)");
  cmd->add_option("--R", req.R, "R(x)");
}

void add_common_options(CLI::App* cmd, Request& req) {
  cmd->add_option("--params", req.params, "comma-separated parameter names");
  cmd->add_option("--n-max", req.n_max, "iteration limit")->check(CLI::Range(1, 200));
  cmd->add_option("--interval", req.interval, "verification interval lo,hi");
  cmd->add_flag("--json", req.json, "emit JSON");
  cmd->add_option("--seed", req.seed, "seed for random parameter bindings");
  cmd->add_option("--eliminate", req.eliminate, "parameter to solve for on conditional termination");
  cmd->add_option("--branch", req.branch, "delta index of the conditional branch to use");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Request req;
  CLI::App app{"Closed-form Riccati solutions through the asymptotic iteration method", "aimsolve"};
  app.require_subcommand(1);

  CLI::App* solve_cmd = app.add_subcommand("solve", "solve a Riccati equation");
  add_equation_options(solve_cmd, req);
  add_common_options(solve_cmd, req);
  solve_cmd->add_option("--strategy", req.strategy, "auto | t3 | t4 | t5 | t6")
      ->check(CLI::IsMember({"auto", "t3", "t4", "t5", "t6"}));

  CLI::App* verify_cmd = app.add_subcommand("verify", "check a candidate solution");
  add_equation_options(verify_cmd, req);
  add_common_options(verify_cmd, req);
  verify_cmd->add_option("--y", req.y, "candidate solution y(x)")->required();

  CLI::App* fam_cmd = app.add_subcommand("families", "generate a solvable family from a terminating seed");
  fam_cmd->add_option("--lambda0", req.lambda0, "seed lambda0(x)")->required();
  fam_cmd->add_option("--s0", req.s0, "seed s0(x)")->required();
  fam_cmd->add_option("--fn", req.fn, "free function: P for t3 and t6, R for t3r and t5r")->required();
  fam_cmd->add_option("--transform", req.transform, "t3 | t3r | t5r | t6")
      ->check(CLI::IsMember({"t3", "t3r", "t5r", "t6"}));
  fam_cmd->add_option("--base", req.base, "lower limit for numeric exponent integrals");
  add_common_options(fam_cmd, req);

  CLI::App* tables_cmd = app.add_subcommand("tables", "run the built-in table fixtures");
  tables_cmd->add_option("--table", req.tables, "table ids (1, 2, 4, 5, 6)")->delimiter(',')->check(
      CLI::IsMember({1, 2, 4, 5, 6}));
  tables_cmd->add_option("--n", req.n_values, "values of n")->delimiter(',')->check(CLI::Range(0, 12));
  tables_cmd->add_flag("--examples", req.examples, "include the worked examples");
  tables_cmd->add_option("--threads", req.threads, "worker threads (0: hardware concurrency)");
  tables_cmd->add_flag("--json", req.json, "emit JSON");
  tables_cmd->add_option("--seed", req.seed, "seed for random parameter bindings");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  Reporter rep(req, out, err);
  if (*solve_cmd) return rep.guarded([&] { return cmd_solve(req, out); });
  if (*verify_cmd) return rep.guarded([&] { return cmd_verify(req, out); });
  if (*fam_cmd) return rep.guarded([&] { return cmd_families(req, out); });
  return rep.guarded([&] { return cmd_tables(req, out); });
}

}  // namespace aimsolve
