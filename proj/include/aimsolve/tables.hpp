#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aimsolve/riccati.hpp"
#include "aimsolve/verify.hpp"

namespace aimsolve {

// One row of a solution table. Formulas use the parameters a, b, c, k, n,
// F[a1,...;b1,...;z] hypergeometric markers, and the token IP for the
// antiderivative of the free function P (tables 4 and 5).
struct TableRow {
  int table = 0, row = 0;
  std::string lambda0, s0;  // tables 1, 2 and 6
  std::string Q, R;         // tables 4 and 5
  std::string printed;      // y_n as printed
  std::string derived;      // replaces `printed` when that one is not a solution
  // y_0 when a marker ratio does not truncate at n = 0.
  std::string printed_zero, derived_zero;
  std::string note;
  double lo = 0, hi = 0;
};

const std::vector<TableRow>& table_rows(int table);
std::vector<int> table_ids();
std::vector<int> default_n_values(int table);
// a = 2, b = 3, c = 1/2, k = 1, m = 1.
const std::map<std::string, Rational>& fixture_defaults();

// Replaces whole-word parameter names by parenthesized values.
std::string instantiate(const std::string& text, const std::map<std::string, std::string>& values);

struct Fixture {
  std::string id;
  int table = 0, row = 0, n = 0;  // table 0: worked examples
  std::string variant;
  Method method = Method::T1;
  RiccatiEquation equation;
  NormalForm lambda0, s0;  // T1 and T2 fixtures
  SolveOptions options;
  NormalForm expected;
  std::optional<NormalForm> printed;  // set when a derived form replaces it
  std::string note;
  double lo = 0, hi = 0;
};

// Every row of the table for each n (default_n_values when empty); tables
// 4 and 5 run with P = 0 and P = 1, table 6 with R = 1.
std::vector<Fixture> table_fixtures(int table, const std::vector<int>& n_values = {});
Fixture table_fixture(const TableRow& row, int n, const std::string& variant);
std::vector<Fixture> example_fixtures();

struct FixtureResult {
  std::string id;
  bool solved = false;
  Solution solution;
  RiccatiEquation equation;  // with eliminations applied
  bool matches = false;
  std::optional<bool> printed_matches;
  VerificationReport report;
  std::string error;
  double seconds = 0;

  bool symbolic_pass() const { return solved && matches && solution.residual_zero; }
  bool numeric_pass() const;
  bool passed() const { return symbolic_pass() && numeric_pass(); }
};

FixtureResult run_fixture(const Fixture& f, std::uint64_t seed = 1);
// Runs fixtures on `threads` workers (hardware concurrency when 0) and
// returns results in input order.
std::vector<FixtureResult> run_fixtures(const std::vector<Fixture>& fixtures, unsigned threads = 0,
                                        std::uint64_t seed = 1);

}  // namespace aimsolve
