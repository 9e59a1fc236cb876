#include <gtest/gtest.h>

#include "aimsolve/tables.hpp"

using namespace aimsolve;

namespace {

NormalForm nf(const std::string& s) { return normalize(parse_expr(s, {})); }

const TableRow& row(int table, int r) { return table_rows(table).at(static_cast<std::size_t>(r - 1)); }

}  // namespace

TEST(Tables, Instantiate) {
  EXPECT_EQ(instantiate("n*(n+a)-exp(x)", {{"n", "2"}, {"a", "1/2"}}), "(2)*((2)+(1/2))-exp(x)");
  EXPECT_EQ(instantiate("int(b/x)", {{"n", "2"}, {"b", "3"}}), "int((3)/x)");
}

TEST(Tables, RowCounts) {
  EXPECT_EQ(table_rows(1).size(), 16u);
  EXPECT_EQ(table_rows(2).size(), 16u);
  EXPECT_EQ(table_rows(4).size(), 15u);
  EXPECT_EQ(table_rows(5).size(), 16u);
  EXPECT_EQ(table_rows(6).size(), 10u);
  EXPECT_EQ(table_fixtures(1).size(), 64u);
  EXPECT_EQ(table_fixtures(4).size(), 120u);
  EXPECT_EQ(table_fixtures(5).size(), 96u);
  EXPECT_THROW(table_rows(3), std::invalid_argument);
}

TEST(Tables, FirstRowExpansion) {
  Fixture f = table_fixture(row(1, 1), 1, "");
  EXPECT_EQ(f.expected, nf("-4*x/(1-2*x^2)"));
  EXPECT_EQ(f.lambda0, nf("2*x"));
  EXPECT_EQ(f.s0, nf("-4"));
  EXPECT_EQ(table_fixture(row(1, 2), 0, "").expected, nf("1/x"));
}

TEST(Tables, SecondTableIsSignTwin) {
  for (int r = 1; r <= 16; ++r)
    for (int n : {0, 1, 2}) {
      Fixture a = table_fixture(row(1, r), n, ""), b = table_fixture(row(2, r), n, "");
      EXPECT_EQ(b.expected, -a.expected) << r << " " << n;
      EXPECT_EQ(b.s0, a.s0) << r;
    }
}

TEST(Tables, FourthTableRecoversFirst) {
  for (int r = 1; r <= 2; ++r)
    for (int n : {0, 1, 2, 3}) {
      Fixture t4 = table_fixture(row(4, r), n, "P=0");
      Fixture t1 = table_fixture(row(1, r), n, "");
      EXPECT_EQ(t4.expected, t1.expected * nf("exp(-x^2)")) << r << " " << n;
      FixtureResult a = run_fixture(t4), b = run_fixture(t1);
      ASSERT_TRUE(a.solved && b.solved) << a.error << b.error;
      EXPECT_EQ(a.solution.y, b.solution.y * nf("exp(-x^2)"));
    }
}

TEST(Tables, RowsPass) {
  std::vector<Fixture> fs;
  for (int t : table_ids())
    for (const auto& r : table_rows(t)) fs.push_back(table_fixture(r, 2, t == 4 || t == 5 ? "P=1" : ""));
  for (const auto& r : run_fixtures(fs)) {
    EXPECT_TRUE(r.symbolic_pass()) << r.id << " " << r.error;
    EXPECT_TRUE(r.numeric_pass()) << r.id << " residual " << r.report.max_numeric_residual << " " << r.report.rk_note;
  }
}

TEST(Tables, ExamplesPass) {
  for (const auto& r : run_fixtures(example_fixtures())) EXPECT_TRUE(r.passed()) << r.id << " " << r.error;
}

TEST(Tables, PrintedFormsThatFail) {
  const std::vector<std::pair<int, int>> corrected{{1, 13}, {2, 13}, {5, 6}, {5, 7}, {5, 8}, {5, 16}, {6, 2}, {6, 4}, {6, 6}};
  for (auto [t, r] : corrected) {
    Fixture f = table_fixture(row(t, r), 2, t == 5 ? "P=0" : "");
    ASSERT_TRUE(f.printed.has_value()) << t << "." << r;
    EXPECT_FALSE(riccati_residual(f.equation, *f.printed).is_zero()) << t << "." << r;
    EXPECT_TRUE(riccati_residual(f.equation, f.expected).is_zero()) << t << "." << r;
  }
}

TEST(Tables, PrintedSecondTableRowSevenSign) {
  // Right-hand side as printed: y' - lambda0 y - y^2 = n^2/(x(1-x)).
  NormalForm l0 = nf("(-3*x-1/2)/(x*(1-x))");
  RiccatiEquation printed = RiccatiEquation::simple2(l0, nf("-4/(x*(1-x))"));
  Fixture f = table_fixture(row(2, 7), 2, "");
  EXPECT_EQ(f.lambda0, l0);
  EXPECT_FALSE(riccati_residual(printed, f.expected).is_zero());
  EXPECT_TRUE(riccati_residual(f.equation, f.expected).is_zero());
}

TEST(Tables, PrintedFifthTableCoefficientDoesNotTerminate) {
  // Q with the printed (x-1) exponent b+1-c-n: QR = nb/x, not nb/(x(x-1)).
  const std::vector<std::string> params{};
  RiccatiEquation printed = RiccatiEquation::parse(
      "0", "2*3*exp((1/2-1)*log(x))*exp((3+1-1/2-2)*log(x-1))", "exp(-1/2*log(x))*exp((1/2+2-3-1)*log(x-1))", params);
  SolveOptions o;
  o.n_max = 8;
  EXPECT_THROW(solve(printed, Strategy::T4, o), NoTerminationError);
  FixtureResult r = run_fixture(table_fixture(row(5, 7), 2, "P=0"));
  EXPECT_TRUE(r.passed()) << r.error;
}
