#include "aimsolve/tables.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <future>
#include <thread>

#include "aimsolve/hyper.hpp"

namespace aimsolve {
namespace {

// Z and W abbreviate the two recurring hypergeometric arguments.
const std::map<std::string, std::string> kShorthand{{"Z", "(1-x)/2"}, {"W", "(a*x+b)^2/(2*a)"}};

std::vector<TableRow> rows_table1() {
  return {
      {1, 1, "2*x", "-4*n", "", "", "-4*n*x*F[-n+1;3/2;x^2]/F[-n;1/2;x^2]", "", "0", "", "", 0.1, 0.4},
      {1, 2, "2*x", "-2*(2*n+1)", "", "", "1/x-4*n*x/3*F[-n+1;5/2;x^2]/F[-n;3/2;x^2]", "", "1/x", "", "", 0.1, 0.4},
      {1, 3, "a*x+b", "-2*n*a", "", "", "-2*n*(a*x+b)*F[-n+1;3/2;W]/F[-n;1/2;W]", "", "0", "", "", 0.2, 0.8},
      {1, 4, "a*x+b", "-(2*n+1)*a", "", "", "a/(a*x+b)-2*n/3*(a*x+b)*F[-n+1;5/2;W]/F[-n;3/2;W]", "", "a/(a*x+b)", "",
       "", 0.22, 0.48},
      {1, 5, "b-c/x", "-n*b/x", "", "", "-n*b/c*F[-n+1;c+1;b*x]/F[-n;c;b*x]", "", "0", "", "", 0.2, 0.55},
      {1, 6, "((b-n+1)*x-c)/(x*(1-x))", "-n*b/(x*(1-x))", "", "", "-n*b/c*F[-n+1,b+1;c+1;x]/F[-n,b;c;x]", "", "0", "",
       "", 0.2, 0.45},
      {1, 7, "((-2*n+1)*x-c)/(x*(1-x))", "n^2/(x*(1-x))", "", "", "n^2/c*F[-n+1,-n+1;c+1;x]/F[-n,-n;c;x]", "", "0", "",
       "", 0.1, 0.9},
      {1, 8, "x/(1-x^2)", "-n^2/(1-x^2)", "", "", "n^2*F[-n+1,n+1;3/2;Z]/F[-n,n;1/2;Z]", "", "0", "", "", 1.1, 1.9},
      {1, 9, "2*x/(1-x^2)", "-n*(n+1)/(1-x^2)", "", "", "n*(n+1)/2*F[-n+1,n+2;2;Z]/F[-n,n+1;1;Z]", "", "0", "", "",
       1.1, 1.9},
      {1, 10, "3*x/(1-x^2)", "-n*(n+2)/(1-x^2)", "", "", "n*(n+2)/3*F[-n+1,n+3;5/2;Z]/F[-n,n+2;3/2;Z]", "", "0", "",
       "", 1.1, 1.9},
      {1, 11, "a*x/(1-x^2)", "-n*(n+a-1)/(1-x^2)", "", "", "n*(n+a-1)/a*F[-n+1,n+a;a/2+1;Z]/F[-n,n+a-1;a/2;Z]", "",
       "0", "", "", 1.1, 1.9},
      {1, 12, "((a+b+2)*x-b+a)/(1-x^2)", "-n*(n+a+b+1)/(1-x^2)", "", "",
       "n*(n+a+b+1)/(2*(a+1))*F[-n+1,n+a+b+2;a+2;Z]/F[-n,n+a+b+1;a+1;Z]", "", "0", "", "", 1.1, 1.9},
      {1, 13, "(1+2*k)*x/(1-x^2)", "-n*(n+2*k)/(1-x^2)", "", "",
       "n*(n+2*k)/2*F[-n+1,n+2*k+1;k+3/2;Z]/F[-n,n+2*k;k+1/2;Z]",
       "n*(n+2*k)/(2*k+1)*F[-n+1,n+2*k+1;k+3/2;Z]/F[-n,n+2*k;k+1/2;Z]", "0", "",
       "printed prefactor n(n+2k)/2 holds only for k = 1/2; the derivative of the 2F1 gives n(n+2k)/(2k+1)", 1.1,
       1.9},
      {1, 14, "2*(1+k)*x/(1-x^2)", "-n*(n+2*k+1)/(1-x^2)", "", "",
       "n*(n+2*k+1)/(2*(k+1))*F[-n+1,n+2*k+2;k+2;Z]/F[-n,n+2*k+1;k+1;Z]", "", "0", "", "", 1.1, 1.9},
      {1, 15, "-2*(x+1)/x^2", "n*(n+1)/x^2", "", "", "n*(n+1)/2*F[-n+1,n+2;;-x/2]/F[-n,n+1;;-x/2]", "", "0", "", "",
       0.5, 1.5},
      {1, 16, "-(a*x+b)/x^2", "n*(n+a-1)/x^2", "", "", "n*(n+a-1)/b*F[-n+1,n+a;;-x/b]/F[-n,n+a-1;;-x/b]", "", "0",
       "", "", 0.5, 1.5},
  };
}

std::vector<TableRow> rows_table2() {
  std::vector<TableRow> rows = rows_table1();
  const std::vector<std::string> printed{
      "4*n*x*F[-n+1;3/2;x^2]/F[-n;1/2;x^2]",
      "-1/x+4*n*x/3*F[-n+1;5/2;x^2]/F[-n;3/2;x^2]",
      "2*n*(a*x+b)*F[-n+1;3/2;W]/F[-n;1/2;W]",
      "-a/(a*x+b)+2*n/3*(a*x+b)*F[-n+1;5/2;W]/F[-n;3/2;W]",
      "n*b/c*F[-n+1;c+1;b*x]/F[-n;c;b*x]",
      "n*b/c*F[-n+1,b+1;c+1;x]/F[-n,b;c;x]",
      "-n^2/c*F[-n+1,-n+1;c+1;x]/F[-n,-n;c;x]",
      "-n^2*F[-n+1,n+1;3/2;Z]/F[-n,n;1/2;Z]",
      "-n*(n+1)/2*F[-n+1,n+2;2;Z]/F[-n,n+1;1;Z]",
      "-n*(n+2)/3*F[-n+1,n+3;5/2;Z]/F[-n,n+2;3/2;Z]",
      "-n*(n+a-1)/a*F[-n+1,n+a;a/2+1;Z]/F[-n,n+a-1;a/2;Z]",
      "-n*(n+a+b+1)/(2*(a+1))*F[-n+1,n+a+b+2;a+2;Z]/F[-n,n+a+b+1;a+1;Z]",
      "-n*(n+2*k)/2*F[-n+1,n+2*k+1;k+3/2;Z]/F[-n,n+2*k;k+1/2;Z]",
      "-n*(n+2*k+1)/(2*(k+1))*F[-n+1,n+2*k+2;k+2;Z]/F[-n,n+2*k+1;k+1;Z]",
      "-n*(n+1)/2*F[-n+1,n+2;;-x/2]/F[-n,n+1;;-x/2]",
      "-n*(n+a-1)/b*F[-n+1,n+a;;-x/b]/F[-n,n+a-1;;-x/b]",
  };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    TableRow& r = rows[i];
    r.table = 2;
    r.printed = printed[i];
    r.printed_zero = r.printed_zero == "0" ? "0" : "-(" + r.printed_zero + ")";
  }
  rows[6].note = "printed right-hand side n^2/(x(1-x)) has the wrong sign; the Gauss equation with a = b = -n gives "
                 "-n^2/(x(1-x)), i.e. the same s0 as the Theorem 1 row";
  rows[12].derived = "-n*(n+2*k)/(2*k+1)*F[-n+1,n+2*k+1;k+3/2;Z]/F[-n,n+2*k;k+1/2;Z]";
  return rows;
}

std::vector<TableRow> rows_table4() {
  return {
      {4, 1, "", "", "exp(x^2+IP)", "-4*n*exp(-x^2-IP)", "-4*n*x*exp(-x^2-IP)*F[-n+1;3/2;x^2]/F[-n;1/2;x^2]", "", "0",
       "", "", 0.1, 0.4},
      {4, 2, "", "", "exp(x^2+IP)", "-2*(2*n+1)*exp(-x^2-IP)",
       "exp(-x^2-IP)*(1/x-4*n*x/3*F[-n+1;5/2;x^2]/F[-n;3/2;x^2])", "", "exp(-x^2-IP)/x", "", "", 0.1, 0.4},
      {4, 3, "", "", "exp(x+IP)/x", "-n*exp(-x-IP)", "-n*x*exp(-x-IP)*F[-n+1;2;x]/F[-n;1;x]", "", "0", "", "", 0.05,
       0.4},
      {4, 4, "", "", "exp(b*x+IP)*exp(-c*log(x))", "-n*b*exp((c-1)*log(x))*exp(-b*x-IP)",
       "-n*b/c*exp(c*log(x))*exp(-b*x-IP)*F[-n+1;c+1;b*x]/F[-n;c;b*x]", "", "0", "", "", 0.2, 0.55},
      {4, 5, "", "", "exp((c+2*n-1)*log(x-1))*exp(-c*log(x))*exp(IP)",
       "-n^2*exp((c-1)*log(x))*exp(-(2*n+c)*log(x-1))*exp(-IP)",
       "n^2/c*exp(c*log(x))*exp(-(2*n+c-1)*log(x-1))*exp(-IP)*F[-n+1,-n+1;c+1;x]/F[-n,-n;c;x]", "", "0", "", "",
       1.6, 2.6},
      {4, 6, "", "", "exp((c+n-b-1)*log(x-1))*exp(-c*log(x))*exp(IP)",
       "n*b*exp((c-1)*log(x))*exp(-(n+c-b)*log(x-1))*exp(-IP)",
       "-n*b/c*exp(c*log(x))*exp(-(c+n-1-b)*log(x-1))*exp(-IP)*F[-n+1,b+1;c+1;x]/F[-n,b;c;x]", "", "0", "", "", 1.4, 2.4},
      {4, 7, "", "", "exp(-(1/2)*log(x^2-1)+IP)", "n^2*exp(-(1/2)*log(x^2-1)-IP)",
       "n^2*exp((1/2)*log(x^2-1)-IP)*F[-n+1,n+1;3/2;Z]/F[-n,n;1/2;Z]", "", "0", "", "", 1.1, 1.9},
      {4, 8, "", "", "exp(IP)/(x^2-1)", "n*(n+1)*exp(-IP)", "n*(n+1)/2*(x^2-1)*exp(-IP)*F[-n+1,n+2;2;Z]/F[-n,n+1;1;Z]",
       "", "0", "", "", 1.1, 1.9},
      {4, 9, "", "", "exp(-(3/2)*log(x^2-1)+IP)", "n*(n+2)*exp((1/2)*log(x^2-1)-IP)",
       "n*(n+2)/3*exp((3/2)*log(x^2-1)-IP)*F[-n+1,n+3;5/2;Z]/F[-n,n+2;3/2;Z]", "", "0", "", "", 1.1, 1.9},
      {4, 10, "", "", "exp(-(a/2)*log(x^2-1)+IP)", "n*(n+a-1)*exp((a/2-1)*log(x^2-1)-IP)",
       "n*(n+a-1)/a*exp((a/2)*log(x^2-1)-IP)*F[-n+1,n+a;a/2+1;Z]/F[-n,n+a-1;a/2;Z]", "", "0", "", "", 1.1, 1.9},
      {4, 11, "", "", "exp(-(k+1)*log(x^2-1)+IP)", "n*(n+2*k+1)*exp(k*log(x^2-1)-IP)",
       "n*(n+2*k+1)/(2*(k+1))*exp((k+1)*log(x^2-1)-IP)*F[-n+1,n+2*k+2;k+2;Z]/F[-n,n+2*k+1;k+1;Z]", "", "0", "", "",
       1.1, 1.9},
      {4, 12, "", "", "exp(-(k+1/2)*log(x^2-1)+IP)", "n*(n+2*k)*exp((k-1/2)*log(x^2-1)-IP)",
       "n*(n+2*k)/(1+2*k)*exp((k+1/2)*log(x^2-1)-IP)*F[-n+1,n+2*k+1;k+3/2;Z]/F[-n,n+2*k;k+1/2;Z]", "", "0", "", "",
       1.1, 1.9},
      {4, 13, "", "", "exp(int(-2/x^2)+IP)/x^2", "n*(n+1)*exp(-int(-2/x^2)-IP)",
       "n*(n+1)/2*x^2*exp(-int(-2/x^2)-IP)*F[-n+1,n+2;;-x/2]/F[-n,n+1;;-x/2]", "", "0", "", "", 0.5, 1.5},
      {4, 14, "", "", "exp(-a*log(x)+int(-b/x^2)+IP)", "n*(n+a-1)*exp((a-2)*log(x)-int(-b/x^2)-IP)",
       "n*(n+a-1)/b*exp(a*log(x)-int(-b/x^2)-IP)*F[-n+1,n+a;;-x/b]/F[-n,n+a-1;;-x/b]", "", "0", "", "", 0.5, 1.5},
      {4, 15, "", "", "exp(-(a+1)*log(x-1)-(b+1)*log(x+1)+IP)", "n*(n+a+b+1)*exp(a*log(x-1)+b*log(x+1)-IP)",
       "n*(n+a+b+1)/(2*(a+1))*(x^2-1)*exp(a*log(x-1)+b*log(x+1)-IP)*F[-n+1,n+a+b+2;a+2;Z]/F[-n,n+a+b+1;a+1;Z]", "",
       "0", "", "", 1.1, 1.9},
  };
}

std::vector<TableRow> rows_table5() {
  return {
      {5, 1, "", "", "-4*n*exp(-x^2+IP)", "exp(x^2-IP)", "-1/(4*n*x)*exp(x^2-IP)*F[-n;1/2;x^2]/F[-n+1;3/2;x^2]", "",
       "", "", "", 0.1, 0.8},
      {5, 2, "", "", "-2*(2*n+1)*exp(-x^2+IP)", "exp(x^2-IP)",
       "x*exp(x^2-IP)*F[-n;3/2;x^2]/(F[-n;3/2;x^2]-4/3*x^2*n*F[-n+1;5/2;x^2])", "", "", "", "", 0.05, 0.4},
      {5, 3, "", "", "-2*n*a*exp(-a*x^2/2-b*x+IP)", "exp(a*x^2/2+b*x-IP)",
       "-exp(a*x^2/2+b*x-IP)/(2*n*(a*x+b))*F[-n;1/2;W]/F[-n+1;3/2;W]", "", "", "", "", 0.2, 0.48},
      {5, 4, "", "", "-(2*n+1)*a*exp(-a*x^2/2-b*x+IP)", "exp(a*x^2/2+b*x-IP)",
       "(a*x+b)*exp(a*x^2/2+b*x-IP)*F[-n;3/2;W]/(a*F[-n;3/2;W]-2*n/3*(a*x+b)^2*F[-n+1;5/2;W])", "", "", "", "", 0.2,
       0.8},
      {5, 5, "", "", "-n*exp(-x+IP)", "exp(x-IP)/x", "-1/(n*x)*exp(x-IP)*F[-n;1;x]/F[-n+1;2;x]", "", "", "", "", 0.05,
       0.4},
      {5, 6, "", "", "-n*b*exp((c-1)*log(x))*exp(-b*x+IP)", "exp(-c*log(x))*exp(b*x-IP)",
       "c/n*exp(-c*log(x))*exp(b*x-IP)*F[-n;c;b*x]/F[-n+1;c+1;b*x]",
       "-c/(n*b)*exp(-c*log(x))*exp(b*x-IP)*F[-n;c;b*x]/F[-n+1;c+1;b*x]", "", "",
       "printed c/(n x^c) lacks the factor -1/b: R divided by the Theorem 1 solution of the same (lambda0, s0) gives "
       "-c/(n b x^c)",
       0.08, 0.28},
      {5, 7, "", "", "n*b*exp((c-1)*log(x))*exp((b-c-n)*log(x-1))*exp(IP)",
       "exp(-c*log(x))*exp((c+n-b-1)*log(x-1))*exp(-IP)",
       "c/(b*n)*exp(-c*log(x))*exp((c+n-b-1)*log(x-1))*exp(-IP)*F[-n,b;c;x]/F[-n+1,b+1;c+1;x]",
       "-c/(b*n)*exp(-c*log(x))*exp((c+n-b-1)*log(x-1))*exp(-IP)*F[-n,b;c;x]/F[-n+1,b+1;c+1;x]", "", "",
       "printed 1F1(-n, b; c; x) read as 2F1; printed sign is wrong: u = 2F1(-n, b; c; x) has u'/u = "
       "-(n b/c) 2F1(-n+1, b+1; c+1; x)/u",
       1.4, 2.4},
      {5, 8, "", "", "-n^2*exp((c-1)*log(x))*exp((-c-2*n)*log(x-1))*exp(IP)",
       "exp(-c*log(x))*exp((c+2*n-1)*log(x-1))*exp(-IP)",
       "-c/n^2*exp(-c*log(x))*exp((c+2*n-1)*log(x-1))*exp(-IP)*F[-n,-n;c;x]/F[-n+1,-n+1;c+1;x]",
       "c/n^2*exp(-c*log(x))*exp((c+2*n-1)*log(x-1))*exp(-IP)*F[-n,-n;c;x]/F[-n+1,-n+1;c+1;x]", "", "",
       "printed 1F1(-n, -n; c; x) read as 2F1; printed sign is wrong: u = 2F1(-n, -n; c; x) has u'/u = "
       "(n^2/c) 2F1(-n+1, -n+1; c+1; x)/u",
       1.4, 2.4},
      {5, 9, "", "", "n*(n+1)*exp(IP)", "exp(-IP)/(x^2-1)",
       "2/(x^2-1)*F[-n,n+1;1;Z]/(n*(n+1)*F[-n+1,n+2;2;Z])*exp(-IP)", "", "", "", "", 1.1, 1.9},
      {5, 10, "", "", "n*(n+a+b+1)*exp(a*log(x-1)+b*log(x+1)+IP)", "exp(-(a+1)*log(x-1)-(b+1)*log(x+1)-IP)",
       "exp(-(a+1)*log(x-1)-(b+1)*log(x+1)-IP)*2*(a+1)*F[-n,n+a+b+1;a+1;Z]/(n*(n+a+b+1)*F[-n+1,n+a+b+2;a+2;Z])", "",
       "", "", "", 1.1, 1.9},
      {5, 11, "", "", "n^2*exp(-(1/2)*log(x^2-1)+IP)", "exp(-(1/2)*log(x^2-1)-IP)",
       "exp(-(1/2)*log(x^2-1)-IP)/n^2*F[-n,n;1/2;Z]/F[-n+1,n+1;3/2;Z]", "", "", "", "", 1.1, 1.9},
      {5, 12, "", "", "n*(n+2)*exp((1/2)*log(x^2-1)+IP)", "exp(-(3/2)*log(x^2-1)-IP)",
       "3*exp(-(3/2)*log(x^2-1)-IP)/(n*(n+2))*F[-n,n+2;3/2;Z]/F[-n+1,n+3;5/2;Z]", "", "", "", "", 1.1, 1.9},
      {5, 13, "", "", "n*(n+2*k)*exp((k-1/2)*log(x^2-1)+IP)", "exp(-(1/2+k)*log(x^2-1)-IP)",
       "(1+2*k)*exp(-(k+1/2)*log(x^2-1)-IP)/(n*(n+2*k))*F[-n,n+2*k;k+1/2;Z]/F[-n+1,n+2*k+1;k+3/2;Z]", "", "", "", "",
       1.1, 1.9},
      {5, 14, "", "", "n*(n+2*k+1)*exp(k*log(x^2-1)+IP)", "exp(-(1+k)*log(x^2-1)-IP)",
       "2*(1+k)*exp(-(k+1)*log(x^2-1)-IP)/(n*(n+2*k+1))*F[-n,n+2*k+1;k+1;Z]/F[-n+1,n+2*k+2;k+2;Z]", "", "", "", "",
       1.1, 1.9},
      {5, 15, "", "", "n*(n+1)*exp(-int(-2/x^2)+IP)", "exp(int(-2/x^2)-IP)/x^2",
       "2*exp(int(-2/x^2)-IP)/(n*(n+1)*x^2)*F[-n,n+1;;-x/2]/F[-n+1,n+2;;-x/2]", "", "", "", "", 0.5, 1.5},
      {5, 16, "", "", "n*(n+a-1)*exp((a-2)*log(x))*exp(-int(-b/x^2)+IP)", "exp(-a*log(x))*exp(int(-b/x^2)-IP)",
       "b*exp(int(-b/x^2)-IP)/(n*(n+a-1))*exp(-a*log(x))*F[-n,n+a-1;;-x/b]/F[-n+1,n+a;;-x/2]",
       "b*exp(int(-b/x^2)-IP)/(n*(n+a-1))*exp(-a*log(x))*F[-n,n+a-1;;-x/b]/F[-n+1,n+a;;-x/b]", "", "",
       "printed denominator argument -x/2 should be -x/b, as in the numerator and the matching Theorem 1 row", 0.7, 1.5},
  };
}

std::vector<TableRow> rows_table6() {
  return {
      {6, 1, "2*x", "-4*n", "", "", "1/(-4*n*x*F[-n+1;3/2;x^2]/F[-n;1/2;x^2]-2*x)", "", "1/(-2*x)", "", "", 0.1, 0.4},
      {6, 2, "2*x", "-2*(2*n+1)", "", "", "1/(-1/x+4*n*x/3*F[-n+1;5/2;x^2]/F[-n;3/2;x^2]-2*x)",
       "1/(1/x-4*n*x/3*F[-n+1;5/2;x^2]/F[-n;3/2;x^2]-2*x)", "1/(-1/x-2*x)", "1/(1/x-2*x)",
       "printed denominator carries minus the Theorem 1 solution; the back-map needs +y_1 + P", 0.1, 0.36},
      {6, 3, "a*x+b", "-2*n*a", "", "", "1/(-2*n*(a*x+b)*F[-n+1;3/2;W]/F[-n;1/2;W]-a*x-b)", "", "1/(-a*x-b)", "", "",
       0.2, 0.48},
      {6, 4, "a*x+b", "-(2*n+1)*a", "", "", "1/(-a/(a*x+b)+2*n/3*(a*x+b)*F[-n+1;5/2;W]/F[-n;3/2;W]-a*x-b)",
       "1/(a/(a*x+b)-2*n/3*(a*x+b)*F[-n+1;5/2;W]/F[-n;3/2;W]-a*x-b)", "1/(-a/(a*x+b)-a*x-b)", "1/(a/(a*x+b)-a*x-b)",
       "printed denominator carries minus the Theorem 1 solution; the back-map needs +y_1 + P", 0.2, 0.46},
      {6, 5, "b-c/x", "-n*b/x", "", "", "1/(-n*b/c*F[-n+1;c+1;b*x]/F[-n;c;b*x]-b+c/x)", "", "1/(-b+c/x)", "", "", 0.4, 0.6},
      {6, 6, "((-n+b+1)*x-c)/(x*(1-x))", "-n*b/(x*(1-x))", "", "",
       "1/(-n*b/c*F[-n+1,b+1;c+1;x]/F[-n,-n;c;x]-((-n+b+1)*x-c)/(x*(1-x)))",
       "1/(-n*b/c*F[-n+1,b+1;c+1;x]/F[-n,b;c;x]-((-n+b+1)*x-c)/(x*(1-x)))", "1/(-((-n+b+1)*x-c)/(x*(1-x)))", "",
       "printed denominator 2F1(-n, -n; c; x) should be 2F1(-n, b; c; x) as in the matching Theorem 1 row", 0.48, 0.7},
      {6, 7, "((-2*n+1)*x-c)/(x*(1-x))", "n^2/(x*(1-x))", "", "",
       "1/(n^2/c*F[-n+1,-n+1;c+1;x]/F[-n,-n;c;x]-((-2*n+1)*x-c)/(x*(1-x)))", "",
       "1/(-((-2*n+1)*x-c)/(x*(1-x)))", "", "", 0.1, 0.9},
      {6, 8, "-(a*x+b)/x^2", "n*(n+a-1)/x^2", "", "", "1/(n*(n+a-1)/b*F[-n+1,n+a;;-x/b]/F[-n,n+a-1;;-x/b]+(a*x+b)/x^2)",
       "", "1/((a*x+b)/x^2)", "", "", 0.5, 1.5},
      {6, 9, "2*(k+1)*x/(1-x^2)", "-n*(n+2*k+1)/(1-x^2)", "", "",
       "1/(n*(n+2*k+1)/(2*(k+1))*F[-n+1,n+2*k+2;k+2;Z]/F[-n,n+2*k+1;k+1;Z]-2*(k+1)*x/(1-x^2))", "",
       "1/(-2*(k+1)*x/(1-x^2))", "",
       "printed y coefficient R'/R + 2(k+1)x/(1-x^2) disagrees with the y^2 coefficient and the solution; the fixture "
       "uses lambda0 = 2(k+1)x/(1-x^2)",
       1.1, 1.9},
      {6, 10, "(2*k+1)*x/(1-x^2)", "-n*(n+2*k)/(1-x^2)", "", "",
       "1/(n*(n+2*k)/(2*k+1)*F[-n+1,n+2*k+1;k+3/2;Z]/F[-n,n+2*k;k+1/2;Z]-(2*k+1)*x/(1-x^2))", "",
       "1/(-(2*k+1)*x/(1-x^2))", "",
       "printed y coefficient R'/R + (2k+1)x/(1-x^2) disagrees with the y^2 coefficient and the solution; the fixture "
       "uses lambda0 = (2k+1)x/(1-x^2)",
       1.1, 1.9},
  };
}

std::string rational_text(const Rational& q) { return "(" + q.get_str() + ")"; }

std::map<std::string, std::string> binding_text(int n) {
  std::map<std::string, std::string> v;
  for (const auto& [k, q] : fixture_defaults()) v[k] = rational_text(q);
  v["n"] = "(" + std::to_string(n) + ")";
  return v;
}

NormalForm parse_closed(const std::string& text) { return normalize(parse_expr(text, {})); }

// Expands markers and parses a table formula for concrete n.
NormalForm formula(const std::string& text, const std::string& ip, int n) {
  std::string s = instantiate(instantiate(text, kShorthand), {{"IP", ip}});
  s = instantiate(s, binding_text(n));
  return parse_closed(expand_hyper_markers(s, {}, {}));
}

NormalForm closed(const std::string& text, int n) { return formula(text, "0", n); }

}  // namespace

const std::map<std::string, Rational>& fixture_defaults() {
  static const std::map<std::string, Rational> d{
      {"a", Rational(2)}, {"b", Rational(3)}, {"c", Rational(1, 2)}, {"k", Rational(1)}, {"m", Rational(1)}};
  return d;
}

const std::vector<TableRow>& table_rows(int table) {
  static const std::vector<TableRow> t1 = rows_table1(), t2 = rows_table2(), t4 = rows_table4(),
                                     t5 = rows_table5(), t6 = rows_table6();
  switch (table) {
    case 1: return t1;
    case 2: return t2;
    case 4: return t4;
    case 5: return t5;
    case 6: return t6;
    default: throw std::invalid_argument("no table " + std::to_string(table));
  }
}

std::vector<int> table_ids() { return {1, 2, 4, 5, 6}; }

std::vector<int> default_n_values(int table) {
  if (table == 5) return {1, 2, 3};
  return {0, 1, 2, 3};
}

std::string instantiate(const std::string& text, const std::map<std::string, std::string>& values) {
  std::string out;
  std::size_t i = 0;
  auto ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < text.size()) {
    if (!ident(text[i])) {
      out += text[i++];
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && ident(text[j])) ++j;
    std::string word = text.substr(i, j - i);
    auto it = values.find(word);
    out += it == values.end() ? word : "(" + it->second + ")";
    i = j;
  }
  return out;
}

Fixture table_fixture(const TableRow& row, int n, const std::string& variant) {
  Fixture f;
  f.table = row.table;
  f.row = row.row;
  f.n = n;
  f.variant = variant;
  f.id = std::to_string(row.table) + "." + std::to_string(row.row) + " n=" + std::to_string(n);
  if (!variant.empty()) f.id += " " + variant;
  f.note = row.note;
  f.lo = row.lo;
  f.hi = row.hi;

  const std::string ip = variant == "P=1" ? "x" : "0";
  auto pick = [&](const std::string& nonzero, const std::string& zero) {
    return n == 0 && !zero.empty() ? zero : nonzero;
  };
  const std::string printed = pick(row.printed, row.printed_zero);
  std::string derived;
  if (!row.derived.empty()) derived = pick(row.derived, row.derived_zero.empty() ? row.printed_zero : row.derived_zero);
  else if (n == 0 && !row.derived_zero.empty()) derived = row.derived_zero;

  switch (row.table) {
    case 1:
    case 2:
    case 6:
      f.lambda0 = closed(row.lambda0, n);
      f.s0 = closed(row.s0, n);
      break;
    default:
      break;
  }
  switch (row.table) {
    case 1:
      f.method = Method::T1;
      f.equation = RiccatiEquation::simple1(f.lambda0, f.s0);
      break;
    case 2:
      f.method = Method::T2;
      f.equation = RiccatiEquation::simple2(f.lambda0, f.s0);
      break;
    case 4:
    case 5: {
      f.method = row.table == 4 ? Method::T3 : Method::T4;
      NormalForm P = parse_closed(variant == "P=1" ? "1" : "0");
      f.equation = RiccatiEquation::make(P, formula(row.Q, ip, n), formula(row.R, ip, n));
      break;
    }
    case 6: {
      f.method = Method::T5;
      NormalForm R(Rational(1));
      NormalForm P = R.derivative() / R - f.lambda0;
      f.equation = RiccatiEquation::make(P, f.s0 / R + (P / R).derivative(), R);
      break;
    }
    default:
      throw std::invalid_argument("no table " + std::to_string(row.table));
  }
  if (derived.empty()) {
    f.expected = formula(printed, ip, n);
  } else {
    f.expected = formula(derived, ip, n);
    f.printed = formula(printed, ip, n);
  }
  return f;
}

std::vector<Fixture> table_fixtures(int table, const std::vector<int>& n_values) {
  std::vector<int> ns = n_values.empty() ? default_n_values(table) : n_values;
  std::vector<std::string> variants{""};
  if (table == 4 || table == 5) variants = {"P=0", "P=1"};
  if (table == 6) variants = {"R=1"};
  std::vector<Fixture> out;
  for (const auto& row : table_rows(table))
    for (const auto& v : variants)
      for (int n : ns) out.push_back(table_fixture(row, n, v));
  return out;
}

std::vector<Fixture> example_fixtures() {
  const std::vector<std::string> params{"a", "b", "c", "m", "n"};
  auto nf = [&](const std::string& s) { return normalize(parse_expr(s, params)); };
  std::vector<Fixture> out;

  Fixture e1;
  e1.id = "example 1";
  e1.method = Method::T1;
  e1.lambda0 = nf("-((m-a)*x^2+(2*c*m-1)*x-c)/(a*x^3+b*x^2+c*x)");
  e1.s0 = nf("-(-2*m*x+1)/(a*x^3+b*x^2+c*x)");
  e1.equation = RiccatiEquation::simple1(e1.lambda0, e1.s0);
  e1.expected = nf("(2*(m+a)*x+4*c*m+2*b-1)/((m+a)*x^2+(4*c*m+2*b-1)*(x+c))");
  e1.lo = 0.1;
  e1.hi = 0.9;
  out.push_back(e1);

  const std::vector<std::string> y2{"-2/x", "-2*(18*x^2+1)/(x*(1+9*x^2))",
                                    "-2*(729*x^4+108*x^2+2)/(x*(243*x^4+54*x^2+2))"};
  for (int i = 0; i < 3; ++i) {
    Fixture e;
    e.id = "example 2 branch " + std::to_string(2 * (i + 1));
    e.method = Method::T2;
    e.lambda0 = nf("3*a*x+1/x");
    e.s0 = nf("a^2");
    e.equation = RiccatiEquation::simple2(e.lambda0, e.s0);
    e.options.eliminate = "a";
    e.options.branch = 2 * (i + 1);
    e.expected = nf(y2[static_cast<std::size_t>(i)]);
    e.lo = 0.1;
    e.hi = 0.9;
    out.push_back(e);
  }

  Fixture e3;
  e3.id = "example 3";
  e3.method = Method::T3;
  e3.equation = RiccatiEquation::parse("1", "exp((3/4)*x^4+x)", "-27*x^2*exp(-(3/4)*x^4-x)", params);
  e3.expected = nf("(9*x^8-30*x^4+5)/(x*exp((3/4)*x^4+x)*(x^8-6*x^4+5))");
  e3.lo = 0.1;
  e3.hi = 0.9;
  out.push_back(e3);

  for (int m = 1; m <= 3; ++m) {
    Fixture e;
    e.id = "example 4 m=" + std::to_string(m);
    e.method = Method::T3;
    e.equation = RiccatiEquation::parse("-b/x", "-a*exp(n*log(x))", "c*exp(-(n+2)*log(x))", params);
    e.options.eliminate = "c";
    e.options.branch = m;
    e.expected = nf("-" + std::to_string(m) + "/(a*x*exp(n*log(x)))");
    e.lo = 0.5;
    e.hi = 1.5;
    out.push_back(e);
  }
  return out;
}

bool FixtureResult::numeric_pass() const {
  return report.grid.size() > 1 && report.max_numeric_residual < 1e-8 && report.rk_max_deviation.has_value() &&
         *report.rk_max_deviation < 1e-6;
}

FixtureResult run_fixture(const Fixture& f, std::uint64_t seed) {
  FixtureResult r;
  r.id = f.id;
  auto start = std::chrono::steady_clock::now();
  try {
    switch (f.method) {
      case Method::T1: r.solution = solve_theorem1(f.lambda0, f.s0, f.options); break;
      case Method::T2: r.solution = solve_theorem2(f.lambda0, f.s0, f.options); break;
      case Method::T3: r.solution = solve(f.equation, Strategy::T3, f.options); break;
      case Method::T4: r.solution = solve(f.equation, Strategy::T4, f.options); break;
      case Method::T5: r.solution = solve(f.equation, Strategy::T5, f.options); break;
      case Method::T6: r.solution = solve(f.equation, Strategy::T6, f.options); break;
      case Method::Quick: r.solution = solve(f.equation, Strategy::Auto, f.options); break;
    }
    r.solved = true;
    r.equation = f.equation.eliminated(r.solution.eliminations);
    NormalForm expected = apply_eliminations(f.expected, r.solution.eliminations);
    r.matches = r.solution.y == expected;
    if (f.printed) r.printed_matches = r.solution.y == apply_eliminations(*f.printed, r.solution.eliminations);
    VerifyOptions o;
    o.lo = f.lo;
    o.hi = f.hi;
    o.seed = seed;
    r.report = verify_solution(r.equation, r.solution.y, o);
  } catch (const Error& e) {
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<FixtureResult> run_fixtures(const std::vector<Fixture>& fixtures, unsigned threads, std::uint64_t seed) {
  std::vector<FixtureResult> out(fixtures.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < fixtures.size(); i = next++) out[i] = run_fixture(fixtures[i], seed);
  };
  std::vector<std::future<void>> pool;
  for (unsigned t = 0; t < threads; ++t) pool.push_back(std::async(std::launch::async, worker));
  for (auto& p : pool) p.get();
  return out;
}

}  // namespace aimsolve
