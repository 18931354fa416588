#include <gtest/gtest.h>

#include <algorithm>

#include "ldsolve/oracle.hpp"
#include "test_support.hpp"

using namespace ldsolve;
using ldsolve::testing::nr;

namespace {

const char* kTransport = "variables: x3, x6, y\n-4*x3 - 5*x6 + 1*y >= 3\n3*x3 + 6*x6 - 1*y >= 1\n";
const char* kTransportSeries = "x6^4*y^23 / ((1-x6*y^5)*(1-x6*y^6)*(1-x3*x6*y^9))";
const char* kHomogeneous = "variables: t1,t2,t3,t4\nt1+2*t2-t3-t4=0\n2*t1+3*t2-2*t3-t4=0\n";

ExponentVector point(const std::vector<std::string>& vars, const std::vector<long>& xs) {
  ExponentVector m;
  for (std::size_t i = 0; i < vars.size(); ++i) m.set(vars[i], xs[i]);
  return m;
}

}  // namespace

TEST(BruteSolutions, TransportSmallestCarCount) {
  ConstraintSystem sys = parse_constraints(kTransport);
  auto sols = brute_solutions(sys, 23);
  long smallest = 1000;
  for (const auto& s : sols) smallest = std::min(smallest, s.get("y"));
  EXPECT_EQ(smallest, 23);
  EXPECT_NE(std::find(sols.begin(), sols.end(), point(sys.variables, {0, 4, 23})), sols.end());
}

TEST(BruteSolutions, SmallCases) {
  EXPECT_TRUE(brute_solutions(parse_constraints("variables: x\nx + 1 = 0\n"), 5).empty());
  ConstraintSystem pair = parse_constraints("variables: x1,x2\nx1+x2=2\n");
  auto sols = brute_solutions(pair, 2);
  ASSERT_EQ(sols.size(), 3u);
  for (const auto& p : {point(pair.variables, {2, 0}), point(pair.variables, {1, 1}), point(pair.variables, {0, 2})})
    EXPECT_NE(std::find(sols.begin(), sols.end(), p), sols.end());
  EXPECT_TRUE(std::is_sorted(sols.begin(), sols.end(), CanonicalLess{}));
}

TEST(CheckSeries, TransportIsClean) {
  EXPECT_TRUE(check_series(nr(kTransportSeries), parse_constraints(kTransport), 35).ok());
}

TEST(CheckSeries, ZeroAgainstInfeasible) {
  EXPECT_TRUE(check_series(NiceRational{}, parse_constraints("variables: x\nx + 1 = 0\n"), 10).ok());
}

TEST(CheckSeries, ExtraFactorIsCaught) {
  NiceRational chi = nr(kTransportSeries);
  chi.multiply_factor(ExponentVector::var("x3"));
  EnumerationReport r = check_series(chi, parse_constraints(kTransport), 35);
  EXPECT_FALSE(r.ok());
}

TEST(CheckSeries, DoubledCoefficientIsCaught) {
  NiceRational chi = nr("2/((1-t1*t3)*(1-t2*t3*t4))");
  EnumerationReport r = check_series(chi, parse_constraints(kHomogeneous), 6);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.mismatches.front().coefficient, 2);
}

TEST(CheckBasis, PaperBasisIsClean) {
  ConstraintSystem sys = parse_constraints(kHomogeneous);
  SolutionBasis basis{{point(sys.variables, {1, 0, 1, 0}), point(sys.variables, {0, 1, 1, 1})}, std::nullopt};
  EXPECT_TRUE(check_basis(basis, sys, BasisCheckOptions{8, 20}).ok());
}

TEST(CheckBasis, NegativeControls) {
  ConstraintSystem sys = parse_constraints(kHomogeneous);
  EXPECT_FALSE(check_basis(SolutionBasis{}, sys).ok());
  SolutionBasis polluted{{point(sys.variables, {1, 0, 1, 0}), point(sys.variables, {0, 1, 1, 1}),
                          point(sys.variables, {1, 1, 0, 0})},
                         std::nullopt};
  EXPECT_FALSE(check_basis(polluted, sys).ok());
  SolutionBasis comparable{{point(sys.variables, {1, 0, 1, 0}), point(sys.variables, {0, 1, 1, 1}),
                            point(sys.variables, {2, 0, 2, 0})},
                           std::nullopt};
  EXPECT_FALSE(check_basis(comparable, sys).ok());
}

TEST(Reports, RenderingIsDeterministic) {
  ConstraintSystem sys = parse_constraints(kHomogeneous);
  NiceRational chi = nr("1/((1-t1*t3)*(1-t2*t3*t4)*(1-t1))");
  EnumerationReport a = check_series(chi, sys, 6), b = check_series(chi, sys, 6);
  EXPECT_EQ(render_report(a, sys.variables), render_report(b, sys.variables));
  EXPECT_EQ(render_report_json(a, sys.variables), render_report_json(b, sys.variables));
  EXPECT_NE(render_report(a, sys.variables).find("mismatches:"), std::string::npos);
}
