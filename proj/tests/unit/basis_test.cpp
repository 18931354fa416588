#include <gtest/gtest.h>

#include <algorithm>

#include "ldsolve/basis.hpp"
#include "ldsolve/errors.hpp"
#include "ldsolve/oracle.hpp"
#include "test_support.hpp"

using namespace ldsolve;
using ldsolve::testing::nr;

namespace {

std::vector<std::string> tuples(const std::vector<ExponentVector>& ms, const std::vector<std::string>& vars) {
  std::vector<std::string> out;
  for (const auto& m : ms) out.push_back(render_tuple(m, vars));
  std::sort(out.begin(), out.end());
  return out;
}

ExponentVector point(const std::vector<std::string>& vars, const std::vector<long>& xs) {
  ExponentVector m;
  for (std::size_t i = 0; i < vars.size(); ++i) m.set(vars[i], xs[i]);
  return m;
}

const std::vector<std::string> kXY{"x1", "x2", "y3", "y4"};
const char* kHomogeneous = "variables: t1,t2,t3,t4\nt1+2*t2-t3-t4=0\n2*t1+3*t2-2*t3-t4=0\n";

}  // namespace

TEST(GordanSingle, PaperEquation) {
  Constraint eq = parse_constraints("variables: x1,x2,y3,y4\nx1+2*x2=y3+y4\n").constraints[0];
  EXPECT_EQ(tuples(gordan_minimal_single(eq, kXY), kXY),
            (std::vector<std::string>{"(0,1,0,2)", "(0,1,1,1)", "(0,1,2,0)", "(1,0,0,1)", "(1,0,1,0)"}));
}

TEST(GordanSingle, SmallEquations) {
  std::vector<std::string> xy{"x1", "x2"};
  EXPECT_EQ(tuples(gordan_minimal_single(parse_constraints("variables: x1,x2\nx1=x2\n").constraints[0], xy), xy),
            std::vector<std::string>{"(1,1)"});
  EXPECT_EQ(tuples(gordan_minimal_single(parse_constraints("variables: x1,x2\n2*x1=3*x2\n").constraints[0], xy), xy),
            std::vector<std::string>{"(3,2)"});
}

TEST(EulerCandidates, PaperListAndContainment) {
  Constraint eq = parse_constraints("variables: x1,x2,y3,y4\nx1+2*x2=y3+y4\n").constraints[0];
  auto cands = euler_candidates(eq, kXY, 2);
  EXPECT_EQ(tuples(cands, kXY),
            (std::vector<std::string>{"(0,1,0,2)", "(0,1,1,1)", "(0,1,2,0)", "(1,0,0,1)", "(1,0,1,0)", "(2,0,0,2)",
                                      "(2,0,1,1)", "(2,0,2,0)"}));
  EXPECT_TRUE(euler_candidates(eq, kXY, 0).empty());
  auto all = euler_candidates(eq, kXY, default_candidate_bound(eq));
  for (const auto& q : gordan_minimal_single(eq, kXY))
    EXPECT_NE(std::find(all.begin(), all.end(), q), all.end()) << render_tuple(q, kXY);
}

TEST(GordanSystem, PaperExample) {
  ConstraintSystem sys = parse_constraints(kHomogeneous);
  EXPECT_EQ(tuples(gordan_minimal_system(sys), sys.variables),
            (std::vector<std::string>{"(0,1,1,1)", "(1,0,1,0)"}));
}

TEST(GordanSystem, SingleEquationMatchesSingleRound) {
  ConstraintSystem sys = parse_constraints("variables: x1,x2,y3,y4\nx1+2*x2-y3-y4=0\n");
  EXPECT_EQ(tuples(gordan_minimal_system(sys), sys.variables),
            tuples(gordan_minimal_single(sys.constraints[0], sys.variables), sys.variables));
}

TEST(GordanSystem, AgreesWithBruteForceMinima) {
  std::mt19937_64 rng(51);
  int checked = 0;
  while (checked < 20) {
    ConstraintSystem sys = ldsolve::testing::random_system(rng);
    for (auto& c : sys.constraints) {
      c.constant = 0;
      c.rel = Relation::Equal;
    }
    std::vector<ExponentVector> nonzero;
    for (auto& s : brute_solutions(sys, 10))
      if (!s.empty()) nonzero.push_back(s);
    auto expected = minimal_elements(nonzero);
    auto got = gordan_minimal_system(sys);
    // Box minima are only complete when every basis element fits the box.
    bool fits = std::all_of(got.begin(), got.end(), [&](const ExponentVector& m) {
      return std::all_of(m.entries().begin(), m.entries().end(), [](const auto& e) { return e.second <= 10; });
    });
    if (!fits) continue;
    EXPECT_EQ(tuples(got, sys.variables), tuples(expected, sys.variables)) << render(sys);
    ++checked;
  }
}

TEST(MinimalElements, Examples) {
  std::vector<std::string> t{"t1", "t2", "t3", "t4"};
  auto got = minimal_elements({point(t, {0, 1, 1, 1}), point(t, {1, 0, 1, 0}), point(t, {1, 1, 2, 1}),
                               point(t, {0, 2, 2, 2})});
  EXPECT_EQ(tuples(got, t), (std::vector<std::string>{"(0,1,1,1)", "(1,0,1,0)"}));
  std::vector<std::string> xy{"x", "y"};
  EXPECT_EQ(tuples(minimal_elements({point(xy, {2, 3})}), xy), std::vector<std::string>{"(2,3)"});
  EXPECT_EQ(tuples(minimal_elements({point(xy, {1, 0}), point(xy, {2, 0}), point(xy, {3, 0})}), xy),
            std::vector<std::string>{"(1,0)"});
}

TEST(ParametricForm, TransportFamily) {
  auto fam = parametric_form(nr("x6^4*y^23 / ((1-x6*y^5)*(1-x6*y^6)*(1-x3*x6*y^9))"));
  ASSERT_TRUE(fam.has_value());
  ASSERT_EQ(fam->size(), 1u);
  std::vector<std::string> v{"x3", "x6", "y"};
  EXPECT_EQ(render_tuple((*fam)[0].offset, v), "(0,4,23)");
  EXPECT_EQ(tuples((*fam)[0].generators, v), (std::vector<std::string>{"(0,1,5)", "(0,1,6)", "(1,1,9)"}));
}

TEST(ParametricForm, HomogeneousExample) {
  auto fam = parametric_form(nr("1/((1-t1*t3)*(1-t2*t3*t4))"));
  ASSERT_TRUE(fam.has_value());
  ASSERT_EQ(fam->size(), 1u);
  std::vector<std::string> t{"t1", "t2", "t3", "t4"};
  EXPECT_TRUE((*fam)[0].offset.empty());
  EXPECT_EQ(tuples((*fam)[0].generators, t), (std::vector<std::string>{"(0,1,1,1)", "(1,0,1,0)"}));
}

TEST(ParametricForm, InhomogeneousExampleFamilies) {
  ConstraintSystem sys = parse_constraints("variables: x1,x2,x3\nx1+2*x2-x3=1\n2*x1+3*x2-2*x3>=1\n");
  auto fam = parametric_form(characteristic_series(sys));
  ASSERT_TRUE(fam.has_value());
  std::vector<std::string> offsets;
  for (const auto& f : *fam) {
    offsets.push_back(render_tuple(f.offset, sys.variables));
    EXPECT_EQ(tuples(f.generators, sys.variables), std::vector<std::string>{"(1,0,1)"});
  }
  std::sort(offsets.begin(), offsets.end());
  // Two families with step (1,0,1); the second starts at (0,1,1), which is
  // itself a solution, so its printed start (1,1,2) is one step in.
  EXPECT_EQ(offsets, (std::vector<std::string>{"(0,1,1)", "(1,0,0)"}));
}

TEST(ParametricForm, RefusesNonUnitNumerators) {
  EXPECT_FALSE(parametric_form(nr("2/(1-t)")).has_value());
  EXPECT_FALSE(parametric_form(nr("(1-t*u)/((1-t)*(1-u))")).has_value());
}

TEST(ParametricForm, FamilyPointsSatisfyTheSystem) {
  std::mt19937_64 rng(52);
  for (int i = 0; i < 30; ++i) {
    ConstraintSystem sys = ldsolve::testing::random_system(rng);
    auto fam = parametric_form(characteristic_series(sys));
    if (!fam) continue;
    for (const auto& f : *fam) {
      // Every combination with sum of multipliers <= 3.
      std::vector<ExponentVector> layer{f.offset};
      for (int depth = 0; depth <= 3; ++depth) {
        std::vector<ExponentVector> next;
        for (const auto& p : layer) {
          ASSERT_TRUE(satisfies(sys, p)) << render(sys) << render_tuple(p, sys.variables);
          for (const auto& g : f.generators) next.push_back(p + g);
        }
        layer = std::move(next);
      }
    }
  }
}

TEST(HilbertBasis, Examples) {
  ConstraintSystem sys = parse_constraints(kHomogeneous);
  EXPECT_EQ(tuples(hilbert_basis(sys).minimal, sys.variables),
            (std::vector<std::string>{"(0,1,1,1)", "(1,0,1,0)"}));
  ConstraintSystem ineq = parse_constraints("variables: a,b\na-b>=0\n");
  EXPECT_EQ(tuples(hilbert_basis(ineq).minimal, ineq.variables), (std::vector<std::string>{"(1,0)", "(1,1)"}));
  ConstraintSystem free{{"x"}, {}};
  EXPECT_EQ(tuples(hilbert_basis(free).minimal, free.variables), std::vector<std::string>{"(1)"});
}

TEST(HilbertBasis, RejectsInhomogeneousRows) {
  try {
    hilbert_basis(parse_constraints("variables: x\nx=1\n"));
    FAIL() << "expected HypothesisViolated";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::HypothesisViolated);
  }
}

TEST(HilbertBasis, AntichainCompleteAndAgreesWithSeriesRoute) {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 20; ++i) {
    ConstraintSystem sys = ldsolve::testing::random_system(rng);
    for (auto& c : sys.constraints) {
      c.constant = 0;
      if (c.rel == Relation::StrictlyGreater) c.rel = Relation::GreaterEqual;
    }
    SolutionBasis basis = hilbert_basis(sys);
    EXPECT_TRUE(check_basis(basis, sys, BasisCheckOptions{6, 20}).ok()) << render(sys);

    // Inequality rows get one slack each; minimality lives in those coordinates,
    // where a difference of solutions is again a solution.
    ConstraintSystem lifted = sys;
    std::vector<std::string> slacks;
    for (std::size_t r = 0; r < lifted.constraints.size(); ++r) {
      Constraint& c = lifted.constraints[r];
      if (c.rel != Relation::GreaterEqual) continue;
      std::string s = "s" + std::to_string(r);
      lifted.variables.push_back(s);
      slacks.push_back(s);
      c.coeffs[s] = -1;
      c.rel = Relation::Equal;
    }
    auto lift = [&](const ExponentVector& p) {
      ExponentVector q = p;
      for (std::size_t r = 0; r < sys.constraints.size(); ++r)
        if (sys.constraints[r].rel == Relation::GreaterEqual) {
          long value = 0;
          for (const auto& [v, a] : sys.constraints[r].coeffs) value += a * p.get(v);
          q.set("s" + std::to_string(r), value);
        }
      return q;
    };
    for (const auto& a : basis.minimal)
      for (const auto& b : basis.minimal)
        if (!(a == b)) EXPECT_FALSE(dickson_leq(lift(a), lift(b))) << render(sys);

    // Series route: minimal nonzero points of the truncated support of the
    // slack system, with the slacks dropped.
    const long D = 12;
    LaurentPolynomial e =
        expand_truncated(characteristic_series(lifted), VarSet(lifted.variables.begin(), lifted.variables.end()), D);
    std::vector<ExponentVector> support;
    for (const auto& [m, c] : e.terms())
      if (!m.empty()) support.push_back(m);
    std::vector<ExponentVector> projected;
    for (auto m : minimal_elements(support)) {
      for (const auto& s : slacks) m.set(s, 0);
      projected.push_back(m);
    }
    std::vector<ExponentVector> in_ball;
    for (const auto& m : basis.minimal)
      if (lift(m).total_degree() <= D) in_ball.push_back(m);
    EXPECT_EQ(tuples(projected, sys.variables), tuples(in_ball, sys.variables)) << render(sys);
  }
}
