#include <gtest/gtest.h>

#include "zerok/scan.hpp"

using namespace zerok;

namespace {

const std::vector<std::string> Q2 = {"q1", "q2"};
const std::string FAMILY = "q2*($a*q1-q2)*($b*q1-q2)/q1^3";

}  // namespace

TEST(Family, ParsesParameters) {
  Family f = parse_family(FAMILY, Q2, 0);
  EXPECT_EQ(f.params, (std::vector<std::string>{"a", "b"}));
  Potential v = instantiate(f, {GaussianRational(1), GaussianRational(2)});
  EXPECT_EQ(v.str(), parse_potential("q2*(q1-q2)*(2*q1-q2)/q1^3", Q2).str());
}

TEST(Family, RejectsInhomogeneousAndWrongDegree) {
  EXPECT_THROW(parse_family("q2*$a+q1^2", Q2, 0), FamilyError);
  EXPECT_THROW(parse_family(FAMILY, Q2, 1), FamilyError);
}

TEST(Scan, ConstraintSolveRecoversWorkedExample) {
  ConstraintResult r = constraint_solve(parse_family(FAMILY, Q2, 0));
  ASSERT_EQ(r.solutions.size(), 2u);
  const std::string worked = parse_potential("q2*(9*q1^2+q2^2)/q1^3", Q2).str();
  for (const auto& s : r.solutions) {
    EXPECT_EQ(s.potential, worked);
    EXPECT_EQ(s.status, Status::NecessaryConditionsHold);
    EXPECT_EQ(s.values[0] + s.values[1], GaussianRational(0));
    EXPECT_EQ(s.values[0] * s.values[1], GaussianRational(9));
  }
  EXPECT_EQ(r.invariants, (std::vector<std::string>{"a+b = 0", "ab = 9"}));
  EXPECT_FALSE(r.positive_dimensional);
}

TEST(Scan, SolutionsSatisfyEveryEquation) {
  Family f = parse_family("q2*($a*q1-q2)*($b*q1-q2)*($a*q1+q2)/q1^4", Q2, 0);
  ConstraintResult r = constraint_solve(f);
  ASSERT_FALSE(r.solutions.empty());
  for (const auto& s : r.solutions) {
    auto a = analyze(instantiate(f, s.values));
    EXPECT_EQ(a.status, s.status);
    for (const auto& p : a.points) EXPECT_TRUE(p.spectral.semisimple);
  }
}

TEST(Scan, IntegerGridIsNonIntegrable) {
  Family f = parse_family(FAMILY, Q2, 0);
  auto entries = scan_grid(f, {GaussianRational(1), GaussianRational(2), GaussianRational(3)});
  ASSERT_EQ(entries.size(), 9u);
  int rejected = 0;
  for (const auto& g : entries) {
    if (g.values[0] == g.values[1]) {
      EXPECT_TRUE(g.rejected);
      ++rejected;
    } else {
      EXPECT_FALSE(g.rejected);
      EXPECT_EQ(g.status, Status::NonIntegrable);
    }
  }
  EXPECT_EQ(rejected, 3);
}
