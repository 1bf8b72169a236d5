#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>
#include <tuple>

#include "zerok/obstruction.hpp"
#include "oracles.hpp"

using namespace zerok;
using test::brute_force;
using test::MatchKey;
using test::oracle_rows;

namespace {

const std::vector<std::string> Q2 = {"q1", "q2"};

std::set<MatchKey> solved(int k, const Rational& lambda) {
  std::set<MatchKey> s;
  for (const auto& m : mr_table_membership(k, GaussianRational(lambda)))
    s.insert({m.row, m.family, m.p ? m.p->get_si() : 0});
  return s;
}

SpectralData spectral_of(std::vector<std::pair<GaussianRational, int>> blocks) {
  SpectralData sd;
  std::map<GaussianRational, int> mult;
  for (const auto& [l, s] : blocks) {
    sd.blocks.push_back({Eigenvalue::of(l), s});
    mult[l] += s;
  }
  for (const auto& [l, m] : mult) sd.eigenvalues.push_back({Eigenvalue::of(l), m});
  sd.semisimple = std::all_of(blocks.begin(), blocks.end(), [](const auto& b) { return b.second == 1; });
  sd.all_integer = std::all_of(mult.begin(), mult.end(), [](const auto& e) { return e.first.is_integer(); });
  return sd;
}

bool has_reason(const Verdict& v, ReasonKind kind) {
  return std::any_of(v.reasons.begin(), v.reasons.end(), [&](const Reason& r) { return r.kind == kind; });
}

}  // namespace

TEST(MrTable, SpotValues) {
  EXPECT_TRUE(solved(2, 4).count({2, 1, 2}));
  EXPECT_TRUE(solved(2, 4).count({1, 1, 0}));
  EXPECT_TRUE(solved(2, make_rational(7, 3)).count({1, 1, 0}));
  EXPECT_TRUE(solved(3, make_rational(1, 2)).empty());
  auto m = solved(-3, make_rational(-13, 8));
  EXPECT_TRUE(m.count({7, 1, 1}));
  EXPECT_TRUE(mr_table_membership(2, GaussianRational{1, 1}).size() == 1);
  EXPECT_TRUE(mr_table_membership(3, GaussianRational{1, 1}).empty());
}

TEST(MrTable, AgreesWithBruteForceScan) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> kd(-5, 4), num(-60, 60), den(1, 8), pd(-12, 12), coin(0, 1);
  int with_match = 0;
  for (int t = 0; t < 200; ++t) {
    int k = kd(rng);
    if (k >= 0) ++k;
    Rational lambda;
    if (coin(rng)) {
      auto rows = oracle_rows(k, pd(rng));
      lambda = rows[std::uniform_int_distribution<std::size_t>(0, rows.size() - 1)(rng)].second;
    } else {
      lambda = make_rational(num(rng), den(rng));
    }
    auto expected = brute_force(k, lambda);
    EXPECT_EQ(solved(k, lambda), expected) << "k=" << k << " lambda=" << lambda;
    if (!expected.empty()) ++with_match;
  }
  EXPECT_GT(with_match, 80);
}

TEST(MrTable, MatchesRevalidate) {
  for (int k = -5; k <= 5; ++k) {
    if (k == 0) continue;
    for (long p = -6; p <= 6; ++p)
      for (const auto& [rf, value] : oracle_rows(k, p))
        for (const auto& m : mr_table_membership(k, GaussianRational(value))) EXPECT_TRUE(revalidate(k, m));
  }
  EXPECT_FALSE(revalidate(3, TableRowMatch{2, 1, Integer(2), GaussianRational(6)}));
}

TEST(DegreeZeroCheck, SemisimpleIntegerHolds) {
  Verdict v = degree_zero_check(spectral_of({{-1, 1}, {-1, 1}}));
  EXPECT_EQ(v.status, Status::NecessaryConditionsHold);
  EXPECT_TRUE(v.reasons.empty());
}

TEST(DegreeZeroCheck, JordanBlockIsCertified) {
  Verdict v = degree_zero_check(spectral_of({{-1, 2}}));
  EXPECT_EQ(v.status, Status::NonIntegrable);
  ASSERT_EQ(v.reasons.size(), 1u);
  EXPECT_EQ(v.reasons[0].kind, ReasonKind::JordanBlock);
  EXPECT_EQ(v.reasons[0].block_size, 2);
}

TEST(DegreeZeroCheck, NonIntegerEigenvalue) {
  Verdict v = degree_zero_check(spectral_of({{make_rational(1, 2), 1}, {-1, 1}}));
  EXPECT_EQ(v.status, Status::NonIntegrable);
  ASSERT_TRUE(has_reason(v, ReasonKind::NonIntegerEigenvalue));
  EXPECT_EQ(v.reasons[0].eigenvalue.value, make_rational(1, 2));
}

TEST(DegreeZeroCheck, IndeterminatePropagates) {
  SpectralData sd = spectral_of({{-1, 1}});
  sd.indeterminate = true;
  EXPECT_EQ(degree_zero_check(sd).status, Status::Indeterminate);
}

TEST(JordanObstruction, BlockOfSizeThree) {
  EXPECT_EQ(jordan_obstruction(3, spectral_of({{1, 3}})).status, Status::NonIntegrable);
}

TEST(JordanObstruction, SizeTwoNeedsHighRow) {
  // k = 3, lambda = 1: row 2 at p = 1 (1 + 0), row 3 needs 1/3 + 3p(p+1)/2 = 1: no;
  // row 4 family 1: -1/24 + (1+3p)^2/6 = 1 needs (1+3p)^2 = 25/4: no.
  auto matches = mr_table_membership(3, GaussianRational(1));
  ASSERT_FALSE(matches.empty());
  for (const auto& m : matches) EXPECT_LE(m.row, 2);
  Verdict v = jordan_obstruction(3, spectral_of({{1, 2}}));
  EXPECT_EQ(v.status, Status::NonIntegrable);
  EXPECT_TRUE(has_reason(v, ReasonKind::JordanRowRule));
  // lambda = 1/8 is row 4 family 1 at p = 0 for k = 3
  GaussianRational high(make_rational(1, 8));
  EXPECT_EQ(jordan_obstruction(3, spectral_of({{high, 2}})).status, Status::NecessaryConditionsHold);
}

TEST(JordanObstruction, SemisimpleInTablePasses) {
  EXPECT_EQ(point_verdict(3, spectral_of({{1, 1}, {0, 1}})).status, Status::NecessaryConditionsHold);
  EXPECT_THROW(jordan_obstruction(2, spectral_of({{1, 1}})), std::invalid_argument);
}

TEST(Analyze, WorkedExampleHolds) {
  Analysis a = analyze(parse_potential("q2*(9*q1^2+q2^2)/q1^3", Q2));
  EXPECT_EQ(a.path, "exact");
  ASSERT_EQ(a.points.size(), 2u);
  for (const auto& p : a.points) EXPECT_EQ(p.verdict.status, Status::NecessaryConditionsHold);
  EXPECT_EQ(a.status, Status::NecessaryConditionsHold);
}

TEST(Analyze, FamilyOneTwoHasJordanBlocks) {
  Analysis a = analyze(parse_potential("q2*(q2-q1)*(q2-2*q1)/q1^3", Q2));
  ASSERT_EQ(a.points.size(), 2u);
  for (const auto& p : a.points) {
    EXPECT_EQ(p.verdict.status, Status::NonIntegrable);
    ASSERT_EQ(p.verdict.reasons.size(), 1u);
    EXPECT_EQ(p.verdict.reasons[0].kind, ReasonKind::JordanBlock);
    EXPECT_EQ(p.verdict.reasons[0].eigenvalue.value, GaussianRational(-1));
    EXPECT_EQ(p.verdict.reasons[0].block_size, 2);
  }
  EXPECT_EQ(a.status, Status::NonIntegrable);
}

TEST(Analyze, HarmonicOscillatorHolds) {
  AnalyzeOptions opt;
  opt.include_table = true;
  Analysis a = analyze(parse_potential("1/2*(q1^2+q2^2+q3^2)", {"q1", "q2", "q3"}), opt);
  EXPECT_TRUE(a.continuum);
  ASSERT_EQ(a.points.size(), 1u);
  EXPECT_TRUE(a.points[0].representative);
  EXPECT_EQ(a.status, Status::NecessaryConditionsHold);
  ASSERT_EQ(a.points[0].table_matches.size(), 1u);
  EXPECT_EQ(a.points[0].table_matches[0][0].row, 1);
}

TEST(Analyze, NumericPathAgreesWithExact) {
  for (const char* s : {"q2*(9*q1^2+q2^2)/q1^3", "q2*(q2-q1)*(q2-2*q1)/q1^3", "q2^2/q1^2 + q2/q1"}) {
    Potential v = parse_potential(s, Q2);
    AnalyzeOptions opt;
    opt.numeric = true;
    Analysis exact = analyze(v), num = analyze(v, opt);
    EXPECT_EQ(num.path, "numeric");
    EXPECT_EQ(exact.status, num.status) << s;
  }
}

TEST(Analyze, NoDarbouxPointIsNotApplicable) {
  // v(z) = 1/(1 + z^2) has a pole at z = +-i
  Analysis a = analyze(parse_potential("q1^2/(q1^2+q2^2)", Q2));
  EXPECT_TRUE(a.points.empty());
  EXPECT_EQ(a.status, Status::NotApplicable);
  EXPECT_FALSE(a.note.empty());
}

TEST(Analyze, NegativeDegreeUsesTable) {
  Analysis a = analyze(parse_potential("1/q1^3 + 1/q2^3", Q2));
  EXPECT_EQ(a.degree, -3);
  EXPECT_EQ(a.path, "numeric");
  ASSERT_FALSE(a.points.empty());
  EXPECT_NE(a.status, Status::NotApplicable);
}

TEST(Verdict, MonotoneUnderAddedPoints) {
  const Status all[] = {Status::NotApplicable, Status::NecessaryConditionsHold, Status::Indeterminate,
                        Status::NonIntegrable};
  for (Status a : all) {
    EXPECT_EQ(combine(a, Status::NonIntegrable), Status::NonIntegrable);
    EXPECT_NE(combine(a, Status::NecessaryConditionsHold), Status::NotApplicable);
    if (a == Status::NonIntegrable)
      for (Status b : all) EXPECT_EQ(combine(a, b), Status::NonIntegrable);
  }
}

TEST(DegreeZeroCheck, ReducesToProjectiveCriterion) {
  std::mt19937_64 rng(31);
  RatFunc ratio = RatFunc::variable(2, 1) / RatFunc::variable(2, 0);
  RatFunc z = RatFunc::variable(1, 0), one = RatFunc::constant(1, 1);
  int checked = 0;
  for (int t = 0; checked < 50 && t < 500; ++t) {
    RatFunc vz = test::random_ratfunc(rng, 1, 3);
    if (t % 2 == 0) vz = test::nonzero_coeff(rng) * (GaussianRational(9) * z + z.pow(3)) + (one + z * z).pow(3) * vz;
    if (vz.is_constant()) continue;
    Potential v;
    try {
      v = make_potential(vz.compose({ratio}), Q2);
    } catch (const std::exception&) {
      continue;
    }
    Analysis a = analyze(v);
    if (a.points.empty()) continue;
    ++checked;
    RatFunc d1 = vz.derivative(0), d2 = d1.derivative(0);
    for (const auto& p : a.points) {
      const GaussianRational& zs = p.projective->z_star;
      bool criterion = (d1.evaluate({zs}) + zs * d2.evaluate({zs})).is_zero();
      EXPECT_EQ(p.verdict.status == Status::NecessaryConditionsHold, criterion);
    }
  }
  EXPECT_EQ(checked, 50);
}
