#include <gtest/gtest.h>

#include <random>

#include "zerok/darboux.hpp"
#include "zerok/spectral.hpp"
#include "oracles.hpp"

using namespace zerok;
using test::random_degree_zero;

namespace {

const std::vector<std::string> Q2 = {"q1", "q2"};
const GaussianRational I = GaussianRational::i();

Potential pot(const std::string& s, const std::vector<std::string>& vars = Q2) { return parse_potential(s, vars); }

QiMatrix mat2(GaussianRational a, GaussianRational b, GaussianRational c, GaussianRational d) {
  QiMatrix m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

// A random degree-0 potential V(q1, q2) = v(q2/q1) with v'(+-i) != 0 and no pole at +-i.
// Test-only oracle: V''(d) at d = x*(1, z*) equals V''(1, z*) / x*^2 by homogeneity of degree -2.
QiMatrix hessian_by_homogeneity(const Potential& v, const ProjectiveDarboux& pd) {
  QiMatrix h = hessian_exact_at(v, {GaussianRational(1), pd.z_star});
  return pd.x_star_sq.inverse() * h;
}

}  // namespace

TEST(Darboux2d, WorkedExample) {
  auto pts = darboux_2d(pot("q2*(9*q1^2+q2^2)/q1^3"));
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts[0].z_star, I);
  EXPECT_EQ(pts[0].v1, GaussianRational(6));
  EXPECT_EQ(pts[0].x_star_sq, (GaussianRational{0, -6}));
  EXPECT_EQ(pts[1].z_star, -I);
  EXPECT_EQ(pts[1].v1, GaussianRational(6));
  EXPECT_EQ(pts[1].x_star_sq, (GaussianRational{0, 6}));
}

TEST(Darboux2d, ConstantPotentialHasNone) { EXPECT_TRUE(darboux_2d(pot("7")).empty()); }

TEST(Darboux2d, FamilyAtOneTwo) {
  auto pts = darboux_2d(pot("q2*(q2-q1)*(q2-2*q1)/q1^3"));
  ASSERT_FALSE(pts.empty());
  EXPECT_EQ(pts[0].z_star, I);
  EXPECT_EQ(pts[0].v1, (GaussianRational{-1, -6}));
}

TEST(Darboux2d, RejectsWrongDegreeOrArity) {
  EXPECT_THROW(darboux_2d(pot("q1^2+q2^2")), std::invalid_argument);
  EXPECT_THROW(darboux_2d(pot("q2/q1 + q3/q1", {"q1", "q2", "q3"})), std::invalid_argument);
}

TEST(Darboux2d, DefiningIdentitiesHoldExactly) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    for (const auto& pd : darboux_2d(random_degree_zero(rng))) {
      EXPECT_EQ(pd.x_star_sq * pd.z_star, pd.v1 * pd.z_star * pd.z_star * GaussianRational(-1));
      EXPECT_EQ(pd.x_star_sq * pd.z_star, pd.v1);
    }
  }
}

TEST(Embed2d, WorkedExampleBranches) {
  Potential v = pot("q2*(9*q1^2+q2^2)/q1^3");
  ProjectiveDarboux pd = darboux_2d(v)[0];
  DarbouxPointNumeric d = embed_2d(pd, v);
  const double s = std::sqrt(3.0);  // sqrt(6)/sqrt(2)
  EXPECT_NEAR(d.coords[0].real(), s, 1e-12);
  EXPECT_NEAR(d.coords[0].imag(), -s, 1e-12);
  EXPECT_NEAR(std::abs(d.coords[1] - d.coords[0] * Complex(0, 1)), 0.0, 1e-12);
  EXPECT_LT(d.residual, 1e-12);
  pd.branch = -1;
  DarbouxPointNumeric e = embed_2d(pd, v);
  EXPECT_NEAR(std::abs(e.coords[0] + d.coords[0]), 0.0, 1e-15);
  EXPECT_LT(e.residual, 1e-12);
}

TEST(DarbouxNd, AgreesWithProjectiveProcedure) {
  Potential v = pot("q2*(9*q1^2+q2^2)/q1^3");
  auto found = darboux_nd(v);
  EXPECT_FALSE(found.continuum);
  std::vector<ComplexVec> expected;
  for (auto pd : darboux_2d(v))
    for (int b : {1, -1}) {
      pd.branch = b;
      expected.push_back(embed_2d(pd, v).coords);
    }
  ASSERT_EQ(found.points.size(), expected.size());
  for (const auto& e : expected) {
    bool matched = false;
    for (const auto& p : found.points) matched = matched || detail::distance(p.coords, e) < 1e-10;
    EXPECT_TRUE(matched);
  }
  for (const auto& p : found.points) EXPECT_LT(p.residual, 1e-10);
}

TEST(DarbouxNd, IdentityGradientIsAContinuum) {
  auto r = darboux_nd(pot("1/2*(q1^2+q2^2+q3^2)", {"q1", "q2", "q3"}));
  EXPECT_TRUE(r.continuum);
  EXPECT_TRUE(r.points.empty());
}

TEST(DarbouxNd, IndependentOfThreadCount) {
  Potential v = pot("q2*(q2-q1)*(q2-2*q1)/q1^3");
  setenv("ZERO_K_THREADS", "1", 1);
  auto a = darboux_nd(v);
  setenv("ZERO_K_THREADS", "4", 1);
  auto b = darboux_nd(v);
  unsetenv("ZERO_K_THREADS");
  ASSERT_EQ(a.points.size(), b.points.size());
  for (std::size_t k = 0; k < a.points.size(); ++k) EXPECT_EQ(a.points[k].coords, b.points[k].coords);
}

TEST(DarbouxNd, ThreeVariableRegressionAnchor) {
  // frozen from a multistart run with the default options
  Potential v = pot("q2*q3/q1^2 + q3/q1", {"q1", "q2", "q3"});
  auto r = darboux_nd(v);
  ASSERT_EQ(r.points.size(), 8u);
  const ComplexVec first{{-1.04103925441869, -0.324722013054401},
                         {0.0454763906621184, 0.769763246325587},
                         {-0.47594402247599, 0.783819942794956}};
  EXPECT_LT(detail::distance(r.points[0].coords, first), 1e-9);
  for (const auto& p : r.points) {
    EXPECT_LT(p.residual, 1e-9);
    EXPECT_GT(max_abs(p.coords), 1e-6);
  }
}

TEST(Darboux, UniversalityOnRandomPotentials) {
  std::mt19937_64 rng(2024);
  DarbouxSearchOptions opt;
  opt.seeds = 16;
  for (int t = 0; t < 50; ++t) {
    Potential v = random_degree_zero(rng);
    auto pts = darboux_2d(v);
    ASSERT_EQ(pts.size(), 2u);
    for (const auto& pd : pts) {
      EXPECT_TRUE(pd.z_star == I || pd.z_star == -I);
      HessianAtPoint h = hessian_at_2d(pd, restrict_projective(v));
      EXPECT_EQ(h.exact_entries.trace(), GaussianRational(-2));
      EXPECT_EQ(characteristic_polynomial(h.exact_entries), UniPoly({1, 2, 1}));
    }
    if (t < 10) {
      // independent route: every numerically found Darboux point has q2/q1 = +-i
      for (const auto& p : darboux_nd(v, opt).points) {
        Complex z = p.coords[1] / p.coords[0];
        EXPECT_LT(std::min(std::abs(z - Complex(0, 1)), std::abs(z + Complex(0, 1))), 1e-8);
      }
    }
  }
}

TEST(HessianAt2d, WorkedExampleIsMinusIdentity) {
  Potential v = pot("q2*(9*q1^2+q2^2)/q1^3");
  for (const auto& pd : darboux_2d(v)) {
    HessianAtPoint h = hessian_at_2d(pd, restrict_projective(v));
    EXPECT_EQ(h.exact_entries, GaussianRational(-1) * QiMatrix::identity(2));
  }
}

TEST(HessianAt2d, FamilyOneTwoIsNotDiagonal) {
  Potential v = pot("q2*(q2-q1)*(q2-2*q1)/q1^3");
  ProjectiveDarboux pd = darboux_2d(v)[0];
  HessianAtPoint h = hessian_at_2d(pd, restrict_projective(v));
  GaussianRational multiplier{-7, -12};
  EXPECT_EQ(h.exact_entries(0, 1), -multiplier * pd.x_star_sq.inverse());
  EXPECT_FALSE(h.exact_entries(0, 1).is_zero());
  EXPECT_EQ(h.exact_entries(0, 1), h.exact_entries(1, 0));
}

TEST(HessianAt2d, MatchesHomogeneityOracle) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    Potential v = random_degree_zero(rng);
    for (const auto& pd : darboux_2d(v))
      EXPECT_EQ(hessian_at_2d(pd, restrict_projective(v)).exact_entries, hessian_by_homogeneity(v, pd));
  }
}

TEST(EigenStructure, MinusIdentity) {
  SpectralData sd = eigen_structure_exact(GaussianRational(-1) * QiMatrix::identity(2));
  EXPECT_EQ(sd.char_poly, UniPoly({1, 2, 1}));
  ASSERT_EQ(sd.eigenvalues.size(), 1u);
  EXPECT_EQ(sd.eigenvalues[0].eigenvalue.value, GaussianRational(-1));
  EXPECT_EQ(sd.eigenvalues[0].multiplicity, 2);
  ASSERT_EQ(sd.blocks.size(), 2u);
  EXPECT_EQ(sd.blocks[0].size, 1);
  EXPECT_TRUE(sd.semisimple);
  EXPECT_TRUE(sd.all_integer);
}

TEST(EigenStructure, FamilyOneTwoHasJordanBlock) {
  Potential v = pot("q2*(q2-q1)*(q2-2*q1)/q1^3");
  for (const auto& pd : darboux_2d(v)) {
    SpectralData sd = eigen_structure(hessian_at_2d(pd, restrict_projective(v)));
    ASSERT_EQ(sd.blocks.size(), 1u);
    EXPECT_EQ(sd.blocks[0].size, 2);
    EXPECT_EQ(sd.blocks[0].eigenvalue.value, GaussianRational(-1));
    EXPECT_FALSE(sd.semisimple);
    EXPECT_TRUE(sd.all_integer);
  }
}

TEST(EigenStructure, NonIntegerWitness) {
  SpectralData sd = eigen_structure_exact(mat2(2, 0, 0, make_rational(1, 2)));
  EXPECT_FALSE(sd.all_integer);
  bool half = false;
  for (const auto& e : sd.eigenvalues) half = half || (e.eigenvalue.exact && e.eigenvalue.value == make_rational(1, 2));
  EXPECT_TRUE(half);
}

TEST(EigenStructure, GaussianIntegerIsNotAnInteger) {
  SpectralData sd = eigen_structure_exact(mat2(I, 0, 0, -I));
  EXPECT_FALSE(sd.all_integer);
  EXPECT_TRUE(sd.semisimple);
}

TEST(EigenStructure, IrrationalEigenvaluesWithJordanBlocks) {
  // [[C, I], [0, C]] with C the companion matrix of x^2 - 2
  QiMatrix m(4, 4);
  m(0, 1) = 2;
  m(1, 0) = 1;
  m(2, 3) = 2;
  m(3, 2) = 1;
  m(0, 2) = 1;
  m(1, 3) = 1;
  SpectralData sd = eigen_structure_exact(m);
  EXPECT_FALSE(sd.indeterminate);
  EXPECT_FALSE(sd.semisimple);
  EXPECT_FALSE(sd.all_integer);
  ASSERT_EQ(sd.blocks.size(), 2u);
  for (const auto& b : sd.blocks) {
    EXPECT_EQ(b.size, 2);
    EXPECT_NEAR(std::abs(b.eigenvalue.approx.real()), std::sqrt(2.0), 1e-10);
  }
  SpectralData num = eigen_structure_numeric(to_eigen(m));
  EXPECT_EQ(num.semisimple, sd.semisimple);
  EXPECT_EQ(num.all_integer, sd.all_integer);
}

TEST(EigenStructure, RankSequenceStabilizes) {
  QiMatrix m(3, 3);
  m(0, 0) = 2;
  m(1, 1) = 2;
  m(2, 2) = 5;
  m(1, 0) = 1;
  QiMatrix shifted = m - GaussianRational(2) * QiMatrix::identity(3), power = QiMatrix::identity(3);
  std::size_t prev = 3;
  for (int j = 1; j <= 4; ++j) {
    power = power * shifted;
    std::size_t r = rank(power);
    EXPECT_LE(r, prev);
    prev = r;
  }
  EXPECT_EQ(prev, 3u - 2u);
  SpectralData sd = eigen_structure_exact(m);
  EXPECT_FALSE(sd.semisimple);
  EXPECT_TRUE(sd.all_integer);
}

TEST(IsSemisimple, ExplicitJordanBlockWitness) {
  auto r = is_semisimple(HessianAtPoint{true, mat2(-1, 0, 1, -1), {}});
  EXPECT_FALSE(r.semisimple);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->size, 2);
  EXPECT_EQ(r.witness->eigenvalue.value, GaussianRational(-1));
  EXPECT_TRUE(is_semisimple(HessianAtPoint{true, GaussianRational(-1) * QiMatrix::identity(2), {}}).semisimple);
}

TEST(IsSemisimple, EquivalentToProjectiveCriterion) {
  std::mt19937_64 rng(99);
  RatFunc ratio = RatFunc::variable(2, 1) / RatFunc::variable(2, 0);
  RatFunc z = RatFunc::variable(1, 0), one = RatFunc::constant(1, 1);
  for (int t = 0; t < 50; ++t) {
    RatFunc vz = test::random_ratfunc(rng, 1, 3);
    if (t % 2 == 0) {
      // terms vanishing to order 3 at +-i leave v' and v'' there unchanged
      GaussianRational c = test::nonzero_coeff(rng);
      vz = c * (GaussianRational(9) * z + z.pow(3)) + (one + z * z).pow(3) * vz;
    }
    if (vz.is_constant()) continue;
    Potential v;
    try {
      v = make_potential(vz.compose({ratio}), Q2);
    } catch (const std::exception&) {
      continue;
    }
    RatFunc d1 = vz.derivative(0), d2 = d1.derivative(0);
    for (const auto& pd : darboux_2d(v)) {
      GaussianRational crit = d1.evaluate({pd.z_star}) + pd.z_star * d2.evaluate({pd.z_star});
      EXPECT_EQ(is_semisimple(hessian_at_2d(pd, vz)).semisimple, crit.is_zero());
    }
  }
}

TEST(NumericPath, AgreesWithExactOnWorkedExamples) {
  for (const char* s : {"q2*(9*q1^2+q2^2)/q1^3", "q2*(q2-q1)*(q2-2*q1)/q1^3", "q2*(q2-3*q1)*(q2+2*q1)/q1^3"}) {
    Potential v = pot(s);
    for (const auto& pd : darboux_2d(v)) {
      SpectralData exact = eigen_structure(hessian_at_2d(pd, restrict_projective(v)));
      DarbouxPointNumeric d = embed_2d(pd, v);
      HessianAtPoint hn = hessian_numeric(v, d.coords);
      SpectralData num = eigen_structure(hn);
      EXPECT_FALSE(num.indeterminate) << s;
      EXPECT_EQ(num.semisimple, exact.semisimple) << s;
      EXPECT_EQ(num.all_integer, exact.all_integer) << s;
      // d is an eigenvector with eigenvalue -1
      Eigen::VectorXcd dv(2);
      dv << d.coords[0], d.coords[1];
      EXPECT_LT((hn.numeric_entries * dv + dv).norm(), 1e-8 * dv.norm());
    }
  }
}

TEST(NumericPath, ClusteredButDistinctEigenvaluesAreIndeterminate) {
  Eigen::MatrixXcd m(2, 2);
  m << 1.0, 0.0, 0.0, 1.0 + 1e-6;
  SpectralData sd = eigen_structure_numeric(m);
  EXPECT_TRUE(sd.indeterminate);
}
