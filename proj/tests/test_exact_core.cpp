#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "zerok/hermite.hpp"
#include "zerok/potential.hpp"
#include "zerok/roots.hpp"
#include "test_support.hpp"

using namespace zerok;

namespace {

const std::vector<std::string> Q = {"q1", "q2"};

RatFunc rf(const std::string& s) { return parse_expression(s, Q); }

// Test-only oracle: trapezoid rule for the Gaussian weight, normalized by sqrt(2 pi).
double gaussian_quadrature_oracle(const UniPoly& f) {
  const double h = 1e-3, L = 40.0;
  double sum = 0;
  for (double p = -L; p <= L; p += h) sum += std::exp(-p * p / 2) * f(std::complex<double>(p, 0)).real();
  return sum * h / std::sqrt(2 * M_PI);
}

}  // namespace

TEST(GaussianRational, FieldOperationsAreExact) {
  GaussianRational a{make_rational(1, 3), make_rational(-2, 5)};
  GaussianRational b{make_rational(7, 2), make_rational(1, 1)};
  EXPECT_EQ((a * b) / b, a);
  EXPECT_EQ(a * a.inverse(), GaussianRational(1));
  EXPECT_EQ(GaussianRational::i() * GaussianRational::i(), GaussianRational(-1));
  EXPECT_THROW(a / GaussianRational(0), std::domain_error);
}

TEST(GaussianRational, StringRoundTrip) {
  for (const char* s : {"3", "-1/2", "i", "-i", "2/3*i", "1 - 6*i", "-7/4 + 3*i"}) {
    GaussianRational g = parse_gaussian(s);
    EXPECT_EQ(parse_gaussian(g.str()), g) << s;
  }
  EXPECT_EQ(parse_gaussian("1-6*i"), (GaussianRational{Rational(1), Rational(-6)}));
}

TEST(RatFunc, InversePairMultipliesToOne) { EXPECT_EQ(rf("(1/q1)*q1"), RatFunc::constant(2, 1)); }

TEST(RatFunc, SumOfEqualFractions) { EXPECT_EQ(rf("q2/q1 + q2/q1"), rf("2*q2/q1")); }

TEST(RatFunc, ProductAndExpandedFormsAgree) {
  EXPECT_EQ(rf("(q2^3 - 3*q1*q2^2 + 2*q1^2*q2)/q1^3"), rf("q2*(q2-q1)*(q2-2*q1)/q1^3"));
}

TEST(RatFunc, CancelsCommonPolynomialFactors) {
  RatFunc f = rf("(q1^2 - q2^2)/(q1 + q2)");
  EXPECT_TRUE(f.is_polynomial());
  EXPECT_EQ(f, rf("q1 - q2"));
  RatFunc g = rf("(q1^2 + 2*q1*q2 + q2^2)*(q1 - 3*q2)/((q1 + q2)*(q1^2 + q2^2))");
  EXPECT_EQ(g, rf("(q1 + q2)*(q1 - 3*q2)/(q1^2 + q2^2)"));
}

TEST(RatFunc, DenominatorIsMonic) {
  RatFunc f = rf("1/(2*q1 + 4*q2)");
  EXPECT_TRUE(f.den().leading_coefficient().is_one());
  EXPECT_EQ(f.num(), MultiPoly::constant(2, make_rational(1, 2)));
}

TEST(RatFunc, DivisionByZeroThrows) {
  EXPECT_THROW(rf("q1") / RatFunc(2), std::domain_error);
  EXPECT_THROW(rf("q1/(q2-q2)"), ParseError);
}

TEST(RatFunc, PartialDerivatives) {
  EXPECT_EQ(rf("q2^2/q1^2").derivative(1), rf("2*q2/q1^2"));
  EXPECT_EQ(rf("q2*(9*q1^2+q2^2)/q1^3").derivative(0), rf("(-9*q1^2*q2 - 3*q2^3)/q1^4"));
  EXPECT_TRUE(rf("7/3").derivative(0).is_zero());
}

TEST(RatFunc, HomogeneousDegree) {
  EXPECT_EQ(homogeneous_degree(rf("q2*(9*q1^2+q2^2)/q1^3")), 0);
  EXPECT_EQ(homogeneous_degree(rf("q1^2 + q2^2")), 2);
  EXPECT_EQ(homogeneous_degree(rf("q1 + q2^2")), std::nullopt);
  EXPECT_EQ(homogeneous_degree(rf("1/(q1^2+q2^2)^2")), -4);
}

TEST(RatFunc, RingAxiomsOnRandomTriples) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    RatFunc a = test::random_ratfunc(rng, 2, 2), b = test::random_ratfunc(rng, 2, 2), c = test::random_ratfunc(rng, 2, 2);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a - a, RatFunc(2));
    if (!b.is_zero()) EXPECT_EQ((a / b) * b, a);
  }
}

TEST(RatFunc, EulerIdentityForHomogeneousInputs) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    RatFunc f = test::random_homogeneous_ratfunc(rng, 3, 1 + trial % 3, trial % 4);
    auto k = homogeneous_degree(f);
    ASSERT_TRUE(k.has_value());
    EXPECT_EQ(*k, (1 + trial % 3) - (trial % 4));
    EXPECT_EQ(euler_operator(f), GaussianRational(*k) * f);
  }
}

TEST(MultiPolyGcd, RecoversPlantedFactor) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 15; ++trial) {
    MultiPoly g = test::random_poly(rng, 3, 2);
    MultiPoly a = test::random_poly(rng, 3, 2), b = test::random_poly(rng, 3, 2);
    if (g.is_zero() || a.is_zero() || b.is_zero()) continue;
    MultiPoly d = gcd(g * a, g * b);
    EXPECT_TRUE(divides(g, d)) << g.str({"x", "y", "z"});
    EXPECT_TRUE(divides(d, g * a));
    EXPECT_TRUE(divides(d, g * b));
  }
}

TEST(Hermite, SeedsAndRecurrence) {
  EXPECT_EQ(hermite(0), UniPoly({1}));
  EXPECT_EQ(hermite(2), UniPoly({-1, 0, 1}));
  EXPECT_EQ(hermite(3), UniPoly({0, -3, 0, 1}));
  const UniPoly p = UniPoly::x();
  for (unsigned n = 0; n < 25; ++n) EXPECT_EQ(hermite(n + 1), p * hermite(n) - hermite(n).derivative());
}

TEST(Hermite, ExpansionExamples) {
  auto e = hermite_expand(UniPoly({0, 0, 1}));
  ASSERT_EQ(e.coeffs.size(), 3u);
  EXPECT_EQ(e.coeffs[2], GaussianRational(1));
  EXPECT_EQ(e.coeffs[1], GaussianRational(0));
  EXPECT_EQ(e.coeffs[0], GaussianRational(1));

  auto h5 = hermite_expand(hermite(5));
  for (std::size_t n = 0; n < h5.coeffs.size(); ++n) EXPECT_EQ(h5.coeffs[n], GaussianRational(n == 5 ? 1 : 0));

  auto p4 = hermite_expand(UniPoly::monomial(4, 1));
  std::vector<GaussianRational> expect = {3, 0, 6, 0, 1};
  EXPECT_EQ(p4.coeffs, expect);
}

TEST(Hermite, ExpansionMatchesOrthogonalProjection) {
  // independent route: gamma_n = <f, He_n> / n!
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    UniPoly f = test::random_unipoly(rng, 12);
    auto e = hermite_expand(f);
    for (unsigned n = 0; n < e.coeffs.size(); ++n) {
      GaussianRational proj = gaussian_moment(f * hermite(n)) / GaussianRational(Rational(factorial(n)));
      EXPECT_EQ(e.coeffs[n], proj);
    }
  }
}

TEST(Hermite, ExpandReconstructIsIdentity) {
  std::mt19937_64 rng(9);
  for (int deg = 0; deg <= 20; ++deg) {
    UniPoly f = test::random_unipoly(rng, deg);
    EXPECT_EQ(hermite_expand(f).reconstruct(), f);
  }
}

TEST(GaussianMoment, AgreesWithQuadratureOracle) {
  EXPECT_EQ(gaussian_moment(UniPoly({1})), GaussianRational(1));
  UniPoly he2sq = hermite(2) * hermite(2);
  EXPECT_EQ(he2sq, UniPoly({1, 0, -2, 0, 1}));
  EXPECT_NEAR(gaussian_quadrature_oracle(he2sq), 2.0, 1e-9);
  EXPECT_EQ(gaussian_moment(he2sq), GaussianRational(2));
  EXPECT_NEAR(gaussian_quadrature_oracle(hermite(7)), 0.0, 1e-9);
  EXPECT_EQ(gaussian_moment(hermite(7)), GaussianRational(0));
  for (unsigned k = 0; k <= 8; ++k) {
    UniPoly m = UniPoly::monomial(k, 1);
    EXPECT_NEAR(gaussian_moment(m).re().get_d(), gaussian_quadrature_oracle(m), 1e-7 * (1 + std::pow(3.0, k)));
  }
}

TEST(GaussianMoment, HermiteOrthogonality) {
  for (unsigned n = 0; n <= 12; ++n)
    for (unsigned m = 0; m <= 12; ++m) {
      GaussianRational expect = n == m ? GaussianRational(Rational(factorial(n))) : GaussianRational(0);
      EXPECT_EQ(gaussian_moment(hermite(n) * hermite(m)), expect) << n << "," << m;
    }
}

TEST(IntegerRoots, Examples) {
  std::vector<IntegerRoot> r1 = integer_roots(UniPoly({1, 2, 1}));
  ASSERT_EQ(r1.size(), 1u);
  EXPECT_EQ(r1[0].value, -1);
  EXPECT_EQ(r1[0].multiplicity, 2);
  EXPECT_TRUE(integer_roots(UniPoly({-1, -1, 1})).empty());
  auto r3 = integer_roots(UniPoly({2, -1, -2, 1}));
  ASSERT_EQ(r3.size(), 3u);
  EXPECT_EQ(r3[0], (IntegerRoot{-1, 1}));
  EXPECT_EQ(r3[1], (IntegerRoot{1, 1}));
  EXPECT_EQ(r3[2], (IntegerRoot{2, 1}));
}

TEST(IntegerRoots, AgreeWithBruteForceScan) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> root(-9, 9), mult(1, 3), count(1, 4);
  for (int trial = 0; trial < 40; ++trial) {
    UniPoly f = UniPoly::constant(GaussianRational{Rational(1 + trial % 3), Rational(trial % 2)});
    int k = count(rng);
    for (int j = 0; j < k; ++j) f *= UniPoly({-root(rng), 1}).pow(static_cast<unsigned>(mult(rng)));
    if (trial % 4 == 0) f *= UniPoly({1, 0, 1});  // +-i are not integers
    if (trial % 5 == 0) f *= UniPoly({-1, 0, 2});  // +-1/sqrt(2)
    std::vector<IntegerRoot> expect;
    UniPoly rest = f;
    for (int z = -100; z <= 100; ++z) {
      int m = strip_root(rest, GaussianRational(z));
      if (m > 0) expect.push_back({z, m});
    }
    EXPECT_EQ(integer_roots(f), expect) << f.str();
  }
}

TEST(GaussianRationalRoots, FindsNonIntegerRoots) {
  UniPoly f = UniPoly::from_roots({GaussianRational(make_rational(1, 2)), GaussianRational::i(), GaussianRational::i()});
  f *= UniPoly({-2, 0, 1});
  auto roots = gaussian_rational_roots(f);
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_EQ(roots[0].value, GaussianRational::i());
  EXPECT_EQ(roots[0].multiplicity, 2);
  EXPECT_EQ(roots[1].value, GaussianRational(make_rational(1, 2)));
}

TEST(UniPoly, SquarefreeDecomposition) {
  UniPoly f = UniPoly({1, 1}).pow(3) * UniPoly({-2, 1}) * UniPoly({1, 0, 1}).pow(2);
  auto parts = squarefree_decomposition(f);
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0], UniPoly({-2, 1}));
  EXPECT_EQ(parts[1], UniPoly({1, 0, 1}));
  EXPECT_EQ(parts[2], UniPoly({1, 1}));
  EXPECT_FALSE(is_squarefree(f));
  EXPECT_TRUE(is_squarefree(squarefree_part(f)));
}
