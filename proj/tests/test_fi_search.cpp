#include <gtest/gtest.h>

#include <random>

#include "zerok/fi_search.hpp"
#include "oracles.hpp"

using namespace zerok;
using test::in_span;

namespace {

const std::vector<std::string> Q2 = {"q1", "q2"};
const std::string WORKED = "q2*(9*q1^2+q2^2)/q1^3";

RatFunc ps(const std::string& text) { return parse_expression(text, {"q1", "q2", "p1", "p2"}); }

// Random phase-space function: polynomial in p, Laurent in q1.
RatFunc random_phase_function(std::mt19937_64& rng) {
  MultiPoly num = test::random_poly(rng, 4, 3);
  std::uniform_int_distribution<int> d(0, 2);
  Exponents den(4, 0);
  den[0] = d(rng);
  return {num, MultiPoly::monomial(den, 1)};
}

}  // namespace

TEST(PoissonBracket, CanonicalPair) {
  EXPECT_EQ(poisson_bracket(ps("q1"), ps("p1"), 2), RatFunc::constant(4, 1));
  EXPECT_EQ(poisson_bracket(ps("q1"), ps("p2"), 2), RatFunc(4));
  Potential v = parse_potential(WORKED, Q2);
  RatFunc h = hamiltonian(v);
  EXPECT_TRUE(poisson_bracket(h, h, 2).is_zero());
}

TEST(PoissonBracket, HandComputedForceTerm) {
  // {H, p1} = dV/dq1 = -q2/q1^2 for V = q2/q1; the force p1' = {p1, H} has the other sign
  RatFunc h = hamiltonian(parse_potential("q2/q1", Q2));
  EXPECT_EQ(poisson_bracket(h, ps("p1"), 2), ps("-q2/q1^2"));
  EXPECT_EQ(poisson_bracket(ps("p1"), h, 2), ps("q2/q1^2"));
}

TEST(PoissonBracket, AntisymmetryAndLeibniz) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 10; ++t) {
    RatFunc f = random_phase_function(rng), g = random_phase_function(rng), k = random_phase_function(rng);
    EXPECT_EQ(poisson_bracket(f, g, 2), -poisson_bracket(g, f, 2));
    EXPECT_EQ(poisson_bracket(f, g * k, 2), poisson_bracket(f, g, 2) * k + g * poisson_bracket(f, k, 2));
  }
}

TEST(PoissonBracket, JacobiIdentity) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 10; ++t) {
    RatFunc f = random_phase_function(rng), g = random_phase_function(rng), k = random_phase_function(rng);
    RatFunc s = poisson_bracket(f, poisson_bracket(g, k, 2), 2) + poisson_bracket(g, poisson_bracket(k, f, 2), 2) +
                poisson_bracket(k, poisson_bracket(f, g, 2), 2);
    EXPECT_TRUE(s.is_zero());
  }
}

TEST(Ansatz, DimensionAndCap) {
  MomentumAnsatz m{4, 11, 11};
  EXPECT_EQ(m.dimension(2), 23u * 12u * 15u);
  Potential v = parse_potential(WORKED, Q2);
  EXPECT_EQ(default_ansatz(v, 2).a, 8);
  MomentumAnsatz big{6, 40, 40};
  try {
    fi_search(v, big);
    FAIL() << "cap not enforced";
  } catch (const AnsatzTooLarge& e) {
    EXPECT_EQ(e.dimension, big.dimension(2));
    EXPECT_NE(std::string(e.what()).find(std::to_string(big.dimension(2))), std::string::npos);
  }
}

TEST(FISearch, WorkedExampleQuadratic) {
  Potential v = parse_potential(WORKED, Q2);
  FIBasis r = fi_search(v, {2, 6, 6});
  RatFunc h = hamiltonian(v);
  EXPECT_TRUE(in_span(h, r.basis));
  EXPECT_TRUE(r.independent_of_H.empty());
  EXPECT_EQ(r.h_powers, (std::vector<int>{0, 1}));
  for (const auto& f : r.basis) EXPECT_TRUE(poisson_bracket(h, f, 2).is_zero());
}

TEST(FISearch, WorkedExampleQuartic) {
  Potential v = parse_potential(WORKED, Q2);
  FIBasis r = fi_search(v, {4, 8, 8});
  EXPECT_TRUE(r.independent_of_H.empty());
  EXPECT_EQ(r.basis.size(), 3u);  // 1, H, H^2
  RatFunc h = hamiltonian(v);
  for (const auto& f : r.basis) EXPECT_TRUE(poisson_bracket(h, f, 2).is_zero());
}

TEST(FISearch, SeparableOscillator) {
  Potential v = parse_potential("(q1^2+q2^2)/2", Q2);
  FIBasis r = fi_search(v, default_ansatz(v, 2));
  RatFunc h = hamiltonian(v);
  std::vector<RatFunc> span = r.independent_of_H;
  span.push_back(RatFunc::constant(4, 1));
  span.push_back(h);
  EXPECT_TRUE(in_span(ps("p2^2/2+q2^2/2"), span));
  EXPECT_TRUE(in_span(ps("q1*p2-q2*p1"), span));
  EXPECT_FALSE(r.independent_of_H.empty());
  for (const auto& f : r.basis) EXPECT_TRUE(poisson_bracket(h, f, 2).is_zero());
  for (const auto& f : r.independent_of_H) EXPECT_FALSE(in_span(f, {RatFunc::constant(4, 1), h}));
}

TEST(FISearch, LargerBoxNeverShrinks) {
  for (const char* text : {WORKED.c_str(), "(q1^2+q2^2)/2", "q2*(q2-q1)*(q2-2*q1)/q1^3"}) {
    Potential v = parse_potential(text, Q2);
    std::size_t last = 0;
    for (int b = 0; b <= 4; ++b) {
      FIBasis r = fi_search(v, {2, b, b});
      EXPECT_GE(r.basis.size(), last) << text << " " << b;
      last = r.basis.size();
    }
  }
}

TEST(FISearch, BasisSolvesBracketEquation) {
  Potential v = parse_potential("q2*(q2-q1)*(q2-2*q1)/q1^3", Q2);
  FIBasis r = fi_search(v, {3, 5, 5});
  RatFunc h = hamiltonian(v);
  EXPECT_FALSE(r.basis.empty());
  for (const auto& f : r.basis) EXPECT_TRUE(poisson_bracket(h, f, 2).is_zero());
  std::size_t cols = 0;
  for (const auto& b : r.blocks) cols += b.columns;
  EXPECT_EQ(cols, r.dimension);
}

TEST(Independence, Examples) {
  Potential v = parse_potential("(q1^2+q2^2)/2", Q2);
  RatFunc h = hamiltonian(v);
  EXPECT_FALSE(independence_check(h, h * h).independent);
  EXPECT_FALSE(independence_check(h, GaussianRational(3) * h + RatFunc::constant(4, 1)).independent);
  EXPECT_TRUE(independence_check(h, ps("p2^2/2+q2^2/2")).independent);
  auto rep = independence_check(h, h * h);
  EXPECT_EQ(rep.ranks.size() + rep.singular_points, 5u);
}

TEST(Independence, AllPointsSingular) {
  RatFunc h = hamiltonian(parse_potential("(q1^2+q2^2)/2", Q2));
  MultiPoly den = MultiPoly::constant(4, 1);
  for (long t = -7; t <= 7; ++t) den *= MultiPoly::variable(4, 0) - MultiPoly::constant(4, t);
  EXPECT_THROW(independence_check(h, RatFunc(MultiPoly::constant(4, 1), den)), std::domain_error);
}

TEST(FISearch, ConstantsAreNeverIndependent) {
  // non-monomial denominator: H is not a Laurent polynomial, yet 1 must still be filtered
  Potential v = parse_potential("1/(q1*q2*(q1+q2))", Q2);
  FIBasis r = fi_search(v, default_ansatz(v, 2));
  EXPECT_EQ(r.h_powers, (std::vector<int>{0}));
  for (const auto& f : r.independent_of_H) EXPECT_FALSE(f.is_constant());
  EXPECT_NE(r.scope.find("non-monomial"), std::string::npos);
}
