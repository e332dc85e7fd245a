#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "support.hpp"

using namespace elpbank;
using testing_support::random_poly;
using testing_support::random_rr;

namespace {

RadicalRational q(long n, long d = 1) { return RadicalRational::rational(n, d); }
RadicalRational root(std::uint64_t n) { return RadicalRational::sqrt(n); }

LaurentPoly z1(std::int64_t p = 1) { return LaurentPoly::variable(1, 0, p); }
LaurentPoly one1() { return LaurentPoly::constant(1, 1); }

}  // namespace

TEST(Squarefree, SplitsSquareFactors) {
  EXPECT_EQ(squarefree_split(12), (std::pair<std::uint64_t, std::uint64_t>{2, 3}));
  EXPECT_EQ(squarefree_split(18), (std::pair<std::uint64_t, std::uint64_t>{3, 2}));
  EXPECT_EQ(squarefree_split(1), (std::pair<std::uint64_t, std::uint64_t>{1, 1}));
  EXPECT_TRUE(is_squarefree(30));
  EXPECT_FALSE(is_squarefree(12));
  EXPECT_THROW(squarefree_split(0), Error);
}

TEST(RadicalRational, ProductOfRootsReducesRadicand) {
  EXPECT_EQ(root(2) * root(6), root(3) * q(2));
  EXPECT_EQ(root(2) * root(2), q(2));
  EXPECT_EQ(root(12), root(3) * q(2));
}

TEST(RadicalRational, HalfRootTwoSquared) {
  const auto h = root(2) * q(1, 2);
  EXPECT_EQ(h * h, q(1, 2));
}

TEST(RadicalRational, DifferenceOfSquares) {
  const auto a = (root(2) * q(-2) + root(6)) * q(1, 32);
  const auto b = (root(2) * q(2) + root(6)) * q(1, 32);
  EXPECT_EQ(a * b, q(-1, 512));
}

TEST(RadicalRational, ToDouble) {
  EXPECT_EQ(RadicalRational().to_double(), 0.0);
  EXPECT_NEAR((root(2) * q(1, 2)).to_double(), 0.7071067811865476, 1e-16);
  EXPECT_NEAR((q(1) + root(3)).to_double(), 2.7320508075688772, 1e-15);
}

TEST(RadicalRational, ZeroHasNoTerms) {
  const auto a = root(5) - root(5);
  EXPECT_TRUE(a.is_zero());
  EXPECT_TRUE(a.terms().empty());
  EXPECT_TRUE(q(3, 4).is_rational());
  EXPECT_FALSE(root(7).is_rational());
}

TEST(RadicalRational, Str) {
  EXPECT_EQ(q(3, 16).str(), "3/16");
  EXPECT_EQ(RadicalRational().str(), "0");
}

TEST(LaurentPoly, ProductWithConjugate) {
  const LaurentPoly p = one1() - z1();
  LaurentPoly expected = LaurentPoly::constant(1, 2);
  expected.add_term({1}, -1);
  expected.add_term({-1}, -1);
  EXPECT_EQ(p * p.conjugate(), expected);
}

TEST(LaurentPoly, ZeroTimesAnything) {
  std::mt19937 rng(7);
  EXPECT_TRUE((LaurentPoly(1) * random_poly(rng, 1)).is_zero());
}

TEST(LaurentPoly, SosGeneratorMatchesResidual) {
  const auto c = corpus::example3();
  const auto& p = c.sos_generators.at(0);
  EXPECT_EQ(p * p.conjugate(), svp_residual(c.lowpass, c.lowpass));
}

TEST(LaurentPoly, Conjugate) {
  LaurentPoly expected = one1();
  expected.add_term({-1}, -1);
  EXPECT_EQ((one1() - z1()).conjugate(), expected);
  const auto c = LaurentPoly::constant(1, root(2));
  EXPECT_EQ(c.conjugate(), c);
}

TEST(LaurentPoly, SubstituteDyadic) { EXPECT_EQ((one1() - z1()).substitute(IntMatrix{{2}}), one1() - z1(2)); }

TEST(LaurentPoly, SubstituteQuincunxReadsColumns) {
  const IntMatrix quincunx{{1, 1}, {1, -1}};
  EXPECT_EQ(LaurentPoly::variable(2, 0).substitute(quincunx), LaurentPoly::monomial({1, 1}));
  EXPECT_EQ(LaurentPoly::variable(2, 1).substitute(quincunx), LaurentPoly::monomial({1, -1}));
}

TEST(LaurentPoly, SubstituteScalarTwo) {
  EXPECT_EQ(LaurentPoly::monomial({1, 1}).substitute(IntMatrix::scalar(2, 2)), LaurentPoly::monomial({2, 2}));
}

TEST(LaurentPoly, SubstituteShapeMismatch) {
  EXPECT_THROW(LaurentPoly::variable(2, 0).substitute(IntMatrix{{2}}), Error);
}

TEST(LaurentPoly, EvalOne) {
  EXPECT_TRUE((one1() - z1()).eval_one().is_zero());
  EXPECT_TRUE(corpus::example3().certificate.k[0].eval_one().is_zero());
  const auto c = root(2) * q(1, 2);
  EXPECT_EQ(LaurentPoly::constant(1, c).eval_one(), c);
}

TEST(LaurentPoly, EvalUnitCircle) {
  const double pi = std::numbers::pi;
  const std::vector<double> w{pi};
  const auto one = one1().eval_unit_circle(w);
  EXPECT_NEAR(one.real(), 1.0, 1e-15);
  EXPECT_NEAR(one.imag(), 0.0, 1e-15);
  const auto v = (one1() - z1()).eval_unit_circle(w);
  EXPECT_NEAR(v.real(), 2.0, 1e-15);
  EXPECT_NEAR(v.imag(), 0.0, 1e-15);
}

TEST(LaurentPoly, ResidualExactVersusNumeric) {
  // Evaluate the Example 3 residual at pi/3 both ways: numerically via the library and by
  // summing its exact coefficients by hand.
  const auto c = corpus::example3();
  const LaurentPoly r = svp_residual(c.lowpass, c.lowpass);
  const double w = std::numbers::pi / 3;
  std::complex<double> oracle = 0.0;
  for (const auto& [e, coeff] : r.terms()) oracle += coeff.to_double() * std::polar(1.0, w * static_cast<double>(e[0]));
  const auto got = r.eval_unit_circle(std::vector<double>{w});
  EXPECT_NEAR(std::abs(got - oracle), 0.0, 1e-12);
}

TEST(LaurentPoly, DimensionMismatchThrows) {
  EXPECT_THROW(LaurentPoly::variable(1, 0) * LaurentPoly::variable(2, 0), Error);
  EXPECT_THROW(LaurentPoly::variable(1, 0) + LaurentPoly::variable(2, 0), Error);
  LaurentPoly p(2);
  EXPECT_THROW(p.add_term({1}, 1), Error);
}

TEST(LaurentPoly, OneMinusMonomial) {
  LaurentPoly expected = LaurentPoly::constant(2, 1);
  expected.add_term({1, -1}, -1);
  EXPECT_EQ(one_minus_monomial({1, -1}), expected);
}

// ---- properties -------------------------------------------------------------

TEST(AlgebraProperties, RadicalRationalRingLaws) {
  std::mt19937 rng(20240501);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_rr(rng), b = random_rr(rng), c = random_rr(rng);
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_TRUE((a - a).is_zero());
    ASSERT_EQ(RadicalRational::normalize(a.terms()), a);
    const double fa = a.to_double(), fb = b.to_double();
    ASSERT_LE(std::abs((a * b).to_double() - fa * fb), 1e-12 * (1 + std::abs(fa) * std::abs(fb)));
  }
}

TEST(AlgebraProperties, NormalizeMergesEquivalentRadicands) {
  std::mt19937 rng(99);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_rr(rng, 5);
    for (const auto& t : a.terms()) {
      ASSERT_TRUE(is_squarefree(t.radicand));
      ASSERT_NE(t.coeff, 0);
    }
  }
}

TEST(AlgebraProperties, LaurentPolyRingLaws) {
  std::mt19937 rng(31337);
  for (int i = 0; i < 200; ++i) {
    const std::size_t dim = 1 + i % 3;
    const auto p = random_poly(rng, dim), r = random_poly(rng, dim), s = random_poly(rng, dim);
    ASSERT_EQ(p + r, r + p);
    ASSERT_EQ(p * r, r * p);
    ASSERT_EQ((p * r) * s, p * (r * s));
    ASSERT_EQ(p * (r + s), p * r + p * s);
    ASSERT_TRUE((p - p).is_zero());
    const auto pr = p * r;
    for (const auto& [e, c] : pr.terms()) ASSERT_FALSE(c.is_zero());
  }
}

TEST(AlgebraProperties, EvaluationIsMultiplicative) {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  for (int i = 0; i < 200; ++i) {
    const std::size_t dim = 1 + i % 2;
    const auto p = random_poly(rng, dim), r = random_poly(rng, dim);
    ASSERT_EQ((p * r).eval_one(), p.eval_one() * r.eval_one());
    std::vector<double> w(dim);
    for (auto& x : w) x = angle(rng);
    ASSERT_LT(std::abs((p * r).eval_unit_circle(w) - p.eval_unit_circle(w) * r.eval_unit_circle(w)), 1e-10);
  }
}

TEST(AlgebraProperties, ConjugationCommutesWithSubstitution) {
  std::mt19937 rng(555);
  for (int i = 0; i < 200; ++i) {
    const auto p = random_poly(rng, 2);
    const IntMatrix lambda = testing_support::random_expanding_2x2(rng);
    ASSERT_EQ(p.substitute(lambda).conjugate(), p.conjugate().substitute(lambda));
    ASSERT_EQ(p.conjugate().conjugate(), p);
  }
}

TEST(AlgebraProperties, SubstitutionIsRingHomomorphism) {
  std::mt19937 rng(777);
  for (int i = 0; i < 100; ++i) {
    const auto p = random_poly(rng, 2), r = random_poly(rng, 2);
    const IntMatrix lambda = testing_support::random_expanding_2x2(rng);
    ASSERT_EQ((p * r).substitute(lambda), p.substitute(lambda) * r.substitute(lambda));
    ASSERT_EQ((p + r).substitute(lambda), p.substitute(lambda) + r.substitute(lambda));
  }
}
