#include <gtest/gtest.h>

#include "support.hpp"

using namespace elpbank;

namespace {

RadicalRational r2(long n, long d) { return RadicalRational::sqrt(2) * RadicalRational::rational(n, d); }

// Non-orthogonal biorthogonal pair on Lambda = [2]:
//   H = [sqrt2/2, sqrt2/4 (1 + z^-1)],  G = [sqrt2 (3/4 - z/4), sqrt2/2],  H G^* = 1.
std::pair<Filter, Filter> biorthogonal_pair() {
  const auto s = validate_dilation(IntMatrix{{2}});
  LaurentPoly h1 = LaurentPoly::constant(1, r2(1, 4));
  h1.add_term({-1}, r2(1, 4));
  LaurentPoly g0 = LaurentPoly::constant(1, r2(3, 4));
  g0.add_term({1}, r2(-1, 4));
  const Filter h = polyphase_reconstruct({s, {LaurentPoly::constant(1, r2(1, 2)), h1}});
  const Filter g = polyphase_reconstruct({s, {g0, LaurentPoly::constant(1, r2(1, 2))}});
  return {h, g};
}

Filter haar_2d() {
  const auto s = validate_dilation(IntMatrix::scalar(2, 2));
  Filter h(s);
  for (const auto& m : std::vector<Exponent>{{0, 0}, {1, 0}, {0, 1}, {1, 1}}) h.set_tap(m, RadicalRational::rational(1, 2));
  return h;
}

}  // namespace

TEST(Pyramid, HaarBottomBlockTrace) {
  const auto h = corpus::haar().lowpass;
  const PolyMatrix m = lp_matrix(h, h);
  ASSERT_EQ(m.rows(), 3u);
  ASSERT_EQ(m.cols(), 2u);
  EXPECT_EQ(m(1, 0) + m(2, 1), LaurentPoly::constant(1, 1));
}

TEST(Pyramid, OrthogonalFiltersGiveUnitaryMatrix) {
  for (const Filter& h : {corpus::haar().lowpass, haar_2d()}) {
    const PolyMatrix m = lp_matrix(h, h);
    EXPECT_TRUE(check_identity(m.conjugate_transpose() * m).holds);
  }
}

TEST(Pyramid, BiorthogonalIdentity) {
  const auto [h, g] = biorthogonal_pair();
  ASSERT_EQ(classify_filter(h), FilterClass::CanonicalLowpass);
  ASSERT_EQ(classify_filter(g), FilterClass::CanonicalLowpass);
  EXPECT_TRUE(svp_residual(h, g).is_zero());
  EXPECT_TRUE(check_identity(lp_matrix(g, h).conjugate_transpose() * lp_matrix(h, g)).holds);
  EXPECT_TRUE(verify_core_identity(h, g, {}, {}).holds);
  // h alone is not orthogonal
  EXPECT_FALSE(check_identity(lp_matrix(h, h).conjugate_transpose() * lp_matrix(h, h)).holds);
}

TEST(Pyramid, EmptyGeneratorsReduceToLaplacianPyramid) {
  const auto c = corpus::example3();
  EXPECT_EQ(extended_lp_matrix(c.lowpass, c.lowpass, {}), lp_matrix(c.lowpass, c.lowpass));
}

TEST(Pyramid, Example1ExtendedShape) {
  const auto c = corpus::example1(mpq_class(1, 2));
  const PolyMatrix m = extended_lp_matrix(c.lowpass, c.dual_lowpass, c.certificate.l);
  EXPECT_EQ(m.rows(), 11u);
  EXPECT_EQ(m.cols(), 4u);
}

TEST(Pyramid, NonVanishingGeneratorRejected) {
  const auto c = corpus::example3();
  try {
    extended_lp_matrix(c.lowpass, c.lowpass, {LaurentPoly::constant(1, 1)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::non_vanishing_generator);
  }
}

TEST(Pyramid, SchemeMismatch) {
  EXPECT_THROW(lp_matrix(corpus::haar().lowpass, haar_2d()), Error);
}

TEST(Pyramid, CoreIdentityExample1) {
  const auto c = corpus::example1(mpq_class(1, 2));
  EXPECT_TRUE(verify_core_identity(c.lowpass, c.dual_lowpass, c.certificate.k, c.certificate.l).holds);
}

TEST(Pyramid, CoreIdentityReportsCounterexample) {
  const auto c = corpus::example1(mpq_class(1, 2));
  auto l = c.certificate.l;
  l[0] = l[0] * RadicalRational::rational(2, 1);  // still vanishes at 1, wrong scale
  const auto check = verify_core_identity(c.lowpass, c.dual_lowpass, c.certificate.k, l);
  EXPECT_FALSE(check.holds);
  EXPECT_FALSE(check.residual.is_zero());
}

TEST(PyramidProperties, CoreIdentityForAcceptedCertificates) {
  std::vector<CorpusEntry> entries = testing_support::corpus_entries();
  std::mt19937 rng(3);
  std::uniform_int_distribution<long> num(-12, 12), den(1, 9);
  for (int i = 0; i < 10; ++i) entries.push_back(corpus::example1(mpq_class(num(rng), den(rng))));
  for (const auto& c : entries) {
    ASSERT_TRUE(svp_verify(c.lowpass, c.dual_lowpass, c.certificate).valid) << c.name;
    ASSERT_TRUE(verify_core_identity(c.lowpass, c.dual_lowpass, c.certificate.k, c.certificate.l).holds) << c.name;
  }
}

TEST(PolyMatrix, ProductShapeMismatch) {
  const PolyMatrix a(2, 3, 1), b(2, 2, 1);
  EXPECT_THROW(a * b, Error);
}
