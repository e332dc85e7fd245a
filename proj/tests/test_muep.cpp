#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include <Eigen/Dense>

#include "support.hpp"

using namespace elpbank;

namespace {

BankPair example3_quasi_tight() {
  const auto c = corpus::example3();
  return synthesize_bank(c.lowpass, c.lowpass, c.certificate);
}

BankPair drop_last_highpass(const BankPair& p, bool both) {
  auto cut = [](const FilterBank& b) {
    std::vector<Filter> hp(b.highpass().begin(), b.highpass().end() - 1);
    return FilterBank(b.lowpass(), hp);
  };
  return {cut(p.primal), both ? cut(p.dual) : p.dual};
}

// Leibniz expansion over all permutations: an oracle independent of the cofactor code.
LaurentPoly leibniz_det(const PolyMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  LaurentPoly det(m.dim());
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    LaurentPoly term = LaurentPoly::constant(m.dim(), inversions % 2 ? -1 : 1);
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

}  // namespace

TEST(MuepPolyphase, Example1Holds) {
  const auto c = corpus::example1(mpq_class(1, 2));
  EXPECT_TRUE(muep_verify_polyphase(synthesize_bank(c.lowpass, c.dual_lowpass, c.certificate)).holds);
}

TEST(MuepPolyphase, Example3TightHolds) {
  const auto c = corpus::example3();
  EXPECT_TRUE(muep_verify_polyphase(sos_synthesize(c.lowpass, c.sos_generators)).holds);
}

TEST(MuepPolyphase, DroppedFilterFails) {
  const auto v = muep_verify_polyphase(drop_last_highpass(example3_quasi_tight(), true));
  EXPECT_FALSE(v.holds);
  EXPECT_FALSE(v.dual_primal.residual.is_zero());
}

TEST(MuepPolyphase, UnequalBankSizesRejected) {
  try {
    muep_verify_polyphase(drop_last_highpass(example3_quasi_tight(), false));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::shape_mismatch);
  }
}

TEST(MuepGrid, Example2OnThirtyTwoGrid) {
  const auto c = corpus::example2();
  const auto pair = synthesize_bank(c.lowpass, c.lowpass, c.certificate);
  EXPECT_LT(muep_verify_grid(pair, 32).max_deviation, 1e-10);
}

TEST(MuepGrid, HaarTight) {
  const auto h = corpus::haar().lowpass;
  EXPECT_LT(muep_verify_grid(synthesize_bank(h, h, {}), 64).max_deviation, 1e-12);
}

TEST(MuepGrid, CorruptedBankDeviates) {
  const auto pair = example3_quasi_tight();
  std::vector<Filter> hp = pair.primal.highpass();
  hp[3] = Filter::from_z(hp[3].scheme(), filter_to_z(hp[3]) * RadicalRational(2));
  const BankPair bad{FilterBank(pair.primal.lowpass(), hp), pair.dual};
  EXPECT_FALSE(muep_verify_polyphase(bad).holds);
  EXPECT_GT(muep_verify_grid(bad, 64).max_deviation, 0.1);
}

TEST(MuepGrid, ParallelIsDeterministic) {
  const auto pair = example3_quasi_tight();
  const auto a = muep_verify_grid(pair, 64, false);
  const auto b = muep_verify_grid(pair, 64, true);
  EXPECT_EQ(a.max_deviation, b.max_deviation);
  EXPECT_EQ(a.omega, b.omega);
}

TEST(Extraction, FewerHighpassThanCosetsNotMuep) {
  const auto pair = synthesize_bank(corpus::haar().lowpass, corpus::haar().lowpass, {});
  const BankPair small = drop_last_highpass(pair, true);
  try {
    extract_svp(small);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::precondition_failed);
  }
}

TEST(Extraction, HaarSinglePair) {
  const auto h = corpus::haar().lowpass;
  const auto pair = synthesize_bank(h, h, {});
  const auto ex = extract_svp(pair);
  EXPECT_EQ(ex.candidates, 1u);
  // The only 2x2 minor of [[H_1,0, H_1,1], [H_2,0, H_2,1]] is computed by hand:
  const auto m = highpass_polyphase(pair.primal);
  const LaurentPoly by_hand = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  EXPECT_EQ(determinant(m), by_hand);
  // The residual is zero, so the single minor vanishes and the pair is pruned.
  EXPECT_TRUE(by_hand.is_zero());
  EXPECT_EQ(ex.dropped, 1u);
  EXPECT_EQ(ex.certificate.size(), 0u);
  EXPECT_TRUE(svp_verify(h, h, ex.certificate).valid);
}

TEST(Extraction, Example3TenCandidates) {
  const auto pair = example3_quasi_tight();
  const auto ex = extract_svp(pair);
  EXPECT_EQ(ex.candidates, 10u);
  EXPECT_EQ(ex.certificate.size() + ex.dropped, 10u);
  EXPECT_TRUE(svp_verify(pair.primal.lowpass(), pair.dual.lowpass(), ex.certificate).valid);
  for (const auto& k : ex.certificate.k) EXPECT_TRUE(k.eval_one().is_zero());
  for (const auto& l : ex.certificate.l) EXPECT_TRUE(l.eval_one().is_zero());
}

TEST(Extraction, Combinations) {
  const auto c = combinations(5, 2);
  ASSERT_EQ(c.size(), 10u);
  EXPECT_EQ(c.front(), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(c.back(), (std::vector<std::size_t>{3, 4}));
  EXPECT_TRUE(std::is_sorted(c.begin(), c.end()));
  EXPECT_TRUE(combinations(1, 2).empty());
  EXPECT_EQ(combinations(13, 4).size(), 715u);
}

TEST(Determinant, MatchesLeibnizExpansion) {
  std::mt19937 rng(17);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = 1 + i % 4;
    PolyMatrix m(n, n, 2);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (rng() % 3) m(r, c) = testing_support::random_poly(rng, 2, 2, 2);
    ASSERT_EQ(determinant(m), leibniz_det(m));
  }
}

TEST(Determinant, RankOneUpdateExact) {
  // det(I_q - g^* h) = 1 - h g^*, for polynomial row vectors h and g.
  std::mt19937 rng(23);
  for (int i = 0; i < 20; ++i) {
    const std::size_t q = 2 + i % 3;
    std::vector<LaurentPoly> h, g;
    for (std::size_t k = 0; k < q; ++k) {
      h.push_back(testing_support::random_poly(rng, 1, 2, 2));
      g.push_back(testing_support::random_poly(rng, 1, 2, 2));
    }
    PolyMatrix m(q, q, 1);
    LaurentPoly hg(1);
    for (std::size_t r = 0; r < q; ++r) {
      hg += h[r] * g[r].conjugate();
      for (std::size_t c = 0; c < q; ++c) {
        m(r, c) = -(g[r].conjugate() * h[c]);
        if (r == c) m(r, c) += LaurentPoly::constant(1, 1);
      }
    }
    ASSERT_EQ(determinant(m), LaurentPoly::constant(1, 1) - hg);
  }
}

TEST(Determinant, RankOneUpdateNumeric) {
  std::mt19937 rng(29);
  std::normal_distribution<double> n01;
  for (int i = 0; i < 100; ++i) {
    const int q = 2 + i % 5;
    Eigen::RowVectorXcd h(q), g(q);
    for (int k = 0; k < q; ++k) {
      h(k) = {n01(rng), n01(rng)};
      g(k) = {n01(rng), n01(rng)};
    }
    const Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(q, q) - g.adjoint() * h;
    const std::complex<double> rhs = 1.0 - (h * g.adjoint())(0, 0);
    ASSERT_LT(std::abs(m.determinant() - rhs), 1e-10 * (1 + std::abs(rhs)));
  }
}

TEST(MuepProperties, ExtractionRoundtripOverCorpus) {
  for (const auto& c : testing_support::corpus_entries()) {
    const auto pair = synthesize_bank(c.lowpass, c.dual_lowpass, c.certificate);
    const auto ex = extract_svp(pair);
    ASSERT_TRUE(svp_verify(c.lowpass, c.dual_lowpass, ex.certificate).valid) << c.name;
    const auto again = synthesize_bank(c.lowpass, c.dual_lowpass, ex.certificate);
    ASSERT_TRUE(muep_verify_polyphase(again).holds) << c.name;
  }
}

TEST(MuepProperties, DualityAndGridConsistency) {
  for (const auto& c : testing_support::corpus_entries()) {
    const auto pair = synthesize_bank(c.lowpass, c.dual_lowpass, c.certificate);
    const auto v = muep_verify_polyphase(pair);
    ASSERT_EQ(v.holds, muep_verify_polyphase(pair.swapped()).holds) << c.name;
    ASSERT_TRUE(v.holds);
    for (std::size_t n : {8u, 16u}) ASSERT_LT(muep_verify_grid(pair, n).max_deviation, 1e-10) << c.name;
  }
}

TEST(MuepProperties, ParallelExtractionMatchesSerial) {
  const auto c = corpus::example2();
  const auto pair = synthesize_bank(c.lowpass, c.lowpass, c.certificate);
  const auto a = extract_svp(pair, false), b = extract_svp(pair, true);
  EXPECT_EQ(a.certificate.k, b.certificate.k);
  EXPECT_EQ(a.certificate.l, b.certificate.l);
  EXPECT_EQ(a.subsets, b.subsets);
}
