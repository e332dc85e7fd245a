#pragma once

#include <optional>
#include <string>
#include <vector>

#include "elpbank/bank.hpp"

namespace elpbank {

struct CorpusExpectations {
  std::size_t generators = 0;                // J
  std::size_t highpass = 0;                  // s = J + q per side
  std::vector<std::size_t> generator_taps;   // nonzero taps of the first synthesized highpass filters
  std::optional<std::size_t> tight_highpass; // SOS route, when available
  std::optional<std::size_t> sos_filter_taps;
};

struct CorpusEntry {
  std::string name;
  std::optional<mpq_class> parameter;
  DilationScheme scheme;
  Filter lowpass;
  Filter dual_lowpass;
  SvpCertificate certificate;
  std::vector<int> signs;                   // k_j = signs[j] * l_j when the bank is quasi-tight
  std::vector<LaurentPoly> sos_generators;  // 1 - H H^* = sum |p_j|^2, when known
  CorpusExpectations expected;
  std::string notes;

  bool quasi_tight() const { return !signs.empty(); }
};

inline std::vector<std::string> corpus_names() { return {"example1", "example2", "example3", "haar"}; }

namespace corpus {

inline RadicalRational sqrt_over(std::uint64_t n, long num, long den) {
  return RadicalRational::sqrt(n) * RadicalRational::rational(num, den);
}

inline LaurentPoly one_minus(std::initializer_list<std::int64_t> m) { return one_minus_monomial(Exponent(m)); }

/// Two-dimensional dyadic coset-sum filter built from R(w) = a + cos w + (1-a) cos 2w.
inline CorpusEntry example1(const mpq_class& a) {
  const std::size_t n = 2;
  const std::vector<Exponent> reps{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  const auto scheme = DilationScheme::with_representatives(IntMatrix::scalar(2, 2), reps, reps);
  const std::vector<Exponent> nonzero(reps.begin() + 1, reps.end());
  const RadicalRational ra(a), one_minus_a(mpq_class(1) - a);
  const RadicalRational quarter = RadicalRational::rational(1, 4);

  // H(z) = 3a/2 - 1 + (1-a)/4 sum (z^{2m} + z^{-2m}) + sum z^m (1 + z^{-2m}) / 4
  LaurentPoly h = LaurentPoly::constant(n, ra * RadicalRational::rational(3, 2) - RadicalRational(1));
  for (const auto& m : nonzero) {
    const Exponent twice = m + m;
    h.add_term(twice, one_minus_a * quarter);
    h.add_term(-twice, one_minus_a * quarter);
    h.add_term(m, quarter);
    h.add_term(m - twice, quarter);
  }

  // E(z) = 3a/2 - 1/2 + (1-a)/4 sum (z^m + z^{-m})
  LaurentPoly e = LaurentPoly::constant(n, ra * RadicalRational::rational(3, 2) - RadicalRational::rational(1, 2));
  for (const auto& m : nonzero) {
    e.add_term(m, one_minus_a * quarter);
    e.add_term(-m, one_minus_a * quarter);
  }

  CorpusEntry c;
  c.name = "example1";
  c.parameter = a;
  c.scheme = scheme;
  c.lowpass = Filter::from_z(scheme, h);
  c.dual_lowpass = c.lowpass;
  for (const auto& m : nonzero) c.certificate.k.push_back(one_minus_monomial(m) * e * one_minus_a);
  for (const auto& m : nonzero) c.certificate.k.push_back(one_minus_monomial(m) * quarter);
  for (int rep = 0; rep < 2; ++rep)
    for (const auto& m : nonzero) c.certificate.l.push_back(one_minus_monomial(m) * quarter);
  c.expected = {6, 10, {}, std::nullopt, std::nullopt};
  c.notes = "2-D dyadic coset-sum lowpass filter with parameter a; g = h";
  return c;
}

/// Quincunx lowpass filter on [-2,2]x[-1,1] with eleven signed generators.
inline CorpusEntry example2() {
  const auto scheme = DilationScheme::from_matrix(IntMatrix{{1, 1}, {1, -1}});
  const long rows[3][5] = {{-1, 0, 2, 0, -1}, {0, 8, 16, 8, 0}, {-1, 0, 2, 0, -1}};
  Filter h(scheme);
  for (int r = 0; r < 3; ++r)
    for (int col = 0; col < 5; ++col)
      if (rows[r][col] != 0) h.set_tap({col - 2, r - 1}, sqrt_over(2, rows[r][col], 32));

  std::vector<LaurentPoly> gens{
      one_minus({2, 1}) * sqrt_over(2, 2, 16),   one_minus({1, 2}) * sqrt_over(2, 2, 16),
      one_minus({2, 0}) * sqrt_over(2, 1, 16),   one_minus({0, 2}) * sqrt_over(2, 1, 16),
      one_minus({3, 1}) * sqrt_over(2, 1, 32),   one_minus({2, 2}) * RadicalRational::rational(2, 32),
      one_minus({1, 3}) * sqrt_over(2, 1, 32),   one_minus({1, 1}) * sqrt_over(7, 1, 8),
      one_minus({1, 0}) * sqrt_over(2, 1, 8),    one_minus({0, 1}) * sqrt_over(2, 1, 8),
      one_minus({1, -1}) * sqrt_over(3, 1, 16),
  };
  CorpusEntry c;
  c.name = "example2";
  c.scheme = scheme;
  c.lowpass = h;
  c.dual_lowpass = h;
  c.signs = {-1, -1, -1, -1, 1, 1, 1, 1, 1, 1, 1};
  for (std::size_t j = 0; j < gens.size(); ++j) {
    c.certificate.l.push_back(gens[j]);
    c.certificate.k.push_back(gens[j] * RadicalRational(c.signs[j]));
  }
  c.expected = {11, 13, {}, std::nullopt, std::nullopt};
  c.notes = "quincunx lowpass filter; quasi-tight bank";
  return c;
}

/// Order-4 centered Deslauriers-Dubuc lowpass filter, 1-D dyadic.
inline CorpusEntry example3() {
  const auto scheme = DilationScheme::from_matrix(IntMatrix{{2}});
  const long taps[7] = {-1, 0, 9, 16, 9, 0, -1};
  Filter h(scheme);
  for (int i = 0; i < 7; ++i)
    if (taps[i] != 0) h.set_tap({i - 3}, sqrt_over(2, taps[i], 32));

  std::vector<LaurentPoly> gens{
      one_minus({2}) * RadicalRational::rational(3, 16),
      one_minus({1}) * sqrt_over(14, 3, 32),
      one_minus({3}) * sqrt_over(2, 1, 32),
  };
  // p(z) = ((-2r2 + r6) + (6r2 - r6) z + (-6r2 - r6) z^2 + (2r2 + r6) z^3) / 32
  const auto r = [](long c2, long c6) { return sqrt_over(2, c2, 32) + sqrt_over(6, c6, 32); };
  LaurentPoly p(1);
  p.add_term({0}, r(-2, 1));
  p.add_term({1}, r(6, -1));
  p.add_term({2}, r(-6, -1));
  p.add_term({3}, r(2, 1));

  CorpusEntry c;
  c.name = "example3";
  c.scheme = scheme;
  c.lowpass = h;
  c.dual_lowpass = h;
  c.signs = {-1, 1, 1};
  for (std::size_t j = 0; j < gens.size(); ++j) {
    c.certificate.l.push_back(gens[j]);
    c.certificate.k.push_back(gens[j] * RadicalRational(c.signs[j]));
  }
  c.sos_generators = {p};
  c.expected = {3, 5, {8, 6, 8}, 3, 11};
  c.notes = "Deslauriers-Dubuc order 4; quasi-tight bank and tight bank from p(z)";
  return c;
}

/// Orthogonal Haar filter: biorthogonal boundary case with J = 0.
inline CorpusEntry haar() {
  const auto scheme = DilationScheme::from_matrix(IntMatrix{{2}});
  Filter h(scheme);
  h.set_tap({0}, sqrt_over(2, 1, 2));
  h.set_tap({1}, sqrt_over(2, 1, 2));
  CorpusEntry c;
  c.name = "haar";
  c.scheme = scheme;
  c.lowpass = h;
  c.dual_lowpass = h;
  c.sos_generators = {};
  c.expected = {0, 2, {}, 2, std::nullopt};
  c.notes = "orthogonal Haar filter; residual is zero";
  return c;
}

}  // namespace corpus

inline CorpusEntry builtin(const std::string& name, const std::optional<mpq_class>& param = std::nullopt) {
  CorpusEntry c;
  if (name == "example1") {
    if (!param) throw Error(Errc::missing_parameter, "example1 needs the rational parameter a");
    c = corpus::example1(*param);
  } else if (name == "example2") {
    c = corpus::example2();
  } else if (name == "example3") {
    c = corpus::example3();
  } else if (name == "haar") {
    c = corpus::haar();
  } else {
    throw Error(Errc::unknown_name, "no corpus entry named '" + name + "'");
  }
  if (classify_filter(c.lowpass) != FilterClass::CanonicalLowpass ||
      classify_filter(c.dual_lowpass) != FilterClass::CanonicalLowpass)
    throw Error(Errc::invariant_violation, name + ": lowpass filter is not canonical for this parameter");
  return c;
}

}  // namespace elpbank
