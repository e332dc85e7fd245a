#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "elpbank/corpus.hpp"
#include "elpbank/synthesis.hpp"
#include "elpbank/transform.hpp"

namespace testing_support {

using namespace elpbank;

inline RadicalRational random_rr(std::mt19937& rng, int max_terms = 3) {
  static const std::uint64_t radicands[] = {1, 2, 3, 5, 6, 7, 12, 8, 18, 14};
  std::uniform_int_distribution<int> nterms(0, max_terms), pick(0, 9);
  std::uniform_int_distribution<long> num(-20, 20), den(1, 12);
  std::vector<RadicalRational::Term> raw;
  const int n = nterms(rng);
  for (int i = 0; i < n; ++i) raw.push_back({radicands[pick(rng)], mpq_class(num(rng), den(rng))});
  return RadicalRational::normalize(raw);
}

inline Exponent random_exponent(std::mt19937& rng, std::size_t dim, std::int64_t radius) {
  std::uniform_int_distribution<std::int64_t> d(-radius, radius);
  Exponent e(dim);
  for (auto& v : e) v = d(rng);
  return e;
}

inline LaurentPoly random_poly(std::mt19937& rng, std::size_t dim, int max_terms = 4, std::int64_t radius = 3) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  LaurentPoly p(dim);
  const int n = nterms(rng);
  for (int i = 0; i < n; ++i) p.add_term(random_exponent(rng, dim, radius), random_rr(rng, 2));
  return p;
}

/// Random 2x2 integer matrix with 2 <= |det| <= 8 and both eigenvalues of modulus > 1.
inline IntMatrix random_expanding_2x2(std::mt19937& rng) {
  std::uniform_int_distribution<std::int64_t> e(-3, 3);
  while (true) {
    const std::int64_t a = e(rng), b = e(rng), c = e(rng), d = e(rng);
    const std::int64_t det = a * d - b * c;
    if (std::abs(det) < 2 || std::abs(det) > 8) continue;
    const double tr = static_cast<double>(a + d);
    const double disc = tr * tr - 4.0 * static_cast<double>(det);
    double m1, m2;
    if (disc >= 0) {
      m1 = std::abs((tr + std::sqrt(disc)) / 2);
      m2 = std::abs((tr - std::sqrt(disc)) / 2);
    } else {
      m1 = m2 = std::sqrt(static_cast<double>(det));
    }
    if (m1 > 1 + 1e-6 && m2 > 1 + 1e-6) return IntMatrix{{a, b}, {c, d}};
  }
}

inline Filter random_filter(std::mt19937& rng, const DilationScheme& s, int taps = 8, std::int64_t radius = 4) {
  Filter f(s);
  for (int i = 0; i < taps; ++i) f.set_tap(random_exponent(rng, s.dim(), radius), random_rr(rng, 2));
  return f;
}

inline std::vector<CorpusEntry> corpus_entries() {
  return {builtin("example1", mpq_class(1, 2)), builtin("example2"), builtin("example3"), builtin("haar")};
}

}  // namespace testing_support
