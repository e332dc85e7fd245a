#pragma once

#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "elpbank/bank.hpp"
#include "elpbank/parallel.hpp"
#include "elpbank/pyramid.hpp"

namespace elpbank {

/// 1 - sum_nu H_nu conj(G_nu), exactly.
inline LaurentPoly svp_residual(const Filter& h, const Filter& g) {
  detail::require_same_scheme(h, g);
  if (classify_filter(h) != FilterClass::CanonicalLowpass || classify_filter(g) != FilterClass::CanonicalLowpass)
    throw Error(Errc::not_lowpass, "SVP residual needs canonical lowpass filters");
  const auto hp = polyphase_decompose(h).components;
  const auto gp = polyphase_decompose(g).components;
  LaurentPoly r = LaurentPoly::constant(h.dim(), 1);
  for (std::size_t i = 0; i < hp.size(); ++i) r -= hp[i] * gp[i].conjugate();
  return r;
}

/// sum_j k_j conj(l_j).
inline LaurentPoly generator_sum(const SvpCertificate& cert, std::size_t dim) {
  if (cert.k.size() != cert.l.size()) throw Error(Errc::shape_mismatch, "generator lists differ in length");
  LaurentPoly s(dim);
  for (std::size_t j = 0; j < cert.k.size(); ++j) s += cert.k[j] * cert.l[j].conjugate();
  return s;
}

enum class SvpClause { None, LengthMismatch, GeneratorNotVanishing, IdentityMismatch };

constexpr std::string_view to_string(SvpClause c) {
  switch (c) {
    case SvpClause::None: return "none";
    case SvpClause::LengthMismatch: return "generator lists differ in length";
    case SvpClause::GeneratorNotVanishing: return "generator does not vanish at 1";
    case SvpClause::IdentityMismatch: return "residual differs from generator sum";
  }
  return "?";
}

struct SvpVerdict {
  bool valid = true;
  SvpClause clause = SvpClause::None;
  char side = ' ';             // 'K' or 'L' for GeneratorNotVanishing
  std::size_t generator = 0;   // 1-based index for GeneratorNotVanishing
  LaurentPoly difference;      // residual - generator sum for IdentityMismatch

  explicit operator bool() const { return valid; }

  std::string describe() const {
    if (valid) return "valid";
    std::string s(to_string(clause));
    if (clause == SvpClause::GeneratorNotVanishing) s += " (" + std::string(1, side) + "[" + std::to_string(generator) + "])";
    if (clause == SvpClause::IdentityMismatch) s += ": " + difference.str();
    return s;
  }
};

inline SvpVerdict svp_verify(const Filter& h, const Filter& g, const SvpCertificate& cert) {
  SvpVerdict v;
  if (cert.k.size() != cert.l.size()) {
    v.valid = false;
    v.clause = SvpClause::LengthMismatch;
    return v;
  }
  for (char side : {'K', 'L'}) {
    const auto& gens = side == 'K' ? cert.k : cert.l;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (gens[j].dim() != h.dim()) throw Error(Errc::dimension_mismatch, "generator dimension");
      if (!gens[j].eval_one().is_zero()) {
        v.valid = false;
        v.clause = SvpClause::GeneratorNotVanishing;
        v.side = side;
        v.generator = j + 1;
        return v;
      }
    }
  }
  LaurentPoly diff = svp_residual(h, g) - generator_sum(cert, h.dim());
  if (!diff.is_zero()) {
    v.valid = false;
    v.clause = SvpClause::IdentityMismatch;
    v.difference = std::move(diff);
  }
  return v;
}

struct SubQmfResult {
  bool passes = true;
  double min_value = 0.0;
  std::vector<double> argmin;
};

/// Minimum of 1 - H(z)H(z)^* over a uniform grid of z = e^{i omega}; passes iff >= -1e-10.
inline SubQmfResult sub_qmf_check(const Filter& h, std::size_t grid_points, bool parallel = false) {
  const LaurentPoly residual = svp_residual(h, h);
  const std::size_t dim = h.dim();
  const std::size_t total = grid_size(dim, grid_points);
  std::vector<double> values(total);
  parallel_for(
      total, [&](std::size_t i) { values[i] = residual.eval_unit_circle(grid_point(dim, grid_points, i)).real(); },
      parallel);
  SubQmfResult out;
  out.min_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < total; ++i)
    if (values[i] < out.min_value) {
      out.min_value = values[i];
      out.argmin = grid_point(dim, grid_points, i);
    }
  out.passes = out.min_value >= -1e-10;
  return out;
}

}  // namespace elpbank
