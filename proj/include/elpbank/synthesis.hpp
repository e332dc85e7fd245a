#pragma once

#include <vector>

#include "elpbank/muep.hpp"

namespace elpbank {

namespace detail {

// Highpass z-transforms for one side of the bank:
//   F(z) conj(gen_j)(z^L)                 for each generator,
//   z^{nu_m} - F(z) conj(P_{nu_m})(z^L)   for each coset representative,
// where F is this side's lowpass and P the partner's polyphase vector.
inline std::vector<Filter> highpass_side(const Filter& own, const Filter& partner, const std::vector<LaurentPoly>& gens) {
  const auto& scheme = own.scheme();
  const IntMatrix& lambda = scheme.lambda();
  const LaurentPoly f = filter_to_z(own);
  const auto partner_pp = polyphase_decompose(partner).components;
  std::vector<Filter> out;
  out.reserve(gens.size() + scheme.q());
  for (const auto& gen : gens) out.push_back(Filter::from_z(scheme, f * gen.conjugate().substitute(lambda)));
  for (std::size_t m = 0; m < scheme.q(); ++m) {
    LaurentPoly z = LaurentPoly::monomial(scheme.gamma()[m]);
    z -= f * partner_pp[m].conjugate().substitute(lambda);
    out.push_back(Filter::from_z(scheme, z));
  }
  return out;
}

}  // namespace detail

/// Primal and dual wavelet filter banks from an SVP certificate. The primal side uses h and L,
/// the dual side g and K; each side receives J + q highpass filters.
inline BankPair synthesize_bank(const Filter& h, const Filter& g, const SvpCertificate& cert) {
  const auto verdict = svp_verify(h, g, cert);
  if (!verdict) throw Error(Errc::verify_failed, verdict.describe());

  auto primal_hp = detail::highpass_side(h, g, cert.l);
  auto dual_hp = detail::highpass_side(g, h, cert.k);
  for (const auto* side : {&primal_hp, &dual_hp})
    for (std::size_t i = 0; i < side->size(); ++i)
      if (classify_filter((*side)[i]) != FilterClass::Highpass)
        throw Error(Errc::muep_postcondition_failed, "synthesized filter " + std::to_string(i + 1) + " is not highpass");

  BankPair pair{FilterBank(h, std::move(primal_hp)), FilterBank(g, std::move(dual_hp))};
  const auto muep = muep_verify_polyphase(pair);
  if (!muep)
    throw Error(Errc::muep_postcondition_failed,
                "entry (" + std::to_string(muep.dual_primal.row) + "," + std::to_string(muep.dual_primal.col) + ")");
  return pair;
}

/// Tight bank from SOS generators: 1 - H H^* = sum_j |p_j|^2. Returns the pair with
/// primal == dual.
inline BankPair sos_synthesize(const Filter& h, const std::vector<LaurentPoly>& sos) {
  const LaurentPoly residual = svp_residual(h, h);
  const SvpCertificate cert{sos, sos};
  const LaurentPoly diff = residual - generator_sum(cert, h.dim());
  if (!diff.is_zero()) throw Error(Errc::sos_identity_failed, "1 - H H^* minus sum |p_j|^2 = " + diff.str());
  // sum_j p_j(1)^2 = 0 over the reals forces every p_j(1) = 0
  for (std::size_t j = 0; j < sos.size(); ++j)
    if (!sos[j].eval_one().is_zero())
      throw Error(Errc::invariant_violation, "SOS generator " + std::to_string(j + 1) + " does not vanish at 1");
  return synthesize_bank(h, h, cert);
}

}  // namespace elpbank
