#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "elpbank/bank.hpp"
#include "elpbank/transform.hpp"

namespace elpbank::io {

using json = nlohmann::ordered_json;

// ---- integers -------------------------------------------------------------

inline json integer_to_json(const mpz_class& v) {
  if (v.fits_slong_p()) return json(static_cast<std::int64_t>(v.get_si()));
  return json(v.get_str());
}

inline mpz_class integer_from_json(const json& j, const std::string& field) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    mpz_class v;
    if (v.set_str(j.get<std::string>(), 10) != 0) throw Error(Errc::parse_error, field + ": not an integer");
    return v;
  }
  throw Error(Errc::parse_error, field + ": expected an integer");
}

inline std::int64_t small_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw Error(Errc::parse_error, field + ": expected an integer");
  return j.get<std::int64_t>();
}

inline Exponent vector_from_json(const json& j, std::size_t dim, const std::string& field) {
  if (!j.is_array() || j.size() != dim)
    throw Error(Errc::parse_error, field + ": expected an integer vector of length " + std::to_string(dim));
  Exponent v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(small_int(j[i], field + "[" + std::to_string(i) + "]"));
  return v;
}

inline const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::parse_error, where + ": missing field '" + key + "'");
  return j.at(key);
}

// ---- RadicalRational: [{num, den, rad}, ...] ------------------------------

inline json to_json(const RadicalRational& a) {
  json arr = json::array();
  for (const auto& t : a.terms())
    arr.push_back({{"num", integer_to_json(t.coeff.get_num())},
                   {"den", integer_to_json(t.coeff.get_den())},
                   {"rad", static_cast<std::uint64_t>(t.radicand)}});
  return arr;
}

inline RadicalRational rr_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) throw Error(Errc::parse_error, field + ": expected a list of {num, den, rad}");
  std::vector<RadicalRational::Term> terms;
  std::set<std::uint64_t> seen;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    const mpz_class num = integer_from_json(member(j[i], "num", f), f + ".num");
    const mpz_class den = j[i].contains("den") ? integer_from_json(j[i]["den"], f + ".den") : mpz_class(1);
    const std::int64_t rad = j[i].contains("rad") ? small_int(j[i]["rad"], f + ".rad") : 1;
    if (den == 0) throw Error(Errc::invariant_violation, f + ": zero denominator");
    if (num == 0) throw Error(Errc::invariant_violation, f + ": zero coefficient stored");
    if (rad <= 0 || !is_squarefree(static_cast<std::uint64_t>(rad)))
      throw Error(Errc::invariant_violation, f + ": radicand " + std::to_string(rad) + " is not squarefree");
    if (!seen.insert(static_cast<std::uint64_t>(rad)).second)
      throw Error(Errc::invariant_violation, f + ": repeated radicand " + std::to_string(rad));
    mpq_class q(num, den);
    q.canonicalize();
    terms.push_back({static_cast<std::uint64_t>(rad), q});
  }
  return RadicalRational::normalize(std::move(terms));
}

// ---- LaurentPoly: [{exp, coeff}, ...] -------------------------------------

inline json to_json(const LaurentPoly& p) {
  json arr = json::array();
  for (const auto& [e, c] : p.terms()) arr.push_back({{"exp", e}, {"coeff", to_json(c)}});
  return arr;
}

inline LaurentPoly poly_from_json(const json& j, std::size_t dim, const std::string& field) {
  if (!j.is_array()) throw Error(Errc::parse_error, field + ": expected a list of {exp, coeff}");
  LaurentPoly p(dim);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    const Exponent e = vector_from_json(member(j[i], "exp", f), dim, f + ".exp");
    const RadicalRational c = rr_from_json(member(j[i], "coeff", f), f + ".coeff");
    if (c.is_zero()) throw Error(Errc::invariant_violation, f + ": zero coefficient stored");
    if (!p.coeff(e).is_zero()) throw Error(Errc::invariant_violation, f + ": repeated exponent");
    p.add_term(e, c);
  }
  return p;
}

// ---- DilationScheme: {dim, lambda, gamma, dual_reps} -----------------------

inline json to_json(const DilationScheme& s) {
  return {{"dim", s.dim()}, {"lambda", s.lambda().row_major()}, {"gamma", s.gamma()}, {"dual_reps", s.dual_reps()}};
}

inline IntMatrix lambda_from_json(const json& j, std::size_t dim, const std::string& field) {
  // accepts row-major [a, b, c, d] or nested [[a, b], [c, d]]
  std::vector<std::int64_t> flat;
  if (j.is_array() && !j.empty() && j[0].is_array()) {
    for (const auto& row : j) {
      if (!row.is_array() || row.size() != dim) throw Error(Errc::parse_error, field + ": ragged matrix");
      for (const auto& v : row) flat.push_back(small_int(v, field));
    }
  } else if (j.is_array()) {
    for (const auto& v : j) flat.push_back(small_int(v, field));
  } else {
    throw Error(Errc::parse_error, field + ": expected a matrix");
  }
  if (flat.size() != dim * dim)
    throw Error(Errc::parse_error, field + ": expected " + std::to_string(dim * dim) + " entries");
  return IntMatrix::from_row_major(dim, dim, std::move(flat));
}

inline DilationScheme scheme_from_json(const json& j, const std::string& field = "scheme") {
  const json& lam = member(j, "lambda", field);
  std::size_t dim = 0;
  if (j.contains("dim")) {
    dim = static_cast<std::size_t>(small_int(j["dim"], field + ".dim"));
  } else if (lam.is_array() && !lam.empty() && lam[0].is_array()) {
    dim = lam.size();
  } else {
    throw Error(Errc::parse_error, field + ": missing field 'dim'");
  }
  if (dim == 0) throw Error(Errc::parse_error, field + ".dim must be positive");
  const IntMatrix lambda = lambda_from_json(lam, dim, field + ".lambda");
  if (!j.contains("gamma") && !j.contains("dual_reps")) return DilationScheme::from_matrix(lambda);
  const DilationScheme canonical = DilationScheme::from_matrix(lambda);
  auto reps = [&](const char* key) {
    if (!j.contains(key)) return key == std::string("gamma") ? canonical.gamma() : canonical.dual_reps();
    std::vector<Exponent> v;
    for (std::size_t i = 0; i < j[key].size(); ++i)
      v.push_back(vector_from_json(j[key][i], dim, field + "." + key + "[" + std::to_string(i) + "]"));
    return v;
  };
  return DilationScheme::with_representatives(lambda, reps("gamma"), reps("dual_reps"));
}

// ---- Filter: {scheme, taps: [{m, coeff}]} ---------------------------------

inline json taps_to_json(const Filter& f) {
  json arr = json::array();
  for (const auto& [m, c] : f.taps()) arr.push_back({{"m", m}, {"coeff", to_json(c)}});
  return arr;
}

inline Filter taps_from_json(const json& j, const DilationScheme& scheme, const std::string& field) {
  if (!j.is_array()) throw Error(Errc::parse_error, field + ": expected a list of {m, coeff}");
  Filter f(scheme);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string fi = field + "[" + std::to_string(i) + "]";
    const Exponent m = vector_from_json(member(j[i], "m", fi), scheme.dim(), fi + ".m");
    const RadicalRational c = rr_from_json(member(j[i], "coeff", fi), fi + ".coeff");
    if (c.is_zero()) throw Error(Errc::invariant_violation, fi + ": zero tap listed");
    if (!f.tap(m).is_zero()) throw Error(Errc::invariant_violation, fi + ": repeated tap position");
    f.set_tap(m, c);
  }
  return f;
}

inline json to_json(const Filter& f) { return {{"scheme", to_json(f.scheme())}, {"taps", taps_to_json(f)}}; }

inline Filter filter_from_json(const json& j) {
  const DilationScheme s = scheme_from_json(member(j, "scheme", "filter"));
  return taps_from_json(member(j, "taps", "filter"), s, "taps");
}

// ---- SvpCertificate: {dim, K: [poly], L: [poly]} --------------------------

inline json to_json(const SvpCertificate& c, std::size_t dim) {
  json k = json::array(), l = json::array();
  for (const auto& p : c.k) k.push_back(to_json(p));
  for (const auto& p : c.l) l.push_back(to_json(p));
  return {{"dim", dim}, {"K", k}, {"L", l}};
}

inline SvpCertificate certificate_from_json(const json& j, std::size_t dim) {
  if (j.contains("dim") && static_cast<std::size_t>(small_int(j["dim"], "certificate.dim")) != dim)
    throw Error(Errc::dimension_mismatch, "certificate dimension does not match the filter");
  SvpCertificate c;
  for (const char* key : {"K", "L"}) {
    const json& arr = member(j, key, "certificate");
    if (!arr.is_array()) throw Error(Errc::parse_error, std::string("certificate.") + key + ": expected a list");
    auto& out = key[0] == 'K' ? c.k : c.l;
    for (std::size_t i = 0; i < arr.size(); ++i)
      out.push_back(poly_from_json(arr[i], dim, std::string(key) + "[" + std::to_string(i) + "]"));
  }
  if (c.k.size() != c.l.size()) throw Error(Errc::invariant_violation, "certificate K and L differ in length");
  return c;
}

// ---- BankPair: {scheme, primal: {lowpass, highpass}, dual: {...}} ----------

inline json bank_to_json(const FilterBank& b) {
  json hp = json::array();
  for (const auto& f : b.highpass()) hp.push_back(taps_to_json(f));
  return {{"lowpass", taps_to_json(b.lowpass())}, {"highpass", hp}};
}

inline json to_json(const BankPair& p) {
  return {{"scheme", to_json(p.primal.scheme())}, {"primal", bank_to_json(p.primal)}, {"dual", bank_to_json(p.dual)}};
}

inline FilterBank bank_from_json(const json& j, const DilationScheme& s, const std::string& field) {
  Filter low = taps_from_json(member(j, "lowpass", field), s, field + ".lowpass");
  const json& hp = member(j, "highpass", field);
  if (!hp.is_array()) throw Error(Errc::parse_error, field + ".highpass: expected a list");
  std::vector<Filter> high;
  for (std::size_t i = 0; i < hp.size(); ++i)
    high.push_back(taps_from_json(hp[i], s, field + ".highpass[" + std::to_string(i) + "]"));
  return FilterBank(std::move(low), std::move(high));
}

inline BankPair bank_pair_from_json(const json& j) {
  const DilationScheme s = scheme_from_json(member(j, "scheme", "bank"));
  return {bank_from_json(member(j, "primal", "bank"), s, "primal"), bank_from_json(member(j, "dual", "bank"), s, "dual")};
}

// ---- Signal: {dim, samples: [{k, value}]} ---------------------------------

inline json to_json(const ExactSignal& x) {
  json arr = json::array();
  for (const auto& [k, v] : x.samples) arr.push_back({{"k", k}, {"value", to_json(v)}});
  return {{"dim", x.dim}, {"samples", arr}};
}

inline json to_json(const NumericSignal& x) {
  json arr = json::array();
  for (const auto& [k, v] : x.samples) arr.push_back({{"k", k}, {"value", v}});
  return {{"dim", x.dim}, {"samples", arr}};
}

using AnySignal = std::variant<ExactSignal, NumericSignal>;

/// Exact when values are {num, den, rad} lists, numeric when they are JSON numbers.
inline AnySignal signal_from_json(const json& j) {
  const std::size_t dim = static_cast<std::size_t>(small_int(member(j, "dim", "signal"), "signal.dim"));
  const json& samples = member(j, "samples", "signal");
  if (!samples.is_array()) throw Error(Errc::parse_error, "signal.samples: expected a list");
  const bool numeric = !samples.empty() && member(samples[0], "value", "samples[0]").is_number();
  ExactSignal ex{dim, {}};
  NumericSignal nu{dim, {}};
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const std::string f = "samples[" + std::to_string(i) + "]";
    const Exponent k = vector_from_json(member(samples[i], "k", f), dim, f + ".k");
    const json& v = member(samples[i], "value", f);
    if (v.is_number() != numeric) throw Error(Errc::invariant_violation, f + ": mixed exact and numeric values");
    if (ex.samples.count(k) || nu.samples.count(k)) throw Error(Errc::invariant_violation, f + ": repeated position");
    if (numeric) nu.samples[k] = v.get<double>();
    else ex.samples[k] = rr_from_json(v, f + ".value");
  }
  if (numeric) return nu;
  return ex;
}

// ---- files ----------------------------------------------------------------

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::parse_error, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse_error, origin + ": " + e.what());
  }
}

inline void write_file(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::parse_error, "cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace elpbank::io
