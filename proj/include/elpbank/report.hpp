#pragma once

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "elpbank/bank.hpp"

namespace elpbank {

struct BankSummary {
  std::string side;
  std::size_t s = 0;
  std::vector<std::size_t> tap_counts;  // lowpass excluded
};

inline BankSummary summarize(const std::string& side, const FilterBank& b) {
  BankSummary out{side, b.size(), {}};
  for (const auto& f : b.highpass()) out.tap_counts.push_back(f.nonzero_taps());
  return out;
}

/// Result of one CLI run. Exact verdicts and numeric checks are stored separately; the
/// numeric ones never stand in for an exact verdict.
struct RunReport {
  std::string command;
  std::string inputs_digest;
  std::vector<std::pair<std::string, bool>> exact;       // e.g. {"svp", true}
  std::vector<std::pair<std::string, double>> numeric;   // e.g. {"muep_grid_max_deviation", 3e-16}
  std::vector<std::pair<std::string, bool>> numeric_ok;  // pass flags for the numeric checks
  std::vector<BankSummary> banks;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  std::vector<std::string> factored_residual;  // "k_j * conj(l_j)" lines, when a certificate is known
  std::vector<std::pair<std::string, double>> timings_ms;
  bool with_timings = false;
  std::optional<std::string> input_error;

  void verdict(const std::string& name, bool holds) { exact.emplace_back(name, holds); }

  void measure(const std::string& name, double value, bool ok) {
    numeric.emplace_back(name, value);
    numeric_ok.emplace_back(name, ok);
  }

  int exit_code() const {
    if (input_error) return 2;
    for (const auto& [n, ok] : exact)
      if (!ok) return 1;
    for (const auto& [n, ok] : numeric_ok)
      if (!ok) return 1;
    return 0;
  }
};

/// 64-bit FNV-1a, rendered as hex.
inline std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// Scientific notation with three significant digits.
inline std::string sci3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

enum class ReportFormat { Table, Json };

inline nlohmann::ordered_json report_json(const RunReport& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["command"] = r.command;
  j["inputs_digest"] = r.inputs_digest;
  ordered_json verdicts = ordered_json::object();
  for (const auto& [n, ok] : r.exact) verdicts[n] = ok ? "holds" : "fails";
  j["verdicts"] = verdicts;
  ordered_json numeric = ordered_json::object();
  for (std::size_t i = 0; i < r.numeric.size(); ++i)
    numeric[r.numeric[i].first] = {{"value", r.numeric[i].second}, {"passes", r.numeric_ok[i].second}};
  j["numeric"] = numeric;
  ordered_json banks = ordered_json::array();
  for (const auto& b : r.banks) banks.push_back({{"side", b.side}, {"s", b.s}, {"tap_counts", b.tap_counts}});
  j["banks"] = banks;
  j["details"] = r.details;
  if (r.input_error) j["error"] = *r.input_error;
  if (r.with_timings) {
    ordered_json t = ordered_json::object();
    for (const auto& [n, ms] : r.timings_ms) t[n] = ms;
    j["timings_ms"] = t;
  }
  j["exit_code"] = r.exit_code();
  return j;
}

inline std::string render_report(const RunReport& r, ReportFormat fmt) {
  if (fmt == ReportFormat::Json) return report_json(r).dump(2) + "\n";
  std::ostringstream os;
  os << "command        " << r.command << "\n";
  os << "inputs digest  " << r.inputs_digest << "\n";
  if (r.input_error) os << "input error    " << *r.input_error << "\n";
  for (const auto& [n, ok] : r.exact) os << "exact   " << n << ": " << (ok ? "holds" : "FAILS") << "\n";
  for (std::size_t i = 0; i < r.numeric.size(); ++i)
    os << "numeric " << r.numeric[i].first << ": " << sci3(r.numeric[i].second)
       << (r.numeric_ok[i].second ? " (pass)" : " (FAIL)") << "\n";
  for (const auto& b : r.banks) {
    os << "bank " << b.side << ": s=" << b.s << " taps=[";
    for (std::size_t i = 0; i < b.tap_counts.size(); ++i) os << (i ? "," : "") << b.tap_counts[i];
    os << "]\n";
  }
  if (!r.factored_residual.empty()) {
    os << "residual = sum_j k_j(z) conj(l_j(z)):\n";
    for (const auto& line : r.factored_residual) os << "  + " << line << "\n";
  }
  for (const auto& [k, v] : r.details.items()) os << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  if (r.with_timings)
    for (const auto& [n, ms] : r.timings_ms) os << "time " << n << ": " << ms << " ms\n";
  return os.str();
}

}  // namespace elpbank
