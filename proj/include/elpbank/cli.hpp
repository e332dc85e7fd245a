#pragma once

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "elpbank/corpus.hpp"
#include "elpbank/io.hpp"
#include "elpbank/report.hpp"
#include "elpbank/svp.hpp"
#include "elpbank/synthesis.hpp"
#include "elpbank/transform.hpp"

namespace elpbank::cli {

using io::json;

struct GlobalOptions {
  bool json = false;
  std::optional<std::size_t> grid;
  bool parallel = false;
  bool timings = false;

  std::size_t grid_for(std::size_t dim) const {
    if (grid) return *grid;
    return dim <= 2 ? 64 : 16;
  }
};

namespace detail {

/// Errors that stand for a failed mathematical verdict rather than bad input.
inline bool is_verdict_error(Errc c) {
  switch (c) {
    case Errc::verify_failed:
    case Errc::sos_identity_failed:
    case Errc::precondition_failed:
    case Errc::muep_postcondition_failed:
    case Errc::non_vanishing_generator:
      return true;
    default:
      return false;
  }
}

class Timer {
 public:
  explicit Timer(RunReport& r) : report_(r), start_(std::chrono::steady_clock::now()) {}

  void lap(const std::string& name) {
    const auto now = std::chrono::steady_clock::now();
    report_.timings_ms.emplace_back(name, std::chrono::duration<double, std::milli>(now - start_).count());
    start_ = now;
  }

 private:
  RunReport& report_;
  std::chrono::steady_clock::time_point start_;
};

/// Collects file contents and parameters for the inputs digest.
struct Inputs {
  std::string blob;

  json load(const std::string& path) {
    const std::string text = io::read_file(path);
    note(path, text);
    return io::parse_text(text, path);
  }

  void note(const std::string& key, const std::string& value) {
    blob += key;
    blob.push_back('\0');
    blob += value;
    blob.push_back('\0');
  }
};

inline IntMatrix parse_lambda(const std::string& text) {
  const json j = io::parse_text(text, "--lambda");
  if (j.is_number_integer()) return IntMatrix{{j.get<std::int64_t>()}};
  if (j.is_array() && !j.empty() && j[0].is_array()) return io::lambda_from_json(j, j.size(), "--lambda");
  if (j.is_array()) {
    const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(j.size()))));
    if (n == 0 || n * n != j.size()) throw Error(Errc::parse_error, "--lambda: entry count is not a square");
    return io::lambda_from_json(j, n, "--lambda");
  }
  throw Error(Errc::parse_error, "--lambda: expected an integer or a matrix");
}

inline std::size_t parse_grid(const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || v == 0 || text[0] == '-')
    throw Error(Errc::parse_error, "ELPBANK_GRID='" + text + "' is not a positive integer");
  return static_cast<std::size_t>(v);
}

inline mpq_class parse_rational(const std::string& text) {
  try {
    mpq_class v(text, 10);
    v.canonicalize();
    if (v.get_den() == 0) throw std::invalid_argument("zero denominator");
    return v;
  } catch (const std::invalid_argument&) {
    throw Error(Errc::parse_error, "'" + text + "' is not a rational number p/q");
  }
}

inline json scheme_summary(const DilationScheme& s) {
  return {{"dim", s.dim()}, {"q", s.q()}, {"gamma", s.gamma()}, {"dual_reps", s.dual_reps()}};
}

/// "tight" when dual == primal, "quasi-tight" when they agree up to per-filter signs.
inline std::string bank_kind(const BankPair& pair, std::vector<std::size_t>* flipped = nullptr) {
  if (!(pair.primal.lowpass() == pair.dual.lowpass()) || pair.primal.size() != pair.dual.size()) return "biorthogonal";
  bool tight = true;
  for (std::size_t i = 0; i < pair.primal.size(); ++i) {
    const Filter& a = pair.primal.highpass()[i];
    const Filter& b = pair.dual.highpass()[i];
    if (a == b) continue;
    if (!(a == -b)) return "biorthogonal";
    tight = false;
    if (flipped) flipped->push_back(i + 1);
  }
  return tight ? "tight" : "quasi-tight";
}

inline void add_banks(RunReport& r, const BankPair& pair) {
  r.banks.push_back(summarize("primal", pair.primal));
  r.banks.push_back(summarize("dual", pair.dual));
  std::vector<std::size_t> flipped;
  r.details["bank_kind"] = bank_kind(pair, &flipped);
  if (!flipped.empty()) r.details["sign_flipped_highpass"] = flipped;
}

inline void add_svp(RunReport& r, const Filter& h, const Filter& g, const SvpCertificate& cert) {
  const auto v = svp_verify(h, g, cert);
  r.verdict("svp", v.valid);
  r.details["generators"] = cert.size();
  if (!v.valid) r.details["svp_violation"] = v.describe();
  for (std::size_t j = 0; j < cert.size(); ++j)
    r.factored_residual.push_back("(" + cert.k[j].str() + ") * conj(" + cert.l[j].str() + ")");
}

inline void add_muep(RunReport& r, const BankPair& pair, const GlobalOptions& opt, bool grid) {
  const auto v = muep_verify_polyphase(pair);
  r.verdict("muep_exact", v.holds);
  if (!v.holds) {
    const auto& bad = v.dual_primal.holds ? v.primal_dual : v.dual_primal;
    r.details["muep_violation"] = {{"row", bad.row}, {"col", bad.col}, {"residual", bad.residual.str()}};
  }
  if (grid) {
    const std::size_t n = opt.grid_for(pair.primal.scheme().dim());
    const auto d = muep_verify_grid(pair, n, opt.parallel);
    r.measure("muep_grid_max_deviation", d.max_deviation, d.max_deviation < 1e-10);
    r.details["grid_points"] = n;
  }
}

template <class T>
void add_pr(RunReport& r, const BankPair& pair, const std::vector<Signal<T>>& signals) {
  bool all = true;
  double worst = 0.0;
  for (const auto& x : signals) {
    const auto res = pr_check(pair, x);
    all = all && res.ok();
    worst = std::max(worst, res.max_error);
  }
  r.details["pr_signals"] = signals.size();
  if constexpr (Signal<T>::exact) r.verdict("pr_exact", all);
  else r.measure("pr_max_error", worst, all);
}

inline std::vector<ExactSignal> random_signals(std::size_t dim, std::size_t count, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<ExactSignal> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_exact_signal(dim, 12, 6, rng));
  return out;
}

}  // namespace detail

/// Runs one command line (without the program name). Reports go to `out`, usage errors to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact design and verification of multidimensional wavelet filter banks", "elpbank"};
  app.require_subcommand(1);
  app.fallthrough(true);
  GlobalOptions opt;
  std::size_t grid_value = 0;
  app.add_flag("--json", opt.json, "Print the report as JSON");
  auto* grid_opt = app.add_option("--grid", grid_value, "Grid points per dimension (env: ELPBANK_GRID)")
                       ->check(CLI::PositiveNumber);
  app.add_flag("--parallel", opt.parallel, "Evaluate minors and grids on several threads");
  app.add_flag("--timings", opt.timings, "Include wall-clock timings in the report");

  // "-h" stays free for the --h filter option.
  app.set_help_flag("--help", "Print this help message and exit");
  auto command = [&app](const std::string& name, const std::string& about) {
    auto* sub = app.add_subcommand(name, about);
    sub->set_help_flag("--help", "Print this help message and exit");
    return sub;
  };

  RunReport report;
  detail::Inputs inputs;
  std::function<void()> action;

  // validate
  auto* validate = command("validate", "Validate a dilation matrix and/or input files");
  std::string lambda_text;
  std::vector<std::string> files;
  validate->add_option("--lambda", lambda_text, "Dilation matrix as JSON, e.g. [[1,1],[1,-1]]");
  validate->add_option("files", files, "JSON files to parse and validate");
  validate->callback([&] {
    action = [&] {
      if (lambda_text.empty() && files.empty()) throw Error(Errc::missing_parameter, "nothing to validate");
      if (!lambda_text.empty()) {
        inputs.note("lambda", lambda_text);
        report.details["scheme"] = detail::scheme_summary(validate_dilation(detail::parse_lambda(lambda_text)));
      }
      json checked = json::array();
      for (const auto& path : files) {
        const json j = inputs.load(path);
        json entry = {{"file", path}};
        if (j.contains("primal")) {
          const auto pair = io::bank_pair_from_json(j);
          entry["kind"] = "bank";
          entry["s"] = pair.primal.size();
        } else if (j.contains("taps")) {
          const auto f = io::filter_from_json(j);
          entry["kind"] = "filter";
          entry["class"] = std::string(to_string(classify_filter(f)));
        } else if (j.contains("samples")) {
          const auto x = io::signal_from_json(j);
          entry["kind"] = "signal";
          entry["mode"] = std::holds_alternative<ExactSignal>(x) ? "exact" : "numeric";
        } else if (j.contains("K")) {
          if (!j.contains("dim")) throw Error(Errc::missing_parameter, path + ": certificate needs 'dim'");
          const auto c = io::certificate_from_json(j, static_cast<std::size_t>(io::small_int(j["dim"], "dim")));
          entry["kind"] = "certificate";
          entry["generators"] = c.size();
        } else if (j.contains("lambda")) {
          entry["kind"] = "scheme";
          entry["q"] = io::scheme_from_json(j).q();
        } else {
          throw Error(Errc::parse_error, path + ": unrecognized file kind");
        }
        checked.push_back(entry);
      }
      if (!files.empty()) report.details["files"] = checked;
    };
  });

  // polyphase
  auto* polyphase = command("polyphase", "Polyphase components of a filter");
  std::string filter_path;
  polyphase->add_option("--filter", filter_path, "Filter JSON file")->required();
  polyphase->callback([&] {
    action = [&] {
      const Filter f = io::filter_from_json(inputs.load(filter_path));
      const auto pv = polyphase_decompose(f);
      json comps = json::array();
      for (std::size_t i = 0; i < pv.components.size(); ++i)
        comps.push_back({{"nu", f.scheme().gamma()[i]}, {"component", pv.components[i].str()}});
      report.details["class"] = std::string(to_string(classify_filter(f)));
      report.details["components"] = comps;
      report.verdict("polyphase_roundtrip", polyphase_reconstruct(pv) == f);
    };
  });

  // residual / svp-verify / synthesize share --h --g --cert
  std::string h_path, g_path, cert_path, out_path;
  auto load_hg = [&]() {
    Filter h = io::filter_from_json(inputs.load(h_path));
    Filter g = g_path.empty() ? h : io::filter_from_json(inputs.load(g_path));
    return std::pair{h, g};
  };
  auto load_cert = [&](std::size_t dim) { return io::certificate_from_json(inputs.load(cert_path), dim); };

  auto* residual = command("residual", "Residual 1 - H(z)G(z)^* of a lowpass pair");
  residual->add_option("--h", h_path, "Primal lowpass filter")->required();
  residual->add_option("--g", g_path, "Dual lowpass filter (default: h)");
  residual->add_option("--cert", cert_path, "SVP certificate, to show the residual as a factored sum");
  residual->callback([&] {
    action = [&] {
      const auto [h, g] = load_hg();
      report.details["residual"] = svp_residual(h, g).str();
      if (!cert_path.empty()) detail::add_svp(report, h, g, load_cert(h.dim()));
    };
  });

  auto* svp = command("svp-verify", "Check an SVP certificate exactly");
  svp->add_option("--h", h_path, "Primal lowpass filter")->required();
  svp->add_option("--g", g_path, "Dual lowpass filter (default: h)");
  svp->add_option("--cert", cert_path, "SVP certificate")->required();
  svp->callback([&] {
    action = [&] {
      const auto [h, g] = load_hg();
      const auto cert = load_cert(h.dim());
      detail::add_svp(report, h, g, cert);
      if (report.exact.back().second) report.verdict("core_identity", verify_core_identity(h, g, cert.k, cert.l).holds);
    };
  });

  auto* synth = command("synthesize", "Build a primal/dual bank pair from an SVP certificate");
  synth->add_option("--h", h_path, "Primal lowpass filter")->required();
  synth->add_option("--g", g_path, "Dual lowpass filter (default: h)");
  synth->add_option("--cert", cert_path, "SVP certificate")->required();
  synth->add_option("--out", out_path, "Write the bank pair here");
  synth->callback([&] {
    action = [&] {
      const auto [h, g] = load_hg();
      const auto cert = load_cert(h.dim());
      const auto pair = synthesize_bank(h, g, cert);
      report.verdict("svp", true);
      detail::add_muep(report, pair, opt, false);
      detail::add_banks(report, pair);
      if (!out_path.empty()) io::write_file(out_path, io::to_json(pair));
    };
  });

  // bank-based commands
  std::string bank_path, signal_path;
  auto load_bank = [&]() { return io::bank_pair_from_json(inputs.load(bank_path)); };

  auto* muep = command("muep-verify", "Check the MUEP identity exactly and on a frequency grid");
  muep->add_option("--bank", bank_path, "Bank pair JSON file")->required();
  muep->callback([&] {
    action = [&] {
      const auto pair = load_bank();
      detail::add_muep(report, pair, opt, true);
      detail::add_banks(report, pair);
    };
  });

  auto* extract = command("extract-svp", "Recover an SVP certificate from a MUEP bank pair");
  extract->add_option("--bank", bank_path, "Bank pair JSON file")->required();
  extract->add_option("--out", out_path, "Write the certificate here");
  extract->callback([&] {
    action = [&] {
      const auto pair = load_bank();
      const auto ex = extract_svp(pair, opt.parallel);
      report.verdict("muep_exact", true);
      report.verdict("svp", true);
      report.details["candidates"] = ex.candidates;
      report.details["dropped"] = ex.dropped;
      report.details["generators"] = ex.certificate.size();
      report.details["subsets"] = ex.subsets;
      if (!out_path.empty()) io::write_file(out_path, io::to_json(ex.certificate, pair.primal.scheme().dim()));
    };
  });

  auto* subqmf = command("sub-qmf", "Numeric check of 1 - |H|^2 >= 0 on a grid");
  subqmf->add_option("--h", h_path, "Lowpass filter")->required();
  subqmf->callback([&] {
    action = [&] {
      const Filter h = io::filter_from_json(inputs.load(h_path));
      const std::size_t n = opt.grid_for(h.dim());
      const auto res = sub_qmf_check(h, n, opt.parallel);
      report.measure("sub_qmf_min", res.min_value, res.passes);
      report.details["grid_points"] = n;
      report.details["argmin"] = res.argmin;
    };
  });

  std::string side = "primal";
  auto* apply = command("apply", "Analysis transform of a signal with one side of a bank pair");
  apply->add_option("--bank", bank_path, "Bank pair JSON file")->required();
  apply->add_option("--signal", signal_path, "Signal JSON file")->required();
  apply->add_option("--side", side, "primal or dual")->check(CLI::IsMember({"primal", "dual"}));
  apply->add_option("--out", out_path, "Write the coefficient signals here");
  apply->callback([&] {
    action = [&] {
      const auto pair = load_bank();
      const auto x = io::signal_from_json(inputs.load(signal_path));
      inputs.note("side", side);
      const FilterBank& bank = side == "dual" ? pair.dual : pair.primal;
      json coeffs = json::array();
      std::visit(
          [&](const auto& sig) {
            for (const auto& c : analyze(bank, sig)) coeffs.push_back(io::to_json(c));
          },
          x);
      report.details["side"] = side;
      report.details["channels"] = coeffs.size();
      const json payload = {{"side", side}, {"coefficients", coeffs}};
      if (!out_path.empty()) io::write_file(out_path, payload);
      else report.details["coefficients"] = coeffs;
    };
  });

  std::size_t random_count = 20;
  std::uint32_t seed = 1;
  auto* pr = command("pr-check", "Perfect reconstruction in both role orders");
  pr->add_option("--bank", bank_path, "Bank pair JSON file")->required();
  pr->add_option("--signal", signal_path, "Signal JSON file (default: random exact signals)");
  pr->add_option("--random", random_count, "Number of random signals when no --signal is given");
  pr->add_option("--seed", seed, "Seed for the random signals");
  pr->callback([&] {
    action = [&] {
      const auto pair = load_bank();
      const auto mv = muep_verify_polyphase(pair);
      report.verdict("muep_exact", mv.holds);
      if (!mv.holds) return;
      if (!signal_path.empty()) {
        std::visit([&](const auto& sig) { detail::add_pr(report, pair, std::vector{sig}); },
                   io::signal_from_json(inputs.load(signal_path)));
      } else {
        inputs.note("random", std::to_string(random_count) + "/" + std::to_string(seed));
        detail::add_pr(report, pair, detail::random_signals(pair.primal.scheme().dim(), random_count, seed));
      }
    };
  });

  // corpus
  std::string corpus_name, a_text, export_dir;
  bool want_synth = false, want_tight = false, want_muep = false, want_extract = false, want_pr = false;
  auto* corpus_cmd = command("corpus", "Run the built-in examples");
  corpus_cmd->add_option("name", corpus_name, "example1, example2, example3 or haar")->required();
  corpus_cmd->add_option("--a", a_text, "Rational parameter for example1, e.g. 1/4");
  corpus_cmd->add_flag("--synthesize", want_synth, "Synthesize the bank pair from the certificate");
  corpus_cmd->add_flag("--tight", want_tight, "Synthesize the tight bank from the sum-of-squares generators");
  corpus_cmd->add_flag("--muep-verify", want_muep, "Verify MUEP exactly and on the grid");
  corpus_cmd->add_flag("--extract", want_extract, "Extract a certificate back from the bank pair");
  corpus_cmd->add_flag("--pr-check", want_pr, "Perfect reconstruction on 20 random exact signals");
  corpus_cmd->add_option("--export", export_dir, "Write lowpass, certificate and bank files to this directory");
  corpus_cmd->callback([&] {
    action = [&] {
      inputs.note("corpus", corpus_name);
      std::optional<mpq_class> a;
      if (!a_text.empty()) {
        a = detail::parse_rational(a_text);
        inputs.note("a", a->get_str());
      }
      const CorpusEntry c = builtin(corpus_name, a);
      detail::Timer timer(report);
      report.details["entry"] = c.name;
      if (c.parameter) report.details["a"] = c.parameter->get_str();
      report.details["q"] = c.scheme.q();
      report.details["residual"] = svp_residual(c.lowpass, c.dual_lowpass).str();
      detail::add_svp(report, c.lowpass, c.dual_lowpass, c.certificate);
      report.verdict("core_identity",
                     verify_core_identity(c.lowpass, c.dual_lowpass, c.certificate.k, c.certificate.l).holds);
      timer.lap("svp");

      const bool need_bank = want_synth || want_muep || want_extract || want_pr || !export_dir.empty();
      std::optional<BankPair> pair;
      if (need_bank) {
        pair = synthesize_bank(c.lowpass, c.dual_lowpass, c.certificate);
        detail::add_muep(report, *pair, opt, want_muep);
        detail::add_banks(report, *pair);
        report.verdict("bank_size", pair->primal.size() == c.expected.highpass);
        if (!c.expected.generator_taps.empty()) {
          bool taps_ok = true;
          for (std::size_t j = 0; j < c.expected.generator_taps.size(); ++j)
            taps_ok = taps_ok && pair->primal.highpass()[j].nonzero_taps() == c.expected.generator_taps[j];
          report.verdict("tap_counts", taps_ok);
        }
        timer.lap("synthesize");
      }
      if (want_tight) {
        if (!c.expected.tight_highpass)
          throw Error(Errc::missing_parameter, c.name + " has no sum-of-squares generators");
        const auto tight = sos_synthesize(c.lowpass, c.sos_generators);
        report.verdict("sos_identity", true);
        const auto mv = muep_verify_polyphase(tight);
        report.verdict("uep_exact", mv.holds);
        const auto ts = summarize("tight", tight.primal);
        report.banks.push_back(ts);
        if (c.expected.tight_highpass) report.verdict("tight_bank_size", ts.s == *c.expected.tight_highpass);
        if (c.expected.sos_filter_taps && !tight.primal.highpass().empty())
          report.verdict("sos_filter_taps", tight.primal.highpass()[0].nonzero_taps() == *c.expected.sos_filter_taps);
        timer.lap("tight");
      }
      if (want_extract) {
        const auto ex = extract_svp(*pair, opt.parallel);
        report.details["extraction"] = {{"candidates", ex.candidates},
                                        {"dropped", ex.dropped},
                                        {"generators", ex.certificate.size()}};
        const auto again = synthesize_bank(c.lowpass, c.dual_lowpass, ex.certificate);
        report.verdict("extraction_resynthesis_muep", muep_verify_polyphase(again).holds);
        timer.lap("extract");
      }
      if (want_pr) {
        detail::add_pr(report, *pair, detail::random_signals(c.scheme.dim(), 20, 1));
        timer.lap("pr");
      }
      if (!export_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(export_dir);
        const fs::path base = fs::path(export_dir) / c.name;
        io::write_file(base.string() + "_lowpass.json", io::to_json(c.lowpass));
        io::write_file(base.string() + "_dual_lowpass.json", io::to_json(c.dual_lowpass));
        io::write_file(base.string() + "_cert.json", io::to_json(c.certificate, c.scheme.dim()));
        io::write_file(base.string() + "_bank.json", io::to_json(*pair));
        report.details["exported"] = export_dir;
      }
    };
  });

  std::vector<std::string> argv_store{"elpbank"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  for (const auto* sub : app.get_subcommands()) report.command = sub->get_name();
  report.with_timings = opt.timings;
  inputs.note("command", report.command);
  detail::Timer total(report);
  try {
    if (grid_opt->count() > 0) {
      opt.grid = grid_value;
    } else if (const char* env = std::getenv("ELPBANK_GRID")) {
      opt.grid = detail::parse_grid(env);
    }
    if (opt.grid) inputs.note("grid", std::to_string(*opt.grid));
    action();
  } catch (const Error& e) {
    if (detail::is_verdict_error(e.code())) {
      report.verdict(std::string(errc_name(e.code())), false);
      report.details["error"] = e.what();
    } else {
      report.input_error = e.what();
    }
  } catch (const nlohmann::json::exception& e) {
    report.input_error = std::string("ParseError: ") + e.what();
  } catch (const std::invalid_argument& e) {
    report.input_error = std::string("ParseError: ") + e.what();
  } catch (const std::out_of_range& e) {
    report.input_error = std::string("Overflow: ") + e.what();
  }
  total.lap("total");
  report.inputs_digest = fnv1a_hex(inputs.blob);
  out << render_report(report, opt.json ? ReportFormat::Json : ReportFormat::Table);
  return report.exit_code();
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

}  // namespace elpbank::cli
