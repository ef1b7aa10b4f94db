// qf - finite quasigroup rigidity analyzer.
//
// Subcommands take a table file (see fixtures/ for the format) and print
// tracks, spin spectra, automorphisms, autotopisms, duals, isotopes, or a
// full report; `scan` runs the exhaustive census of a small order.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 validation error
// (malformed file or non-Latin table), 3 oracle disagreement.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "qf/perm.hpp"
#include "qf/quasigroup.hpp"
#include "qf/report.hpp"
#include "qf/rigidity.hpp"
#include "qf/spins.hpp"
#include "qf/table_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitOracleMismatch = 3;

std::optional<int> oracle_limit_override() {
  const char* env = std::getenv("QF_ORACLE_LIMIT");
  if (env == nullptr || *env == '\0') return std::nullopt;
  try {
    return std::stoi(env);
  } catch (const std::exception&) {
    throw qf::IoError(std::string("QF_ORACLE_LIMIT is not an integer: ") + env);
  }
}

void write_output(const std::string& out_path, const qf::Quasigroup& q) {
  if (out_path.empty())
    qf::write_table(std::cout, q);
  else
    qf::write_table_file(out_path, q);
}

int run(int argc, char** argv) {
  CLI::App app{"finite quasigroup rigidity analyzer"};
  app.require_subcommand(1);

  std::string path, out_path;
  std::string alpha_str, beta_str, gamma_str;
  bool json = false, no_atp = false, oracle = false;
  bool list_rigid = false, list_super = false, count_only = false;
  int scan_n = 0, jobs = 1;

  auto* analyze = app.add_subcommand("analyze", "full report for a table file");
  analyze->add_option("file", path)->required();
  analyze->add_flag("--json", json, "emit the JSON report");
  analyze->add_flag("--no-atp", no_atp, "skip the autotopism search");
  analyze->add_flag("--oracle", oracle, "cross-check against brute-force oracles");

  auto* tracks_cmd = app.add_subcommand("tracks", "print the tracks, one cycle string per line");
  tracks_cmd->add_option("file", path)->required();

  auto* spins_cmd = app.add_subcommand("spins", "print the spin spectra report");
  spins_cmd->add_option("file", path)->required();
  spins_cmd->add_flag("--json", json, "emit the spin_parts JSON");

  auto* aut_cmd = app.add_subcommand("aut", "print the automorphisms, one cycle string per line");
  aut_cmd->add_option("file", path)->required();

  auto* atp_cmd = app.add_subcommand("atp", "print the autotopisms, one 'alpha beta gamma' line each");
  atp_cmd->add_option("file", path)->required();

  auto* dual_cmd = app.add_subcommand("dual", "write the dual table");
  dual_cmd->add_option("file", path)->required();
  dual_cmd->add_option("-o,--out", out_path, "output file (default stdout)");

  auto* isotope_cmd = app.add_subcommand("isotope", "write the isotope gamma^-1(alpha(x)*beta(y))");
  isotope_cmd->add_option("file", path)->required();
  isotope_cmd->add_option("alpha", alpha_str, "cycle string, e.g. \"(12.3.)\"")->required();
  isotope_cmd->add_option("beta", beta_str)->required();
  isotope_cmd->add_option("gamma", gamma_str)->required();
  isotope_cmd->add_option("-o,--out", out_path, "output file (default stdout)");

  auto* scan_cmd = app.add_subcommand("scan", "exhaustive census of one order (max 5)");
  scan_cmd->add_option("order", scan_n)->required();
  scan_cmd->add_flag("--rigid", list_rigid, "list every rigid square");
  scan_cmd->add_flag("--super-rigid", list_super, "list every super rigid square");
  scan_cmd->add_flag("--count-only", count_only, "suppress listings");
  scan_cmd->add_option("--jobs", jobs, "worker threads (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (scan_cmd->parsed()) {
    if (scan_n > qf::kLatinEnumerationMax) {
      std::cerr << "scan: order " << scan_n << " not supported; order "
                << qf::kLatinEnumerationMax + 1
                << " already has ~8.1e8 Latin squares, far beyond this census. Max is "
                << qf::kLatinEnumerationMax << ".\n";
      return kExitUsage;
    }
    if (scan_n < 1) {
      std::cerr << "scan: order must be >= 1\n";
      return kExitUsage;
    }
    qf::ScanOptions opt;
    opt.collect_rigid = list_rigid && !count_only;
    opt.collect_super_rigid = list_super && !count_only;
    opt.jobs = jobs == 0 ? static_cast<int>(std::thread::hardware_concurrency()) : jobs;
    const qf::ScanResult res = qf::scan_order(scan_n, opt);
    for (const auto& q : res.rigid_squares) {
      std::cout << "# rigid\n";
      qf::write_table(std::cout, q);
      std::cout << '\n';
    }
    for (const auto& q : res.super_rigid_squares) {
      std::cout << "# super rigid\n";
      qf::write_table(std::cout, q);
      std::cout << '\n';
    }
    std::cout << "total=" << res.total << " rigid=" << res.rigid << " super_rigid=" << res.super_rigid << '\n';
    return kExitOk;
  }

  const qf::Quasigroup q = qf::read_table_file(path);

  if (analyze->parsed()) {
    qf::AnalysisOptions opt;
    opt.run_autotopisms = !no_atp;
    opt.run_oracles = oracle;
    if (const auto lim = oracle_limit_override()) {
      opt.automorphism_oracle_max = *lim;
      opt.autotopism_oracle_max = *lim;
    }
    const qf::AnalysisReport rep = qf::analyze(q, opt);
    if (json)
      std::cout << qf::report_json(rep).dump(2) << '\n';
    else
      qf::print_report(std::cout, rep);
    if (oracle && !rep.oracles_agree()) {
      std::cerr << "oracle disagreement\n";
      return kExitOracleMismatch;
    }
    return kExitOk;
  }
  if (tracks_cmd->parsed()) {
    const qf::TrackSet ts = qf::tracks(q);
    for (int i = 1; i <= q.order(); ++i) std::cout << qf::format_cycles(ts.of(i)) << '\n';
    return kExitOk;
  }
  if (spins_cmd->parsed()) {
    const qf::SpinReport rep = qf::spin_report(q);
    if (json) {
      nlohmann::json parts = nlohmann::json::array();
      for (int i = 1; i <= q.order(); ++i) {
        nlohmann::json spectrum = nlohmann::json::array();
        for (const auto& t : rep.parts[static_cast<std::size_t>(i - 1)].types) spectrum.push_back(t.lengths);
        parts.push_back({{"index", i},
                         {"spectrum", spectrum},
                         {"letters", rep.letters(i)},
                         {"special", static_cast<bool>(rep.special[static_cast<std::size_t>(i - 1)])}});
      }
      std::cout << parts.dump(2) << '\n';
    } else {
      for (std::size_t k = 0; k < rep.letter_types.size(); ++k)
        std::cout << qf::SpinReport::letter_name(k) << " = " << qf::to_string(rep.letter_types[k]) << '\n';
      for (int i = 1; i <= q.order(); ++i) {
        std::cout << "Sp(Phi_" << i << ") = " << rep.letters(i);
        if (rep.special[static_cast<std::size_t>(i - 1)]) std::cout << "  (special)";
        std::cout << '\n';
      }
    }
    return kExitOk;
  }
  if (aut_cmd->parsed()) {
    for (const auto& a : qf::automorphisms(q)) std::cout << qf::format_cycles(a) << '\n';
    return kExitOk;
  }
  if (atp_cmd->parsed()) {
    for (const auto& t : qf::autotopisms(q))
      std::cout << qf::format_cycles(t.alpha) << ' ' << qf::format_cycles(t.beta) << ' '
                << qf::format_cycles(t.gamma) << '\n';
    return kExitOk;
  }
  if (dual_cmd->parsed()) {
    write_output(out_path, qf::dual(q));
    return kExitOk;
  }
  if (isotope_cmd->parsed()) {
    const qf::Isotopy t{qf::parse_cycles(alpha_str, q.order()), qf::parse_cycles(beta_str, q.order()),
                        qf::parse_cycles(gamma_str, q.order())};
    write_output(out_path, qf::apply_isotopy(q, t));
    return kExitOk;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const qf::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const qf::TableError& e) {
    std::cerr << "invalid table: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const qf::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
