// Full analysis of one table: tracks, spins, rigidity, super-rigidity,
// optional brute-force cross-checks, timings. Renders to JSON (schema-stable,
// sorted keys and lists) and to human-readable text using dot cycle notation.

#pragma once

#include <chrono>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qf/perm.hpp"
#include "qf/quasigroup.hpp"
#include "qf/rigidity.hpp"
#include "qf/spins.hpp"

namespace qf {

struct AnalysisOptions {
  bool run_autotopisms = true;
  bool run_oracles = false;
  int automorphism_oracle_max = kAutomorphismOracleDefaultMax;
  int autotopism_oracle_max = kAutotopismOracleDefaultMax;
};

struct OracleOutcome {
  bool ran = false;     // false when the order is above the oracle limit
  bool agreed = true;
};

struct AnalysisReport {
  int order = 0;
  TrackSet track_set;
  std::vector<CycleType> types;
  std::vector<int> special_track_labels;
  SpinReport spins;
  std::vector<Permutation> automorphism_list;
  bool rigid = false;
  std::optional<std::uint64_t> autotopism_count;
  std::optional<bool> super_rigid;
  double tracks_ms = 0, spins_ms = 0, automorphisms_ms = 0;
  std::optional<double> autotopisms_ms;
  OracleOutcome automorphism_oracle, autotopism_oracle;

  bool oracles_agree() const { return automorphism_oracle.agreed && autotopism_oracle.agreed; }
};

inline AnalysisReport analyze(const Quasigroup& q, const AnalysisOptions& opt = {}) {
  using clock = std::chrono::steady_clock;
  auto ms_since = [](clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  };

  AnalysisReport rep;
  rep.order = q.order();

  auto t0 = clock::now();
  rep.track_set = tracks(q);
  rep.types = track_types(q);
  rep.special_track_labels = special_tracks(q);
  rep.tracks_ms = ms_since(t0);

  t0 = clock::now();
  rep.spins = spin_report(q);
  rep.spins_ms = ms_since(t0);

  t0 = clock::now();
  rep.automorphism_list = automorphisms(q);
  rep.rigid = rep.automorphism_list.size() == 1;
  rep.automorphisms_ms = ms_since(t0);

  std::vector<Isotopy> atp;
  if (opt.run_autotopisms) {
    t0 = clock::now();
    atp = autotopisms(q);
    rep.autotopism_count = atp.size();
    rep.super_rigid = atp.size() == 1;
    rep.autotopisms_ms = ms_since(t0);
  }

  if (opt.run_oracles) {
    if (q.order() <= opt.automorphism_oracle_max) {
      rep.automorphism_oracle.ran = true;
      rep.automorphism_oracle.agreed = automorphisms_bruteforce(q, opt.automorphism_oracle_max) == rep.automorphism_list;
    }
    if (opt.run_autotopisms && q.order() <= opt.autotopism_oracle_max) {
      rep.autotopism_oracle.ran = true;
      rep.autotopism_oracle.agreed = autotopisms_bruteforce(q, opt.autotopism_oracle_max) == atp;
    }
  }
  return rep;
}

inline nlohmann::json to_json(const CycleType& t) { return nlohmann::json(t.lengths); }

inline nlohmann::json report_json(const AnalysisReport& rep) {
  nlohmann::json j;
  j["order"] = rep.order;
  auto& tr = j["tracks"] = nlohmann::json::array();
  for (int i = 1; i <= rep.order; ++i) {
    tr.push_back({{"index", i},
                  {"cycles", format_cycles(rep.track_set.of(i))},
                  {"type", to_json(rep.types[static_cast<std::size_t>(i - 1)])}});
  }
  j["special_tracks"] = rep.special_track_labels;
  auto& sp = j["spin_parts"] = nlohmann::json::array();
  for (int i = 1; i <= rep.order; ++i) {
    nlohmann::json spectrum = nlohmann::json::array();
    for (const auto& t : rep.spins.parts[static_cast<std::size_t>(i - 1)].types) spectrum.push_back(to_json(t));
    sp.push_back({{"index", i},
                  {"spectrum", spectrum},
                  {"letters", rep.spins.letters(i)},
                  {"special", static_cast<bool>(rep.spins.special[static_cast<std::size_t>(i - 1)])}});
  }
  auto& aut = j["automorphisms"] = nlohmann::json::array();
  for (const auto& a : rep.automorphism_list) aut.push_back(format_cycles(a));
  j["rigid"] = rep.rigid;
  j["autotopism_count"] = rep.autotopism_count ? nlohmann::json(*rep.autotopism_count) : nlohmann::json(nullptr);
  j["super_rigid"] = rep.super_rigid ? nlohmann::json(*rep.super_rigid) : nlohmann::json(nullptr);
  j["timings"] = {{"tracks_ms", rep.tracks_ms},
                  {"spins_ms", rep.spins_ms},
                  {"automorphisms_ms", rep.automorphisms_ms},
                  {"autotopisms_ms", rep.autotopisms_ms ? nlohmann::json(*rep.autotopisms_ms) : nlohmann::json(nullptr)}};
  return j;
}

inline void print_report(std::ostream& out, const AnalysisReport& rep) {
  out << "order: " << rep.order << '\n';
  out << "tracks:\n";
  for (int i = 1; i <= rep.order; ++i)
    out << "  phi_" << i << " = " << format_cycles(rep.track_set.of(i)) << "  Z="
        << to_string(rep.types[static_cast<std::size_t>(i - 1)]) << '\n';
  out << "special tracks:";
  if (rep.special_track_labels.empty()) out << " none";
  for (int k : rep.special_track_labels) out << ' ' << k;
  out << '\n';
  out << "spin letters:\n";
  for (std::size_t k = 0; k < rep.spins.letter_types.size(); ++k)
    out << "  " << SpinReport::letter_name(k) << " = " << to_string(rep.spins.letter_types[k]) << '\n';
  out << "spin parts:\n";
  for (int i = 1; i <= rep.order; ++i) {
    out << "  Sp(Phi_" << i << ") = " << rep.spins.letters(i);
    if (rep.spins.special[static_cast<std::size_t>(i - 1)]) out << "  (special)";
    out << '\n';
  }
  out << "special parts:";
  const auto special = rep.spins.special_parts();
  if (special.empty()) out << " none";
  for (int k : special) out << ' ' << k;
  out << '\n';
  out << "automorphisms (" << rep.automorphism_list.size() << "):\n";
  for (const auto& a : rep.automorphism_list) out << "  " << format_cycles(a) << '\n';
  out << "rigid: " << (rep.rigid ? "yes" : "no") << '\n';
  if (rep.autotopism_count) {
    out << "autotopisms: " << *rep.autotopism_count << '\n';
    out << "super rigid: " << (*rep.super_rigid ? "yes" : "no") << '\n';
  } else {
    out << "autotopisms: skipped\n";
  }
  if (rep.automorphism_oracle.ran || rep.autotopism_oracle.ran) {
    out << "oracle:";
    if (rep.automorphism_oracle.ran)
      out << " automorphisms " << (rep.automorphism_oracle.agreed ? "agree" : "DISAGREE");
    if (rep.autotopism_oracle.ran)
      out << (rep.automorphism_oracle.ran ? "," : "") << " autotopisms "
          << (rep.autotopism_oracle.agreed ? "agree" : "DISAGREE");
    out << '\n';
  }
  out << "timings: tracks " << rep.tracks_ms << " ms, spins " << rep.spins_ms << " ms, automorphisms "
      << rep.automorphisms_ms << " ms";
  if (rep.autotopisms_ms) out << ", autotopisms " << *rep.autotopisms_ms << " ms";
  out << '\n';
}

}  // namespace qf
