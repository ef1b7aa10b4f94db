// Spins, halo parts, spectra, and special-part detection.
//
// The spin phi_ij = phi_i phi_j^-1 (i != j) collects into parts Phi_i by
// first index. The spectrum Sp(Phi_i) is the multiset of cycle types over a
// part; it is invariant under isotopy, so a part whose spectrum is unique
// among all n parts ("special") must be fixed by the gamma component of
// every autotopism.

#pragma once

#include <algorithm>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qf/perm.hpp"
#include "qf/quasigroup.hpp"

namespace qf {

// Lazy per-pair cache of spins over a fixed quasigroup. Entries are filled
// idempotently under std::call_once, so concurrent readers are safe.
class SpinTable {
 public:
  explicit SpinTable(const Quasigroup& q)
      : tracks_(tracks(q)),
        cache_(static_cast<std::size_t>(tracks_.degree()) * static_cast<std::size_t>(tracks_.degree())),
        filled_(cache_.size()) {
    inverses_.reserve(static_cast<std::size_t>(degree()));
    for (int j = 1; j <= degree(); ++j) inverses_.push_back(tracks_.of(j).inverse());
  }

  SpinTable(const SpinTable&) = delete;
  SpinTable& operator=(const SpinTable&) = delete;

  int degree() const { return tracks_.degree(); }
  const TrackSet& track_set() const { return tracks_; }

  // phi_i phi_j^-1; the trivial spin i == j is excluded by contract.
  const Permutation& spin(int i, int j) const {
    if (i == j) throw std::invalid_argument("spin: trivial spin i == j excluded");
    if (i < 1 || i > degree() || j < 1 || j > degree()) throw std::out_of_range("spin: label out of range");
    const std::size_t k = static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(degree()) + static_cast<std::size_t>(j - 1);
    std::call_once(filled_[k], [&] {
      cache_[k] = compose(tracks_.of(i), inverses_[static_cast<std::size_t>(j - 1)]);
    });
    return *cache_[k];
  }

 private:
  TrackSet tracks_;
  std::vector<Permutation> inverses_;
  mutable std::vector<std::optional<Permutation>> cache_;
  mutable std::vector<std::once_flag> filled_;
};

inline Permutation spin(const Quasigroup& q, int i, int j) {
  if (i == j) throw std::invalid_argument("spin: trivial spin i == j excluded");
  const TrackSet ts = tracks(q);
  return compose(ts.of(i), ts.of(j).inverse());
}

// Multiset of the n-1 cycle types of part Phi_i, kept sorted descending
// (the order the letter coding scans, and the order the types print in).
struct PartSpectrum {
  int part = 0;
  std::vector<CycleType> types;

  friend bool operator==(const PartSpectrum& a, const PartSpectrum& b) { return a.types == b.types; }
};

inline PartSpectrum part_spectrum(const SpinTable& st, int i) {
  PartSpectrum ps;
  ps.part = i;
  for (int j = 1; j <= st.degree(); ++j) {
    if (j == i) continue;
    ps.types.push_back(cycle_type(st.spin(i, j)));
  }
  std::sort(ps.types.begin(), ps.types.end(), [](const CycleType& a, const CycleType& b) { return b < a; });
  return ps;
}

inline PartSpectrum part_spectrum(const Quasigroup& q, int i) {
  SpinTable st(q);
  return part_spectrum(st, i);
}

// All part spectra plus the letter coding: distinct cycle types get letters
// A, B, ... by first appearance scanning parts 1..n (types within a part in
// descending order). Purely presentational; equality always compares the
// type multisets themselves.
struct SpinReport {
  int degree = 0;
  std::vector<PartSpectrum> parts;
  std::vector<CycleType> letter_types;  // letter k <-> letter_types[k]
  std::vector<bool> special;

  static std::string letter_name(std::size_t k) {
    std::string s;
    do {
      s.insert(s.begin(), static_cast<char>('A' + k % 26));
      k = k / 26;
    } while (k-- > 0);
    return s;
  }

  // e.g. "A+2C+3D"; empty spectrum (order 1) renders as "".
  std::string letters(int i) const {
    const auto& sp = parts[static_cast<std::size_t>(i - 1)];
    std::vector<int> count(letter_types.size(), 0);
    for (const auto& t : sp.types) {
      const auto it = std::find(letter_types.begin(), letter_types.end(), t);
      ++count[static_cast<std::size_t>(it - letter_types.begin())];
    }
    std::string s;
    for (std::size_t k = 0; k < count.size(); ++k) {
      if (count[k] == 0) continue;
      if (!s.empty()) s += '+';
      if (count[k] > 1) s += std::to_string(count[k]);
      s += letter_name(k);
    }
    return s;
  }

  std::vector<int> special_parts() const {
    std::vector<int> out;
    for (int i = 1; i <= degree; ++i)
      if (special[static_cast<std::size_t>(i - 1)]) out.push_back(i);
    return out;
  }
};

inline SpinReport spin_report(const Quasigroup& q) {
  SpinTable st(q);
  SpinReport rep;
  rep.degree = st.degree();
  for (int i = 1; i <= st.degree(); ++i) rep.parts.push_back(part_spectrum(st, i));
  for (const auto& ps : rep.parts)
    for (const auto& t : ps.types)
      if (std::find(rep.letter_types.begin(), rep.letter_types.end(), t) == rep.letter_types.end())
        rep.letter_types.push_back(t);
  rep.special.resize(static_cast<std::size_t>(st.degree()));
  for (int i = 1; i <= st.degree(); ++i) {
    int count = 0;
    for (const auto& other : rep.parts)
      if (other == rep.parts[static_cast<std::size_t>(i - 1)]) ++count;
    rep.special[static_cast<std::size_t>(i - 1)] = count == 1;
  }
  return rep;
}

// Part indices whose spectrum multiset is unique among all n parts.
inline std::vector<int> special_parts(const Quasigroup& q) { return spin_report(q).special_parts(); }

}  // namespace qf
