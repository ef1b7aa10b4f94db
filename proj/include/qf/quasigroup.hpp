// Validated Cayley tables, divisions, tracks, duals, and isotopy application.
//
// A quasigroup of order n is an n x n Latin square over {1..n}; entry (x,y)
// is the product x*y with row = left factor. The track of element i is the
// permutation phi_i with x * phi_i(x) = i for every x.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qf/perm.hpp"

namespace qf {

// Latin-property or range violation; row/col are 1-based (0 = not applicable).
class TableError : public std::runtime_error {
 public:
  TableError(std::string msg, int row, int col)
      : std::runtime_error(std::move(msg)), row_(row), col_(col) {}
  int row() const { return row_; }
  int col() const { return col_; }

 private:
  int row_, col_;
};

class Quasigroup {
 public:
  static Quasigroup from_rows(const std::vector<std::vector<int>>& rows) {
    const int n = static_cast<int>(rows.size());
    if (n < 1) throw TableError("empty table", 0, 0);
    std::vector<int> cells;
    cells.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int r = 1; r <= n; ++r) {
      if (static_cast<int>(rows[static_cast<std::size_t>(r - 1)].size()) != n)
        throw TableError("table is not square: row " + std::to_string(r) + " has " +
                             std::to_string(rows[static_cast<std::size_t>(r - 1)].size()) +
                             " entries, expected " + std::to_string(n),
                         r, 0);
      for (int c = 1; c <= n; ++c) {
        const int v = rows[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(c - 1)];
        if (v < 1 || v > n)
          throw TableError("entry " + std::to_string(v) + " out of range 1.." + std::to_string(n) +
                               " at row " + std::to_string(r) + ", col " + std::to_string(c),
                           r, c);
        cells.push_back(v);
      }
    }
    return Quasigroup(n, std::move(cells));
  }

  int order() const { return n_; }

  // x*y
  int at(int x, int y) const {
    check_label(x);
    check_label(y);
    return table_[idx(x, y)];
  }

  // the unique x with x*y = a
  int left_divide(int a, int y) const {
    check_label(a);
    check_label(y);
    return left_div_[idx(a, y)];
  }

  // the unique y with x*y = a
  int right_divide(int x, int a) const {
    check_label(x);
    check_label(a);
    return right_div_[idx(x, a)];
  }

  const std::vector<int>& cells() const { return table_; }

  friend bool operator==(const Quasigroup& a, const Quasigroup& b) {
    return a.n_ == b.n_ && a.table_ == b.table_;
  }

 private:
  Quasigroup(int n, std::vector<int> cells) : n_(n), table_(std::move(cells)) {
    left_div_.assign(table_.size(), 0);
    right_div_.assign(table_.size(), 0);
    for (int x = 1; x <= n_; ++x)
      for (int y = 1; y <= n_; ++y) {
        const int v = table_[idx(x, y)];
        auto& rd = right_div_[idx(x, v)];
        if (rd != 0)
          throw TableError("row " + std::to_string(x) + " repeats " + std::to_string(v) +
                               " at col " + std::to_string(rd) + " and col " + std::to_string(y),
                           x, y);
        rd = y;
        auto& ld = left_div_[idx(v, y)];
        if (ld != 0)
          throw TableError("column " + std::to_string(y) + " repeats " + std::to_string(v) +
                               " at row " + std::to_string(ld) + " and row " + std::to_string(x),
                           x, y);
        ld = x;
      }
  }

  std::size_t idx(int a, int b) const {
    return static_cast<std::size_t>(a - 1) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(b - 1);
  }
  void check_label(int v) const {
    if (v < 1 || v > n_) throw std::out_of_range("label " + std::to_string(v) + " out of range 1.." + std::to_string(n_));
  }

  int n_;
  std::vector<int> table_;
  std::vector<int> left_div_;   // (a,y) -> x with x*y = a
  std::vector<int> right_div_;  // (x,a) -> y with x*y = a

  friend class SpinTable;
};

// phi_1 .. phi_n indexed by target element.
struct TrackSet {
  std::vector<Permutation> by_target;

  int degree() const { return static_cast<int>(by_target.size()); }
  const Permutation& of(int i) const { return by_target[static_cast<std::size_t>(i - 1)]; }
};

inline TrackSet tracks(const Quasigroup& q) {
  const int n = q.order();
  TrackSet ts;
  ts.by_target.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    std::vector<int> img(static_cast<std::size_t>(n));
    for (int x = 1; x <= n; ++x) img[static_cast<std::size_t>(x - 1)] = q.right_divide(x, i);
    ts.by_target.push_back(Permutation(std::move(img), Permutation::Unchecked{}));
  }
  return ts;
}

// Inverse of tracks(): rebuilds the unique table with the given track set.
// Requires i -> phi_i(x) injective for every x; the violation is reported
// with the witness row and the two colliding track indices.
inline Quasigroup from_tracks(const TrackSet& ts) {
  const int n = ts.degree();
  if (n < 1) throw TableError("empty track set", 0, 0);
  for (int i = 1; i <= n; ++i)
    if (ts.of(i).degree() != n)
      throw TableError("track " + std::to_string(i) + " has degree " + std::to_string(ts.of(i).degree()) +
                           ", expected " + std::to_string(n),
                       0, i);
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int x = 1; x <= n; ++x) {
    std::vector<int> placed_by(static_cast<std::size_t>(n), 0);  // column -> track index that claimed it
    for (int i = 1; i <= n; ++i) {
      const int col = ts.of(i)(x);
      auto& claim = placed_by[static_cast<std::size_t>(col - 1)];
      if (claim != 0)
        throw TableError("tracks " + std::to_string(claim) + " and " + std::to_string(i) +
                             " collide at row " + std::to_string(x) + " (no Latin square has this track set)",
                         x, col);
      claim = i;
      rows[static_cast<std::size_t>(x - 1)][static_cast<std::size_t>(col - 1)] = i;
    }
  }
  return Quasigroup::from_rows(rows);
}

// x*y = y.x; the tracks of the dual are the inverses of the tracks.
inline Quasigroup dual(const Quasigroup& q) {
  const int n = q.order();
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y) rows[static_cast<std::size_t>(x - 1)][static_cast<std::size_t>(y - 1)] = q.at(y, x);
  return Quasigroup::from_rows(rows);
}

// Ordered triple (alpha, beta, gamma) of equal degree. An autotopism of Q is
// an isotopy with gamma(x*y) = alpha(x)*beta(y); an automorphism is the case
// alpha = beta = gamma.
struct Isotopy {
  Permutation alpha, beta, gamma;

  static Isotopy identity(int degree) {
    return {Permutation::identity(degree), Permutation::identity(degree), Permutation::identity(degree)};
  }

  int degree() const { return alpha.degree(); }
  bool is_identity() const { return alpha.is_identity() && beta.is_identity() && gamma.is_identity(); }

  friend bool operator==(const Isotopy&, const Isotopy&) = default;
  // Ordered by (gamma, beta, alpha) image sequences.
  friend auto operator<=>(const Isotopy& a, const Isotopy& b) {
    if (auto c = a.gamma <=> b.gamma; c != 0) return c;
    if (auto c = a.beta <=> b.beta; c != 0) return c;
    return a.alpha <=> b.alpha;
  }
};

// The isotope with x o y = gamma^-1(alpha(x) * beta(y)).
inline Quasigroup apply_isotopy(const Quasigroup& q, const Isotopy& t) {
  const int n = q.order();
  if (t.alpha.degree() != n || t.beta.degree() != n || t.gamma.degree() != n)
    throw std::invalid_argument("apply_isotopy: degree mismatch");
  const Permutation ginv = t.gamma.inverse();
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y)
      rows[static_cast<std::size_t>(x - 1)][static_cast<std::size_t>(y - 1)] = ginv(q.at(t.alpha(x), t.beta(y)));
  return Quasigroup::from_rows(rows);
}

inline std::vector<CycleType> track_types(const Quasigroup& q) {
  std::vector<CycleType> out;
  const TrackSet ts = tracks(q);
  out.reserve(static_cast<std::size_t>(q.order()));
  for (int i = 1; i <= q.order(); ++i) out.push_back(cycle_type(ts.of(i)));
  return out;
}

// Labels k whose track cycle type occurs exactly once among all n tracks.
inline std::vector<int> special_tracks(const Quasigroup& q) {
  const auto types = track_types(q);
  std::vector<int> out;
  for (int k = 1; k <= q.order(); ++k) {
    int count = 0;
    for (const auto& t : types)
      if (t == types[static_cast<std::size_t>(k - 1)]) ++count;
    if (count == 1) out.push_back(k);
  }
  return out;
}

// The constant a with x*x = a for all x, if one exists. Equivalent to
// phi_a being the identity track.
inline std::optional<int> is_unipotent(const Quasigroup& q) {
  const int a = q.at(1, 1);
  for (int x = 2; x <= q.order(); ++x)
    if (q.at(x, x) != a) return std::nullopt;
  return a;
}

inline bool is_idempotent(const Quasigroup& q) {
  for (int x = 1; x <= q.order(); ++x)
    if (q.at(x, x) != x) return false;
  return true;
}

// The two-sided identity element, if one exists.
inline std::optional<int> loop_identity(const Quasigroup& q) {
  for (int e = 1; e <= q.order(); ++e) {
    bool ok = true;
    for (int x = 1; x <= q.order() && ok; ++x) ok = q.at(e, x) == x && q.at(x, e) == x;
    if (ok) return e;
  }
  return std::nullopt;
}

inline bool is_loop(const Quasigroup& q) { return loop_identity(q).has_value(); }

}  // namespace qf
