// Rigidity and super-rigidity decisions.
//
// The pruned automorphism search pins special-track labels, restricts every
// image to its track cycle-type class, and propagates both the homomorphism
// law and commutation with special tracks while backtracking. The pruned
// autotopism search enumerates gamma over permutations preserving the
// part-spectrum partition (special parts are forced fixed), intersects
// conjugator sets of spin pairs to pin beta, derives alpha by division, and
// verifies the full law. Independent brute-force oracles cross-check both.

#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "qf/perm.hpp"
#include "qf/quasigroup.hpp"
#include "qf/spins.hpp"

namespace qf {

inline constexpr int kAutomorphismOracleDefaultMax = 8;
inline constexpr int kAutotopismOracleDefaultMax = 9;
inline constexpr int kLatinEnumerationMax = 5;

namespace detail {

// Backtracking core shared by automorphisms() and is_rigid(). The visitor
// gets each automorphism and returns false to stop; run() returns false iff
// a visitor stopped it.
class AutomorphismSearch {
 public:
  explicit AutomorphismSearch(const Quasigroup& q) : q_(q), n_(q.order()), ts_(tracks(q)) {
    std::vector<CycleType> distinct;
    class_of_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (int i = 1; i <= n_; ++i) {
      const CycleType t = cycle_type(ts_.of(i));
      auto it = std::find(distinct.begin(), distinct.end(), t);
      if (it == distinct.end()) {
        distinct.push_back(t);
        it = distinct.end() - 1;
      }
      class_of_[static_cast<std::size_t>(i)] = static_cast<int>(it - distinct.begin());
    }
    std::vector<int> class_size(distinct.size(), 0);
    for (int i = 1; i <= n_; ++i) ++class_size[static_cast<std::size_t>(class_of_[static_cast<std::size_t>(i)])];
    for (int i = 1; i <= n_; ++i)
      if (class_size[static_cast<std::size_t>(class_of_[static_cast<std::size_t>(i)])] == 1) specials_.push_back(i);
  }

  template <class Visitor>
  bool run(Visitor&& visit) {
    img_.assign(static_cast<std::size_t>(n_) + 1, 0);
    used_.assign(static_cast<std::size_t>(n_) + 1, 0);
    trail_.clear();
    for (int k : specials_)
      if (!propagate(k, k)) return true;  // no automorphism at all cannot happen; identity satisfies the seeds
    return extend(std::forward<Visitor>(visit));
  }

 private:
  bool propagate(int x0, int v0) {
    pending_.clear();
    pending_.emplace_back(x0, v0);
    while (!pending_.empty()) {
      const auto [x, v] = pending_.back();
      pending_.pop_back();
      const int have = img_[static_cast<std::size_t>(x)];
      if (have != 0) {
        if (have != v) return false;
        continue;
      }
      if (class_of_[static_cast<std::size_t>(x)] != class_of_[static_cast<std::size_t>(v)]) return false;
      if (used_[static_cast<std::size_t>(v)]) return false;
      img_[static_cast<std::size_t>(x)] = v;
      used_[static_cast<std::size_t>(v)] = 1;
      trail_.push_back(x);
      for (int k : specials_) pending_.emplace_back(ts_.of(k)(x), ts_.of(k)(v));
      for (std::size_t t = 0; t < trail_.size(); ++t) {
        const int y = trail_[t];
        const int w = img_[static_cast<std::size_t>(y)];
        pending_.emplace_back(q_.at(x, y), q_.at(v, w));
        pending_.emplace_back(q_.at(y, x), q_.at(w, v));
      }
    }
    return true;
  }

  template <class Visitor>
  bool extend(Visitor&& visit) {
    int x = 0;
    for (int c = 1; c <= n_; ++c)
      if (img_[static_cast<std::size_t>(c)] == 0) {
        x = c;
        break;
      }
    if (x == 0) {
      for (int a = 1; a <= n_; ++a)
        for (int b = 1; b <= n_; ++b)
          if (img_[static_cast<std::size_t>(q_.at(a, b))] !=
              q_.at(img_[static_cast<std::size_t>(a)], img_[static_cast<std::size_t>(b)]))
            return true;
      std::vector<int> images(img_.begin() + 1, img_.end());
      return visit(Permutation(std::move(images), Permutation::Unchecked{}));
    }
    for (int v = 1; v <= n_; ++v) {
      if (used_[static_cast<std::size_t>(v)] || class_of_[static_cast<std::size_t>(v)] != class_of_[static_cast<std::size_t>(x)])
        continue;
      const std::size_t mark = trail_.size();
      const bool consistent = propagate(x, v);
      if (consistent && !extend(visit)) return false;
      while (trail_.size() > mark) {
        const int a = trail_.back();
        trail_.pop_back();
        used_[static_cast<std::size_t>(img_[static_cast<std::size_t>(a)])] = 0;
        img_[static_cast<std::size_t>(a)] = 0;
      }
    }
    return true;
  }

  const Quasigroup& q_;
  int n_;
  TrackSet ts_;
  std::vector<int> class_of_;
  std::vector<int> specials_;
  std::vector<int> img_;
  std::vector<char> used_;
  std::vector<int> trail_;
  std::vector<std::pair<int, int>> pending_;
};

// Pruned autotopism search core. Visitor returns false to stop.
class AutotopismSearch {
 public:
  explicit AutotopismSearch(const Quasigroup& q) : q_(q), n_(q.order()) {
    const TrackSet ts = tracks(q);
    std::vector<Permutation> inv;
    inv.reserve(static_cast<std::size_t>(n_));
    for (int j = 1; j <= n_; ++j) inv.push_back(ts.of(j).inverse());
    spins_.reserve(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_));
    for (int i = 1; i <= n_; ++i)
      for (int j = 1; j <= n_; ++j)
        spins_.push_back(i == j ? Permutation::identity(n_) : compose(ts.of(i), inv[static_cast<std::size_t>(j - 1)]));
    spin_types_.reserve(spins_.size());
    for (const auto& s : spins_) spin_types_.push_back(cycle_type(s));

    std::vector<PartSpectrum> spectra;
    {
      SpinTable st(q);
      for (int i = 1; i <= n_; ++i) spectra.push_back(part_spectrum(st, i));
    }
    std::vector<int> claimed(static_cast<std::size_t>(n_) + 1, 0);
    for (int i = 1; i <= n_; ++i) {
      if (claimed[static_cast<std::size_t>(i)]) continue;
      std::vector<int> members{i};
      claimed[static_cast<std::size_t>(i)] = 1;
      for (int k = i + 1; k <= n_; ++k)
        if (!claimed[static_cast<std::size_t>(k)] &&
            spectra[static_cast<std::size_t>(k - 1)] == spectra[static_cast<std::size_t>(i - 1)]) {
          members.push_back(k);
          claimed[static_cast<std::size_t>(k)] = 1;
        }
      classes_.push_back(std::move(members));
    }

    for (int i = 1; i <= n_; ++i)
      for (int j = 1; j <= n_; ++j)
        if (i != j) pairs_.emplace_back(i, j);
    std::sort(pairs_.begin(), pairs_.end(), [&](const auto& a, const auto& b) {
      const auto ca = centralizer_order(type_of(a.first, a.second));
      const auto cb = centralizer_order(type_of(b.first, b.second));
      if (ca != cb) return ca < cb;
      return a < b;
    });
  }

  template <class Visitor>
  bool run(Visitor&& visit) {
    // gamma odometer: one image permutation per part-spectrum class;
    // singleton classes (special parts) stay fixed.
    std::vector<std::vector<int>> targets;
    targets.reserve(classes_.size());
    for (const auto& c : classes_) targets.push_back(c);
    std::vector<int> gamma_img(static_cast<std::size_t>(n_));
    for (;;) {
      for (std::size_t c = 0; c < classes_.size(); ++c)
        for (std::size_t k = 0; k < classes_[c].size(); ++k)
          gamma_img[static_cast<std::size_t>(classes_[c][k] - 1)] = targets[c][k];
      if (!try_gamma(Permutation(gamma_img, Permutation::Unchecked{}), visit)) return false;
      std::size_t c = 0;
      while (c < targets.size() && !std::next_permutation(targets[c].begin(), targets[c].end())) ++c;
      if (c == targets.size()) return true;
    }
  }

 private:
  const CycleType& type_of(int i, int j) const {
    return spin_types_[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j - 1)];
  }
  const Permutation& spin_of(int i, int j) const {
    return spins_[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j - 1)];
  }

  template <class Visitor>
  bool try_gamma(const Permutation& gamma, Visitor&& visit) {
    std::vector<Permutation> candidates;
    if (pairs_.empty()) {
      candidates.push_back(Permutation::identity(n_));
    } else {
      const auto [i0, j0] = pairs_.front();
      if (type_of(i0, j0) != type_of(gamma(i0), gamma(j0))) return true;
      for_each_conjugator(spin_of(i0, j0), spin_of(gamma(i0), gamma(j0)), [&](const Permutation& b) {
        candidates.push_back(b);
        return true;
      });
      for (std::size_t k = 1; k < pairs_.size() && !candidates.empty(); ++k) {
        const auto [i, j] = pairs_[k];
        const Permutation& target = spin_of(gamma(i), gamma(j));
        std::erase_if(candidates, [&](const Permutation& b) { return conjugate(b, spin_of(i, j)) != target; });
      }
    }
    for (const Permutation& beta : candidates) {
      // alpha is forced by gamma(x*1) = alpha(x)*beta(1); the full law check
      // below also establishes well-definedness over every other column.
      std::vector<int> alpha_img(static_cast<std::size_t>(n_));
      std::vector<char> hit(static_cast<std::size_t>(n_) + 1, 0);
      bool ok = true;
      const int b1 = beta(1);
      for (int x = 1; x <= n_ && ok; ++x) {
        const int a = q_.left_divide(gamma(q_.at(x, 1)), b1);
        alpha_img[static_cast<std::size_t>(x - 1)] = a;
        if (hit[static_cast<std::size_t>(a)]) ok = false;
        hit[static_cast<std::size_t>(a)] = 1;
      }
      if (!ok) continue;
      const Permutation alpha(alpha_img, Permutation::Unchecked{});
      for (int x = 1; x <= n_ && ok; ++x)
        for (int y = 1; y <= n_; ++y)
          if (gamma(q_.at(x, y)) != q_.at(alpha(x), beta(y))) {
            ok = false;
            break;
          }
      if (ok && !visit(Isotopy{alpha, beta, gamma})) return false;
    }
    return true;
  }

  const Quasigroup& q_;
  int n_;
  std::vector<Permutation> spins_;
  std::vector<CycleType> spin_types_;
  std::vector<std::vector<int>> classes_;
  std::vector<std::pair<int, int>> pairs_;
};

}  // namespace detail

// Exactly { a : a(x*y) = a(x)*a(y) }, sorted by image sequence; always
// contains the identity.
inline std::vector<Permutation> automorphisms(const Quasigroup& q) {
  std::vector<Permutation> out;
  detail::AutomorphismSearch search(q);
  search.run([&](const Permutation& a) {
    out.push_back(a);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_rigid(const Quasigroup& q) {
  bool nontrivial = false;
  detail::AutomorphismSearch search(q);
  search.run([&](const Permutation& a) {
    if (a.is_identity()) return true;
    nontrivial = true;
    return false;
  });
  return !nontrivial;
}

// Filters all n! permutations by the homomorphism law.
inline std::vector<Permutation> automorphisms_bruteforce(const Quasigroup& q, int max_order = kAutomorphismOracleDefaultMax) {
  const int n = q.order();
  if (n > max_order)
    throw std::invalid_argument("automorphisms_bruteforce: order " + std::to_string(n) + " above limit " +
                                std::to_string(max_order));
  std::vector<Permutation> out;
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 1);
  do {
    bool ok = true;
    for (int x = 1; x <= n && ok; ++x)
      for (int y = 1; y <= n; ++y)
        if (img[static_cast<std::size_t>(q.at(x, y) - 1)] !=
            q.at(img[static_cast<std::size_t>(x - 1)], img[static_cast<std::size_t>(y - 1)])) {
          ok = false;
          break;
        }
    if (ok) out.push_back(Permutation::from_images(img));
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

// Exactly the triples (alpha, beta, gamma) with gamma(x*y) = alpha(x)*beta(y),
// sorted by (gamma, beta, alpha); always contains the identity triple.
inline std::vector<Isotopy> autotopisms(const Quasigroup& q) {
  std::vector<Isotopy> out;
  detail::AutotopismSearch search(q);
  search.run([&](const Isotopy& t) {
    out.push_back(t);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_super_rigid(const Quasigroup& q) {
  bool nontrivial = false;
  detail::AutotopismSearch search(q);
  search.run([&](const Isotopy& t) {
    if (t.is_identity()) return true;
    nontrivial = true;
    return false;
  });
  return !nontrivial;
}

// Propagating oracle: enumerate alpha and beta(1); column 1 forces gamma
// everywhere, row 1 then forces beta, and the full law is verified.
inline std::vector<Isotopy> autotopisms_bruteforce(const Quasigroup& q, int max_order = kAutotopismOracleDefaultMax) {
  const int n = q.order();
  if (n > max_order)
    throw std::invalid_argument("autotopisms_bruteforce: order " + std::to_string(n) + " above limit " +
                                std::to_string(max_order));
  std::vector<Isotopy> out;
  std::vector<int> alpha(static_cast<std::size_t>(n));
  std::iota(alpha.begin(), alpha.end(), 1);
  std::vector<int> gamma(static_cast<std::size_t>(n)), beta(static_cast<std::size_t>(n));
  do {
    for (int b1 = 1; b1 <= n; ++b1) {
      for (int x = 1; x <= n; ++x)
        gamma[static_cast<std::size_t>(q.at(x, 1) - 1)] = q.at(alpha[static_cast<std::size_t>(x - 1)], b1);
      beta[0] = b1;
      bool ok = true;
      const int a1 = alpha[0];
      for (int y = 2; y <= n && ok; ++y) {
        const int by = q.right_divide(a1, gamma[static_cast<std::size_t>(q.at(1, y) - 1)]);
        beta[static_cast<std::size_t>(y - 1)] = by;
        for (int x = 2; x <= n; ++x)
          if (gamma[static_cast<std::size_t>(q.at(x, y) - 1)] != q.at(alpha[static_cast<std::size_t>(x - 1)], by)) {
            ok = false;
            break;
          }
      }
      if (ok)
        out.push_back(Isotopy{Permutation::from_images(alpha), Permutation::from_images(beta),
                              Permutation::from_images(gamma)});
    }
  } while (std::next_permutation(alpha.begin(), alpha.end()));
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

// Row-major cell backtracking in lexicographic order. f(cells) returns false
// to stop. Cells of the first `fixed` positions must be prefilled and
// consistent with the masks.
template <class F>
bool enumerate_latin_cells(int n, int pos, std::vector<int>& cells, std::vector<std::uint32_t>& row_mask,
                           std::vector<std::uint32_t>& col_mask, F& f) {
  if (pos == n * n) return f(cells);
  const int r = pos / n, c = pos % n;
  std::uint32_t avail = ~(row_mask[static_cast<std::size_t>(r)] | col_mask[static_cast<std::size_t>(c)]) &
                        ((1u << n) - 1u);
  while (avail != 0) {
    const std::uint32_t bit = avail & (~avail + 1u);
    avail &= avail - 1u;
    cells[static_cast<std::size_t>(pos)] = std::countr_zero(bit) + 1;
    row_mask[static_cast<std::size_t>(r)] |= bit;
    col_mask[static_cast<std::size_t>(c)] |= bit;
    const bool keep_going = enumerate_latin_cells(n, pos + 1, cells, row_mask, col_mask, f);
    row_mask[static_cast<std::size_t>(r)] &= ~bit;
    col_mask[static_cast<std::size_t>(c)] &= ~bit;
    if (!keep_going) return false;
  }
  return true;
}

inline Quasigroup quasigroup_from_cells(int n, const std::vector<int>& cells) {
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r)
    rows[static_cast<std::size_t>(r)].assign(cells.begin() + static_cast<std::ptrdiff_t>(r) * n,
                                             cells.begin() + static_cast<std::ptrdiff_t>(r + 1) * n);
  return Quasigroup::from_rows(rows);
}

}  // namespace detail

// Streams every Latin square of order n exactly once, in lexicographic order
// of the flattened table. emit(const Quasigroup&) returns false to stop.
// Hard-capped at order 5.
template <class F>
void for_each_latin_square(int n, F&& emit) {
  if (n < 1 || n > kLatinEnumerationMax)
    throw std::invalid_argument("for_each_latin_square: order must be in 1.." + std::to_string(kLatinEnumerationMax));
  std::vector<int> cells(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  std::vector<std::uint32_t> row_mask(static_cast<std::size_t>(n), 0), col_mask(static_cast<std::size_t>(n), 0);
  auto f = [&](const std::vector<int>& done) { return emit(detail::quasigroup_from_cells(n, done)); };
  detail::enumerate_latin_cells(n, 0, cells, row_mask, col_mask, f);
}

inline std::uint64_t count_latin_squares(int n) {
  std::uint64_t count = 0;
  for_each_latin_square(n, [&](const Quasigroup&) {
    ++count;
    return true;
  });
  return count;
}

struct ScanOptions {
  bool collect_rigid = false;
  bool collect_super_rigid = false;
  int jobs = 1;
};

struct ScanResult {
  std::uint64_t total = 0;
  std::uint64_t rigid = 0;
  std::uint64_t super_rigid = 0;
  std::vector<Quasigroup> rigid_squares;
  std::vector<Quasigroup> super_rigid_squares;
};

namespace detail {

inline void scan_square(const Quasigroup& q, const ScanOptions& opt, ScanResult& acc) {
  ++acc.total;
  const bool rigid = is_rigid(q);
  if (!rigid) return;
  ++acc.rigid;
  if (opt.collect_rigid) acc.rigid_squares.push_back(q);
  if (is_super_rigid(q)) {
    ++acc.super_rigid;
    if (opt.collect_super_rigid) acc.super_rigid_squares.push_back(q);
  }
}

template <class F>
void enumerate_with_first_row(int n, const std::vector<int>& first_row, F&& emit) {
  std::vector<int> cells(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  std::vector<std::uint32_t> row_mask(static_cast<std::size_t>(n), 0), col_mask(static_cast<std::size_t>(n), 0);
  for (int c = 0; c < n; ++c) {
    const std::uint32_t bit = 1u << (first_row[static_cast<std::size_t>(c)] - 1);
    cells[static_cast<std::size_t>(c)] = first_row[static_cast<std::size_t>(c)];
    row_mask[0] |= bit;
    col_mask[static_cast<std::size_t>(c)] |= bit;
  }
  auto f = [&](const std::vector<int>& done) { return emit(detail::quasigroup_from_cells(n, done)); };
  detail::enumerate_latin_cells(n, n, cells, row_mask, col_mask, f);
}

}  // namespace detail

// Full census of order n (n <= 5): counts of all/rigid/super-rigid squares,
// optionally collecting the qualifying tables. With jobs > 1 the search is
// partitioned by first row and merged in first-row order, so results are
// identical for every jobs value.
inline ScanResult scan_order(int n, const ScanOptions& opt = {}) {
  if (n < 1 || n > kLatinEnumerationMax)
    throw std::invalid_argument("scan_order: order must be in 1.." + std::to_string(kLatinEnumerationMax));
  const int jobs = std::max(1, opt.jobs);
  if (jobs == 1) {
    ScanResult acc;
    for_each_latin_square(n, [&](const Quasigroup& q) {
      detail::scan_square(q, opt, acc);
      return true;
    });
    return acc;
  }

  std::vector<std::vector<int>> first_rows;
  {
    std::vector<int> row(static_cast<std::size_t>(n));
    std::iota(row.begin(), row.end(), 1);
    do first_rows.push_back(row);
    while (std::next_permutation(row.begin(), row.end()));
  }
  std::vector<ScanResult> buckets(first_rows.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= first_rows.size()) return;
      detail::enumerate_with_first_row(n, first_rows[b], [&](const Quasigroup& q) {
        detail::scan_square(q, opt, buckets[b]);
        return true;
      });
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  ScanResult acc;
  for (auto& b : buckets) {
    acc.total += b.total;
    acc.rigid += b.rigid;
    acc.super_rigid += b.super_rigid;
    for (auto& q : b.rigid_squares) acc.rigid_squares.push_back(std::move(q));
    for (auto& q : b.super_rigid_squares) acc.super_rigid_squares.push_back(std::move(q));
  }
  return acc;
}

}  // namespace qf
