// Permutations of {1..n}: composition, cycle decomposition, cycle types,
// conjugation, and enumeration of all conjugating permutations.
//
// Cycle strings use dot notation: "(123.45.6.)" is the permutation
// 1->2->3->1, 4->5->4 with 6 fixed. Labels are 1-based everywhere.

#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qf {

class Permutation {
 public:
  static Permutation identity(int degree) {
    if (degree < 1) throw std::invalid_argument("permutation degree must be >= 1");
    std::vector<int> img(static_cast<std::size_t>(degree));
    std::iota(img.begin(), img.end(), 1);
    return Permutation(std::move(img), Unchecked{});
  }

  // images[k] is the image of label k+1; must be a bijection of {1..n}.
  static Permutation from_images(std::vector<int> images) {
    const int n = static_cast<int>(images.size());
    if (n < 1) throw std::invalid_argument("permutation degree must be >= 1");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v : images) {
      if (v < 1 || v > n) throw std::invalid_argument("image out of range 1..n");
      if (seen[static_cast<std::size_t>(v - 1)]) throw std::invalid_argument("image repeated; not a bijection");
      seen[static_cast<std::size_t>(v - 1)] = 1;
    }
    return Permutation(std::move(images), Unchecked{});
  }

  int degree() const { return static_cast<int>(images_.size()); }

  // Image of label x (1-based).
  int operator()(int x) const { return images_[static_cast<std::size_t>(x - 1)]; }

  bool is_identity() const {
    for (int x = 1; x <= degree(); ++x)
      if ((*this)(x) != x) return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<int> inv(images_.size());
    for (int x = 1; x <= degree(); ++x) inv[static_cast<std::size_t>((*this)(x)-1)] = x;
    return Permutation(std::move(inv), Unchecked{});
  }

  const std::vector<int>& images() const { return images_; }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

  struct Unchecked {};
  Permutation(std::vector<int> images, Unchecked) : images_(std::move(images)) {}

 private:
  std::vector<int> images_;
};

// compose(p, q)(x) = p(q(x)).
inline Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw std::invalid_argument("compose: degree mismatch");
  std::vector<int> img(static_cast<std::size_t>(p.degree()));
  for (int x = 1; x <= p.degree(); ++x) img[static_cast<std::size_t>(x - 1)] = p(q(x));
  return Permutation(std::move(img), Permutation::Unchecked{});
}

inline Permutation operator*(const Permutation& p, const Permutation& q) { return compose(p, q); }

// Canonical form: each cycle starts at its minimal element, cycles sorted by
// first element, fixed points included as 1-cycles.
struct CycleDecomposition {
  std::vector<std::vector<int>> cycles;
};

// Multiset of cycle lengths, ascending. The conjugacy invariant Z(p).
struct CycleType {
  std::vector<int> lengths;

  int degree() const { return std::accumulate(lengths.begin(), lengths.end(), 0); }

  friend bool operator==(const CycleType&, const CycleType&) = default;
  friend auto operator<=>(const CycleType&, const CycleType&) = default;
};

inline CycleDecomposition cycle_decomposition(const Permutation& p) {
  const int n = p.degree();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  CycleDecomposition d;
  for (int start = 1; start <= n; ++start) {
    if (seen[static_cast<std::size_t>(start - 1)]) continue;
    std::vector<int> cyc;
    int x = start;
    do {
      seen[static_cast<std::size_t>(x - 1)] = 1;
      cyc.push_back(x);
      x = p(x);
    } while (x != start);
    d.cycles.push_back(std::move(cyc));
  }
  return d;
}

inline CycleType cycle_type(const Permutation& p) {
  CycleType t;
  for (const auto& c : cycle_decomposition(p).cycles) t.lengths.push_back(static_cast<int>(c.size()));
  std::sort(t.lengths.begin(), t.lengths.end());
  return t;
}

inline std::string to_string(const CycleType& t) {
  std::string s = "[";
  for (std::size_t k = 0; k < t.lengths.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(t.lengths[k]);
  }
  s += ']';
  return s;
}

// Dot-notation formatting with explicit fixed points. Degrees above 9 need
// multi-digit labels, which juxtaposition cannot express; labels are then
// comma-separated within a cycle.
inline std::string format_cycles(const Permutation& p) {
  const bool commas = p.degree() > 9;
  std::string s = "(";
  for (const auto& cyc : cycle_decomposition(p).cycles) {
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      if (commas && k) s += ',';
      s += std::to_string(cyc[k]);
    }
    s += '.';
  }
  s += ')';
  return s;
}

// Parses "(" cycle+ ")" with cycle = label+ ".". Labels not mentioned are
// fixed points. Commas between labels are accepted (required reading back
// degrees above 9). Throws std::invalid_argument on malformed input,
// repeated labels, or labels outside 1..n.
inline Permutation parse_cycles(std::string_view text, int degree) {
  if (degree < 1) throw std::invalid_argument("parse_cycles: degree must be >= 1");
  auto fail = [&](const std::string& why, std::size_t pos) {
    throw std::invalid_argument("parse_cycles: " + why + " at position " + std::to_string(pos));
  };
  if (text.size() < 2 || text.front() != '(' || text.back() != ')') fail("expected \"(...)\"", 0);

  std::vector<int> img(static_cast<std::size_t>(degree));
  std::iota(img.begin(), img.end(), 1);
  std::vector<char> seen(static_cast<std::size_t>(degree), 0);

  const bool multi = degree > 9;
  std::vector<int> cyc;
  std::size_t i = 1;
  const std::size_t end = text.size() - 1;
  std::size_t ncycles = 0;
  while (i < end) {
    const char c = text[i];
    if (c == '.') {
      if (cyc.empty()) fail("empty cycle", i);
      for (std::size_t k = 0; k < cyc.size(); ++k)
        img[static_cast<std::size_t>(cyc[k] - 1)] = cyc[(k + 1) % cyc.size()];
      cyc.clear();
      ++ncycles;
      ++i;
    } else if (c == ',') {
      if (cyc.empty()) fail("unexpected ','", i);
      ++i;
    } else if (c >= '1' && c <= '9') {
      std::size_t j = i + 1;
      if (multi)
        while (j < end && text[j] >= '0' && text[j] <= '9') ++j;
      int label = 0;
      for (std::size_t k = i; k < j; ++k) label = label * 10 + (text[k] - '0');
      if (label < 1 || label > degree) fail("label " + std::to_string(label) + " out of range 1.." + std::to_string(degree), i);
      if (seen[static_cast<std::size_t>(label - 1)]) fail("label " + std::to_string(label) + " repeated", i);
      seen[static_cast<std::size_t>(label - 1)] = 1;
      cyc.push_back(label);
      i = j;
    } else {
      fail(std::string("unexpected character '") + c + "'", i);
    }
  }
  if (!cyc.empty()) fail("unterminated cycle (missing '.')", end);
  if (ncycles == 0) fail("no cycles", 1);
  return Permutation(std::move(img), Permutation::Unchecked{});
}

// b p b^-1
inline Permutation conjugate(const Permutation& b, const Permutation& p) {
  if (b.degree() != p.degree()) throw std::invalid_argument("conjugate: degree mismatch");
  std::vector<int> img(static_cast<std::size_t>(p.degree()));
  for (int x = 1; x <= p.degree(); ++x) img[static_cast<std::size_t>(b(x) - 1)] = b(p(x));
  return Permutation(std::move(img), Permutation::Unchecked{});
}

inline bool are_conjugate(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw std::invalid_argument("are_conjugate: degree mismatch");
  return cycle_type(p) == cycle_type(q);
}

// |{b : b p b^-1 = p}| = prod over lengths l of m_l! * l^m_l. Saturates at
// UINT64_MAX rather than overflowing.
inline std::uint64_t centralizer_order(const CycleType& t) {
  auto mul = [](std::uint64_t a, std::uint64_t b) {
    if (b != 0 && a > UINT64_MAX / b) return UINT64_MAX;
    return a * b;
  };
  std::uint64_t total = 1;
  std::size_t k = 0;
  while (k < t.lengths.size()) {
    const int len = t.lengths[k];
    std::uint64_t mult = 0;
    while (k < t.lengths.size() && t.lengths[k] == len) { ++mult; ++k; }
    for (std::uint64_t m = 2; m <= mult; ++m) total = mul(total, m);
    for (std::uint64_t m = 0; m < mult; ++m) total = mul(total, static_cast<std::uint64_t>(len));
  }
  return total;
}

// Streams every b with b p b^-1 = q: all matchings between equal-length
// cycles of p and q, times all rotations of each target cycle. The visitor
// returns false to stop; the function returns false iff it was stopped.
template <class Visitor>
bool for_each_conjugator(const Permutation& p, const Permutation& q, Visitor&& visit) {
  if (p.degree() != q.degree()) throw std::invalid_argument("conjugators: degree mismatch");
  const int n = p.degree();

  std::map<int, std::vector<std::vector<int>>> by_len_p, by_len_q;
  for (auto& c : cycle_decomposition(p).cycles) by_len_p[static_cast<int>(c.size())].push_back(std::move(c));
  for (auto& c : cycle_decomposition(q).cycles) by_len_q[static_cast<int>(c.size())].push_back(std::move(c));
  if (by_len_p.size() != by_len_q.size()) return true;
  for (const auto& [len, cs] : by_len_p) {
    auto it = by_len_q.find(len);
    if (it == by_len_q.end() || it->second.size() != cs.size()) return true;
  }

  // One class per cycle length: a matching of p-cycles to q-cycles plus a
  // rotation offset per p-cycle.
  struct LenClass {
    int len;
    std::vector<std::vector<int>> src, dst;
    std::vector<int> match;  // src[k] -> dst[match[k]]
    std::vector<int> rot;
  };
  std::vector<LenClass> classes;
  for (auto& [len, cs] : by_len_p) {
    LenClass lc;
    lc.len = len;
    lc.src = std::move(cs);
    lc.dst = std::move(by_len_q[len]);
    lc.match.resize(lc.src.size());
    std::iota(lc.match.begin(), lc.match.end(), 0);
    lc.rot.assign(lc.src.size(), 0);
    classes.push_back(std::move(lc));
  }

  std::vector<int> img(static_cast<std::size_t>(n));
  auto emit = [&]() {
    for (const auto& lc : classes)
      for (std::size_t k = 0; k < lc.src.size(); ++k) {
        const auto& a = lc.src[k];
        const auto& b = lc.dst[static_cast<std::size_t>(lc.match[k])];
        for (std::size_t t = 0; t < a.size(); ++t)
          img[static_cast<std::size_t>(a[t] - 1)] = b[(t + static_cast<std::size_t>(lc.rot[k])) % b.size()];
      }
    return visit(Permutation(img, Permutation::Unchecked{}));
  };

  // Odometer over (rotations, matchings) of every class.
  auto advance_rot = [](LenClass& lc) {
    for (auto& r : lc.rot) {
      if (++r < lc.len) return true;
      r = 0;
    }
    return false;
  };
  auto advance_class = [&](LenClass& lc) {
    if (advance_rot(lc)) return true;
    return std::next_permutation(lc.match.begin(), lc.match.end());
  };
  for (;;) {
    if (!emit()) return false;
    std::size_t k = 0;
    while (k < classes.size() && !advance_class(classes[k])) {
      std::iota(classes[k].match.begin(), classes[k].match.end(), 0);
      std::fill(classes[k].rot.begin(), classes[k].rot.end(), 0);
      ++k;
    }
    if (k == classes.size()) return true;
  }
}

// All b with b p b^-1 = q, sorted; empty iff the cycle types differ.
inline std::vector<Permutation> conjugators(const Permutation& p, const Permutation& q) {
  std::vector<Permutation> out;
  for_each_conjugator(p, q, [&](const Permutation& b) {
    out.push_back(b);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qf
