// Shared test helpers: fixture loading and deterministic random generators.

#pragma once

#include <random>
#include <string>
#include <vector>

#include "qf/perm.hpp"
#include "qf/quasigroup.hpp"
#include "qf/table_io.hpp"

namespace qftest {

inline std::string fixture_path(const std::string& name) {
  return std::string(QF_FIXTURES_DIR) + "/" + name + ".txt";
}

inline qf::Quasigroup load(const std::string& name) { return qf::read_table_file(fixture_path(name)); }

inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {"ex1a",   "ex1b",   "ex2",    "ex4",    "fig1",
                                                 "ex6",    "loop6b", "loop6c", "loop6d", "loop6e",
                                                 "ex8",    "ex9",    "z2",     "z3",     "z4"};
  return names;
}

inline qf::Permutation random_permutation(int n, std::mt19937& rng) {
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 1);
  std::shuffle(img.begin(), img.end(), rng);
  return qf::Permutation::from_images(std::move(img));
}

inline qf::Isotopy random_isotopy(int n, std::mt19937& rng) {
  return {random_permutation(n, rng), random_permutation(n, rng), random_permutation(n, rng)};
}

// All of S_n as permutations, ascending. Test-only oracle helper.
inline std::vector<qf::Permutation> symmetric_group(int n) {
  std::vector<qf::Permutation> out;
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 1);
  do out.push_back(qf::Permutation::from_images(img));
  while (std::next_permutation(img.begin(), img.end()));
  return out;
}

}  // namespace qftest
