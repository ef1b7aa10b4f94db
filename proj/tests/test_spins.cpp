#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>

#include "qf/spins.hpp"
#include "support/fixtures.hpp"

using qf::CycleType;
using qf::Permutation;
using qf::Quasigroup;
using qf::SpinReport;
using qf::SpinTable;
using qftest::fixture_names;
using qftest::load;
using qftest::random_isotopy;

namespace {

std::vector<CycleType> sorted_multiset(std::vector<CycleType> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// multiset of part spectra, each spectrum itself canonical
std::vector<std::vector<CycleType>> full_spin_spectrum(const Quasigroup& q) {
  const SpinReport rep = qf::spin_report(q);
  std::vector<std::vector<CycleType>> all;
  for (const auto& p : rep.parts) all.push_back(p.types);
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace

TEST_CASE("spins of the order-4 quasigroup") {
  const Quasigroup q = load("fig1");
  CHECK(qf::spin(q, 1, 2) == qf::parse_cycles("(1342.)", 4));
  CHECK(qf::spin(q, 1, 3) == qf::parse_cycles("(1243.)", 4));
  CHECK(qf::spin(q, 1, 4) == qf::parse_cycles("(14.23.)", 4));
  CHECK(qf::spin(q, 4, 1) == qf::parse_cycles("(14.23.)", 4));
  CHECK(qf::spin(q, 4, 3) == qf::parse_cycles("(1342.)", 4));
}

TEST_CASE("spin of the order-7 table") {
  const Quasigroup q = load("ex8");
  CHECK(qf::spin(q, 1, 5) == qf::parse_cycles("(1736245.)", 7));
  // phi_52 recomputed from the table; its cycle type is [2,2,3]
  CHECK(qf::spin(q, 5, 2) == qf::parse_cycles("(16.253.47.)", 7));
  CHECK(qf::cycle_type(qf::spin(q, 5, 2)) == CycleType{{2, 2, 3}});
}

TEST_CASE("trivial spin is excluded") {
  const Quasigroup q = load("ex1a");
  SpinTable st(q);
  CHECK_THROWS_AS(st.spin(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(qf::spin(q, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(st.spin(0, 1), std::out_of_range);
}

TEST_CASE("spin(j,i) inverts spin(i,j)") {
  for (const auto& name : fixture_names()) {
    const Quasigroup q = load(name);
    SpinTable st(q);
    for (int i = 1; i <= q.order(); ++i)
      for (int j = 1; j <= q.order(); ++j) {
        if (i == j) continue;
        CHECK(st.spin(j, i) == st.spin(i, j).inverse());
      }
  }
}

TEST_CASE("spins have no fixed points") {
  for (const auto& name : fixture_names()) {
    const Quasigroup q = load(name);
    SpinTable st(q);
    for (int i = 1; i <= q.order(); ++i)
      for (int j = 1; j <= q.order(); ++j) {
        if (i == j) continue;
        for (int x = 1; x <= q.order(); ++x) CHECK(st.spin(i, j)(x) != x);
      }
  }
}

TEST_CASE("part spectra") {
  const auto sp1 = qf::part_spectrum(load("fig1"), 1);
  CHECK(sp1.types == std::vector<CycleType>{CycleType{{4}}, CycleType{{4}}, CycleType{{2, 2}}});

  const auto sp6 = qf::part_spectrum(load("ex8"), 6);
  CHECK(sorted_multiset(sp6.types) ==
        sorted_multiset({CycleType{{2, 2, 3}}, CycleType{{2, 2, 3}}, CycleType{{2, 5}}, CycleType{{2, 5}},
                         CycleType{{2, 5}}, CycleType{{2, 5}}}));

  const auto sp_only = qf::part_spectrum(Quasigroup::from_rows({{1}}), 1);
  CHECK(sp_only.types.empty());
}

TEST_CASE("spin report of the order-4 quasigroup") {
  const SpinReport rep = qf::spin_report(load("fig1"));
  REQUIRE(rep.letter_types.size() == 2);
  CHECK(rep.letter_types[0] == CycleType{{4}});
  CHECK(rep.letter_types[1] == CycleType{{2, 2}});
  for (int i = 1; i <= 4; ++i) CHECK(rep.letters(i) == "2A+B");
  // all four parts share the spectrum, so Sp(Phi_2) = Sp(Phi_3) and nothing
  // is special
  CHECK(rep.parts[1] == rep.parts[2]);
  CHECK(rep.special_parts().empty());
}

TEST_CASE("special parts of the order-7 table") {
  CHECK(qf::special_parts(load("ex8")) == std::vector<int>{1, 2, 3, 4, 5});
}

TEST_CASE("special parts of the order-9 table") {
  const SpinReport rep = qf::spin_report(load("ex9"));
  // parts 3,4 share a spectrum and so do parts 6,9
  CHECK(rep.parts[2] == rep.parts[3]);
  CHECK(rep.parts[5] == rep.parts[8]);
  CHECK(rep.special_parts() == std::vector<int>{1, 2, 5, 7, 8});
}

TEST_CASE("order-1 spin report") {
  const SpinReport rep = qf::spin_report(Quasigroup::from_rows({{1}}));
  CHECK(rep.parts.size() == 1);
  CHECK(rep.letters(1).empty());
  CHECK(rep.special_parts() == std::vector<int>{1});
}

TEST_CASE("letter names") {
  CHECK(SpinReport::letter_name(0) == "A");
  CHECK(SpinReport::letter_name(25) == "Z");
  CHECK(SpinReport::letter_name(26) == "AA");
  CHECK(SpinReport::letter_name(27) == "AB");
}

TEST_CASE("spin covariance under isotopy") {
  std::mt19937 rng(211);
  for (int rep = 0; rep < 40; ++rep) {
    const Quasigroup base = load(fixture_names()[static_cast<std::size_t>(rep) % fixture_names().size()]);
    const qf::Isotopy t = random_isotopy(base.order(), rng);
    const Quasigroup iso = qf::apply_isotopy(base, t);
    SpinTable sq(base), si(iso);
    const SpinReport rq = qf::spin_report(base), ri = qf::spin_report(iso);
    for (int i = 1; i <= base.order(); ++i) {
      for (int j = 1; j <= base.order(); ++j) {
        if (i == j) continue;
        CHECK(sq.spin(t.gamma(i), t.gamma(j)) == qf::conjugate(t.beta, si.spin(i, j)));
      }
      CHECK(rq.parts[static_cast<std::size_t>(t.gamma(i) - 1)] == ri.parts[static_cast<std::size_t>(i - 1)]);
    }
  }
}

TEST_CASE("dual quasigroups have equal part spectra") {
  for (const auto& name : fixture_names()) {
    const Quasigroup q = load(name);
    const SpinReport a = qf::spin_report(q), b = qf::spin_report(qf::dual(q));
    for (int i = 1; i <= q.order(); ++i)
      CHECK(a.parts[static_cast<std::size_t>(i - 1)] == b.parts[static_cast<std::size_t>(i - 1)]);
  }
}

TEST_CASE("isotopic quasigroups have the same spin-spectrum") {
  CHECK(full_spin_spectrum(load("ex1a")) == full_spin_spectrum(load("ex1b")));
  std::mt19937 rng(223);
  for (const auto& name : {"fig1", "ex6", "ex8"}) {
    const Quasigroup q = load(name);
    const Quasigroup iso = qf::apply_isotopy(q, random_isotopy(q.order(), rng));
    CHECK(full_spin_spectrum(q) == full_spin_spectrum(iso));
  }
}

TEST_CASE("spin cache is safe under concurrent fill") {
  const Quasigroup q = load("ex9");
  SpinTable st(q);
  const Permutation expected = qf::spin(q, 6, 8);
  std::vector<std::thread> pool;
  std::atomic<int> mismatches{0};
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([&] {
      for (int i = 1; i <= 9; ++i)
        for (int j = 1; j <= 9; ++j) {
          if (i == j) continue;
          if (st.spin(i, j) != qf::spin(q, i, j)) ++mismatches;
        }
      if (st.spin(6, 8) != expected) ++mismatches;
    });
  for (auto& th : pool) th.join();
  CHECK(mismatches == 0);
}
