#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "qf/quasigroup.hpp"
#include "qf/table_io.hpp"
#include "support/fixtures.hpp"

using qf::Isotopy;
using qf::Permutation;
using qf::Quasigroup;
using qf::TrackSet;
using qftest::fixture_names;
using qftest::load;
using qftest::random_isotopy;

TEST_CASE("every fixture is a valid Latin square") {
  for (const auto& name : fixture_names()) CHECK_NOTHROW(load(name));
}

TEST_CASE("from_rows rejects bad tables") {
  CHECK_THROWS_AS(Quasigroup::from_rows({{1, 2}, {2, 2}}), qf::TableError);
  try {
    Quasigroup::from_rows({{1, 2}, {2, 2}});
  } catch (const qf::TableError& e) {
    CHECK(e.row() == 2);
    CHECK(e.col() == 2);
    CHECK(std::string(e.what()).find("repeats 2") != std::string::npos);
  }
  try {
    Quasigroup::from_rows({{1, 2}, {1, 2}});  // column-only violation
  } catch (const qf::TableError& e) {
    CHECK(e.row() == 2);
    CHECK(e.col() == 1);
    CHECK(std::string(e.what()).find("column 1") != std::string::npos);
  }
  CHECK_THROWS_AS(Quasigroup::from_rows({{1, 1}, {2, 2}}), qf::TableError);   // row repeat
  CHECK_THROWS_AS(Quasigroup::from_rows({{1, 2, 3}, {2, 3, 1}}), qf::TableError);  // not square
  CHECK_THROWS_AS(Quasigroup::from_rows({{1, 2}, {2, 3}}), qf::TableError);   // out of range
  CHECK_THROWS_AS(Quasigroup::from_rows({}), qf::TableError);
}

TEST_CASE("multiplication and divisions") {
  const Quasigroup a = load("ex1a");
  CHECK(a.at(2, 3) == 1);
  const Quasigroup e8 = load("ex8");
  CHECK(e8.at(3, 2) == 6);

  for (const auto& name : {"ex1a", "ex8", "ex9"}) {
    const Quasigroup q = load(name);
    for (int x = 1; x <= q.order(); ++x)
      for (int y = 1; y <= q.order(); ++y) {
        CHECK(q.right_divide(x, q.at(x, y)) == y);
        CHECK(q.left_divide(q.at(x, y), y) == x);
      }
  }
  CHECK_THROWS_AS(a.at(0, 1), std::out_of_range);
  CHECK_THROWS_AS(a.at(1, 4), std::out_of_range);
}

TEST_CASE("tracks of the order-3 pair") {
  const TrackSet t1 = qf::tracks(load("ex1a"));
  CHECK(t1.of(1) == qf::parse_cycles("(1.23.)", 3));
  CHECK(t1.of(2) == qf::parse_cycles("(12.3.)", 3));
  CHECK(t1.of(3) == qf::parse_cycles("(13.2.)", 3));

  const TrackSet t2 = qf::tracks(load("ex1b"));
  CHECK(t2.of(1) == Permutation::identity(3));
  CHECK(t2.of(2) == qf::parse_cycles("(123.)", 3));
  CHECK(t2.of(3) == qf::parse_cycles("(132.)", 3));
}

TEST_CASE("tracks of the order-7 table") {
  const TrackSet ts = qf::tracks(load("ex8"));
  const char* printed[] = {"(1.2.3.4.57.6.)", "(12.34.56.7.)", "(13.276.45.)", "(14.25367.)",
                           "(15.26374.)",     "(16.2473.5.)",  "(17.235.46.)"};
  for (int i = 1; i <= 7; ++i) CHECK(ts.of(i) == qf::parse_cycles(printed[i - 1], 7));
}

TEST_CASE("track condition x * phi_i(x) = i") {
  for (const auto& name : fixture_names()) {
    const Quasigroup q = load(name);
    const TrackSet ts = qf::tracks(q);
    for (int i = 1; i <= q.order(); ++i)
      for (int x = 1; x <= q.order(); ++x) CHECK(q.at(x, ts.of(i)(x)) == i);
  }
}

TEST_CASE("from_tracks inverts tracks") {
  for (const auto& name : fixture_names()) {
    const Quasigroup q = load(name);
    CHECK(qf::from_tracks(qf::tracks(q)) == q);
  }
}

TEST_CASE("from_tracks rejects colliding tracks") {
  const TrackSet bad{{Permutation::identity(3), Permutation::identity(3), qf::parse_cycles("(123.)", 3)}};
  CHECK_THROWS_AS(qf::from_tracks(bad), qf::TableError);
  try {
    qf::from_tracks(bad);
  } catch (const qf::TableError& e) {
    CHECK(std::string(e.what()).find("tracks 1 and 2") != std::string::npos);
  }
  const TrackSet mixed{{Permutation::identity(3), Permutation::identity(2)}};
  CHECK_THROWS_AS(qf::from_tracks(mixed), qf::TableError);
}

TEST_CASE("dual") {
  for (const auto& name : fixture_names()) {
    const Quasigroup q = load(name);
    CHECK(qf::dual(qf::dual(q)) == q);
    const TrackSet ts = qf::tracks(q);
    const TrackSet td = qf::tracks(qf::dual(q));
    for (int i = 1; i <= q.order(); ++i) CHECK(td.of(i) == ts.of(i).inverse());
  }
  // a commutative table is self-dual
  CHECK(qf::dual(load("ex1a")) == load("ex1a"));
}

TEST_CASE("apply_isotopy") {
  const Quasigroup q = load("ex6");
  CHECK(qf::apply_isotopy(q, Isotopy::identity(6)) == q);

  std::mt19937 rng(101);
  for (int rep = 0; rep < 50; ++rep) {
    const Quasigroup base = load(fixture_names()[static_cast<std::size_t>(rep) % fixture_names().size()]);
    const Isotopy t = random_isotopy(base.order(), rng);
    const Quasigroup iso = qf::apply_isotopy(base, t);

    // track covariance: phi_{gamma(i)} = beta psi_i alpha^-1
    const TrackSet phi = qf::tracks(base);
    const TrackSet psi = qf::tracks(iso);
    for (int i = 1; i <= base.order(); ++i)
      CHECK(phi.of(t.gamma(i)) == qf::compose(qf::compose(t.beta, psi.of(i)), t.alpha.inverse()));

    const Isotopy back{t.alpha.inverse(), t.beta.inverse(), t.gamma.inverse()};
    CHECK(qf::apply_isotopy(iso, back) == base);
  }
}

TEST_CASE("special tracks") {
  CHECK(qf::special_tracks(load("ex1a")).empty());
  CHECK(qf::special_tracks(load("ex1b")) == std::vector<int>{1});
  CHECK(qf::special_tracks(load("ex2")).empty());
  CHECK(qf::special_tracks(load("ex4")) == std::vector<int>{2, 4, 5});
  CHECK(qf::special_tracks(load("fig1")) == std::vector<int>{1, 4});
  CHECK(qf::special_tracks(load("ex6")) == std::vector<int>{1, 2, 5});
  CHECK(qf::special_tracks(load("z4")).empty());
}

TEST_CASE("unipotent, idempotent, loop") {
  const Quasigroup b = load("ex1b");
  CHECK(qf::is_unipotent(b) == 1);
  CHECK(qf::tracks(b).of(1).is_identity());

  for (const auto& name : fixture_names()) {
    const Quasigroup q = load(name);
    const auto a = qf::is_unipotent(q);
    const TrackSet ts = qf::tracks(q);
    for (int i = 1; i <= q.order(); ++i)
      CHECK(ts.of(i).is_identity() == (a.has_value() && *a == i));
  }

  CHECK(qf::loop_identity(load("ex6")) == 1);
  for (const auto& name : {"loop6b", "loop6c", "loop6d", "loop6e"}) CHECK(qf::loop_identity(load(name)) == 1);
  CHECK_FALSE(qf::loop_identity(load("ex1b")).has_value());
  CHECK(qf::is_loop(load("z3")));  // 1 is the identity of the cyclic table

  const Quasigroup idem = Quasigroup::from_rows({{1, 3, 2}, {3, 2, 1}, {2, 1, 3}});
  CHECK(qf::is_idempotent(idem));
  CHECK_FALSE(qf::is_idempotent(load("ex1a")));
}

TEST_CASE("order one") {
  const Quasigroup q = Quasigroup::from_rows({{1}});
  CHECK(q.order() == 1);
  CHECK(q.at(1, 1) == 1);
  CHECK(qf::dual(q) == q);
  CHECK(qf::tracks(q).of(1).is_identity());
  CHECK(qf::from_tracks(qf::tracks(q)) == q);
  CHECK(qf::is_idempotent(q));
  CHECK(qf::is_unipotent(q) == 1);
  CHECK(qf::loop_identity(q) == 1);
  CHECK(qf::special_tracks(q) == std::vector<int>{1});
}

TEST_CASE("table file round-trip is bit-exact") {
  for (const auto& name : fixture_names()) {
    const Quasigroup q = load(name);
    const std::string text = qf::table_to_string(q);
    std::istringstream in(text);
    CHECK(qf::read_table(in) == q);
    std::ifstream file(qftest::fixture_path(name), std::ios::binary);
    const std::string raw((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
    CHECK(text == raw);  // fixtures ship in canonical form
  }
}

TEST_CASE("table parser accepts comments and bare tables") {
  std::istringstream in("# cyclic group\n1 2\n2 1\n");
  CHECK(qf::read_table(in) == load("z2"));

  std::istringstream bad("n=2\n1 2\n2 x\n");
  CHECK_THROWS_AS(qf::read_table(bad), qf::ParseError);

  std::istringstream short_row("n=3\n1 2 3\n2 3\n3 1 2\n");
  CHECK_THROWS_AS(qf::read_table(short_row), qf::ParseError);

  std::istringstream ragged("1 2 3\n2 3 1\n");
  CHECK_THROWS_AS(qf::read_table(ragged), qf::ParseError);

  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(qf::read_table(empty), qf::ParseError);

  std::istringstream nonlatin("n=2\n1 2\n1 2\n");
  CHECK_THROWS_AS(qf::read_table(nonlatin), qf::TableError);
}
