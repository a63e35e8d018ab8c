#include "doctest.h"

#include <random>

#include "dedekind/intervals.hpp"
#include "dedekind/oracle.hpp"

using namespace dedekind;

TEST_CASE("down table values over the base-2 lattice") {
  const PosetTable t2 = enumerate_lattice(2);
  const DownTable down = build_down_table(t2);
  CHECK(down.counts[t2.position_of(Mbf::from_string("1111").bits)] == 6);
  CHECK(down.counts[t2.position_of(Mbf::from_string("0001").bits)] == 2);
  CHECK(down.counts.front() == 1);  // bottom
}

TEST_CASE("down table equals the scan everywhere, n <= 4") {
  for (int n = 0; n <= 4; ++n) {
    const PosetTable t = enumerate_lattice(n);
    const DownTable down = build_down_table(t);
    for (std::size_t i = 0; i < t.size(); ++i) {
      CHECK(down.counts[i] == oracle::interval_scan(0, t.word(i), t));
    }
  }
}

TEST_CASE("interval counts") {
  const PosetTable t2 = enumerate_lattice(2);
  CHECK(interval_count(Mbf::bottom(2), Mbf::top(2), t2) == 6);
  CHECK(interval_count(Mbf::from_string("0001"), Mbf::from_string("0111"), t2) == 4);
  CHECK(interval_count(Mbf::from_string("0011"), Mbf::from_string("0011"), t2) == 1);
  // zero exactly when the endpoints are incomparable
  CHECK(interval_count(Mbf::from_string("0011"), Mbf::from_string("0101"), t2) == 0);
}

TEST_CASE("up counts via duality") {
  const PosetTable t2 = enumerate_lattice(2);
  const DownTable down = build_down_table(t2);
  CHECK(up_count(Mbf::from_string("0111"), t2, down) == 2);
  CHECK(up_count(Mbf::from_string("0011"), t2, down) == 3);
  CHECK(up_count(Mbf::bottom(2), t2, down) == 6);

  for (int n = 2; n <= 4; ++n) {
    const PosetTable t = enumerate_lattice(n);
    const DownTable dn = build_down_table(t);
    for (std::size_t i = 0; i < t.size(); ++i) {
      std::uint64_t above = 0;
      for (Word z : t.words()) {
        if (leq_words(t.word(i), z)) ++above;
      }
      CHECK(above == up_count_word(t.word(i), t, dn));
    }
  }
}

TEST_CASE("upsets and downsets") {
  const PosetTable t2 = enumerate_lattice(2);
  const auto up = upset(Mbf::from_string("0111"), t2);
  REQUIRE(up.size() == 2);
  CHECK(up[0].to_string() == "0111");
  CHECK(up[1].to_string() == "1111");

  const auto top_up = upset(Mbf::top(2), t2);
  REQUIRE(top_up.size() == 1);
  CHECK(top_up[0] == Mbf::top(2));

  const PosetTable t1 = enumerate_lattice(1);
  const auto dn = downset(Mbf::from_string("01"), t1);
  REQUIRE(dn.size() == 2);
  CHECK(dn[0].to_string() == "00");
  CHECK(dn[1].to_string() == "01");

  // |upset(x)| equals the up-count over all of D_3
  const PosetTable t3 = enumerate_lattice(3);
  const DownTable down3 = build_down_table(t3);
  for (std::size_t i = 0; i < t3.size(); ++i) {
    CHECK(upset_words(t3.word(i), t3).size() == up_count_word(t3.word(i), t3, down3));
  }
}

TEST_CASE("down-count totals count the monotone pairs") {
  // sum of re(bottom, x) over D_n equals |D_{n+1}|: a pair y <= x of
  // same-arity functions is exactly an element one arity up.
  for (int n = 0; n <= 4; ++n) {
    const PosetTable t = enumerate_lattice(n);
    const DownTable down = build_down_table(t);
    std::uint64_t pairs = 0;
    for (std::uint64_t c : down.counts) pairs += c;
    CHECK(pairs == enumerate_lattice(n + 1).size());
  }
}

TEST_CASE("half-split interval counting at the one-word limit") {
  const PosetTable t6 = enumerate_lattice(6);
  ReScratch re(t6);
  CHECK(re.re(0, lattice_mask(6)) == t6.size());

  // spot checks against direct scans of the full table
  std::mt19937_64 rng(97);
  std::uniform_int_distribution<std::size_t> pick(0, t6.size() - 1);
  for (int it = 0; it < 4; ++it) {
    const Word x = t6.word(pick(rng));
    CHECK(re.re(x, x) == 1);
    CHECK(re.re(0, x) == oracle::interval_scan(0, x, t6));
    CHECK(re.re(x, lattice_mask(6)) == oracle::interval_scan(x, lattice_mask(6), t6));
  }
  for (int it = 0; it < 4; ++it) {
    const Word x = t6.word(pick(rng));
    const Word y = t6.word(pick(rng));
    const Word lo = meet_words(x, y);
    const Word hi = join_words(x, y);
    CHECK(re.re(lo, hi) == oracle::interval_scan(lo, hi, t6));
  }
}
