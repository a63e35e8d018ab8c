#include "doctest.h"

#include <algorithm>
#include <array>
#include <memory>
#include <random>

#include "dedekind/engines.hpp"
#include "dedekind/oracle.hpp"

using namespace dedekind;

namespace {

struct Fixture {
  PosetTable table;
  DownTable down;
  PermAction action;
  OrbitTable orbits;
  KernelContext ctx;

  explicit Fixture(int n)
      : table(enumerate_lattice(n)),
        down(build_down_table(table)),
        action(n),
        orbits(build_orbits(table, action)),
        ctx(table, down, &orbits) {}
};

Fixture& fix(int n) {
  static std::unique_ptr<Fixture> cache[7];
  if (!cache[n]) cache[n] = std::make_unique<Fixture>(n);
  return *cache[n];
}

// The six weight-2 points of the 4-cube in kernel argument order.
constexpr unsigned kMiddle[6] = {12, 10, 9, 6, 5, 3};

unsigned remap_point(const Permutation& pi, unsigned i) {
  unsigned out = 0;
  for (std::size_t j = 0; j < pi.size(); ++j) out |= ((i >> pi[j]) & 1u) << j;
  return out;
}

std::array<unsigned, 6> induced_arg_perm(const Permutation& sigma) {
  std::array<unsigned, 6> out{};
  for (unsigned t = 0; t < 6; ++t) {
    const unsigned image = remap_point(sigma, kMiddle[t]);
    const unsigned* pos = std::find(std::begin(kMiddle), std::end(kMiddle), image);
    REQUIRE(pos != std::end(kMiddle));
    out[t] = static_cast<unsigned>(pos - std::begin(kMiddle));
  }
  return out;
}

}  // namespace

TEST_CASE("kernels are invariant under argument permutations") {
  std::mt19937_64 rng(1001);
  Fixture& f3 = fix(3);
  std::uniform_int_distribution<std::size_t> pick3(0, f3.table.size() - 1);
  for (int it = 0; it < 2000; ++it) {
    const Mbf x = f3.table.at(pick3(rng));
    const Mbf y = f3.table.at(pick3(rng));
    const Mbf z = f3.table.at(pick3(rng));
    CHECK(g_pair(x, y, f3.ctx) == g_pair(y, x, f3.ctx));
    const BigCount h = h_triple(x, y, z, f3.ctx);
    CHECK(h == h_triple(x, z, y, f3.ctx));
    CHECK(h == h_triple(y, x, z, f3.ctx));
    CHECK(h == h_triple(z, y, x, f3.ctx));
    const BigCount hp = h_prime(x, y, z, f3.ctx);
    CHECK(hp == h_prime(z, x, y, f3.ctx));
    CHECK(hp == h_prime(y, z, x, f3.ctx));
  }
}

TEST_CASE("six-fold kernel respects the induced middle-layer symmetries") {
  std::mt19937_64 rng(1002);
  Fixture& f2 = fix(2);
  std::uniform_int_distribution<std::size_t> pick(0, f2.table.size() - 1);
  const auto sigmas = all_permutations(4);
  REQUIRE(sigmas.size() == 24);
  for (int it = 0; it < 300; ++it) {
    std::array<Mbf, 6> v;
    for (auto& m : v) m = f2.table.at(pick(rng));
    const BigCount base = f_six(v[0], v[1], v[2], v[3], v[4], v[5], f2.ctx);
    for (const Permutation& sigma : sigmas) {
      const auto a = induced_arg_perm(sigma);
      CHECK(base == f_six(v[a[0]], v[a[1]], v[a[2]], v[a[3]], v[a[4]], v[a[5]],
                          f2.ctx));
    }
  }
}

TEST_CASE("kernels are unchanged under simultaneous relabelling") {
  std::mt19937_64 rng(1003);
  for (int n = 2; n <= 4; ++n) {
    Fixture& f = fix(n);
    const auto perms = all_permutations(n);
    std::uniform_int_distribution<std::size_t> pick(0, f.table.size() - 1);
    std::uniform_int_distribution<std::size_t> pperm(0, perms.size() - 1);
    for (int it = 0; it < 400; ++it) {
      const Permutation& pi = perms[pperm(rng)];
      const Mbf x = f.table.at(pick(rng));
      const Mbf y = f.table.at(pick(rng));
      const Mbf z = f.table.at(pick(rng));
      CHECK(g_pair(x, y, f.ctx) ==
            g_pair(apply_perm(pi, x), apply_perm(pi, y), f.ctx));
      CHECK(h_triple(x, y, z, f.ctx) ==
            h_triple(apply_perm(pi, x), apply_perm(pi, y), apply_perm(pi, z),
                     f.ctx));
    }
  }
  // six-fold kernel at base 2
  Fixture& f2 = fix(2);
  const auto perms2 = all_permutations(2);
  std::uniform_int_distribution<std::size_t> pick2(0, f2.table.size() - 1);
  for (int it = 0; it < 200; ++it) {
    const Permutation& pi = perms2[static_cast<std::size_t>(it) % 2];
    std::array<Mbf, 6> v, w;
    for (int k = 0; k < 6; ++k) {
      v[k] = f2.table.at(pick2(rng));
      w[k] = apply_perm(pi, v[k]);
    }
    CHECK(f_six(v[0], v[1], v[2], v[3], v[4], v[5], f2.ctx) ==
          f_six(w[0], w[1], w[2], w[3], w[4], w[5], f2.ctx));
  }
}

TEST_CASE("class-restricted block sums scale by the orbit size") {
  // sum over a whole class equals the orbit size times any single member's
  // row sum.
  for (int n = 2; n <= 3; ++n) {
    Fixture& f = fix(n);
    for (std::size_t c = 0; c < f.orbits.class_count(); ++c) {
      std::vector<std::pair<Word, std::uint32_t>> single = {
          {f.table.word(f.orbits.reps[c]), 1}};
      std::vector<std::pair<Word, std::uint32_t>> whole;
      for (std::size_t i = 0; i < f.table.size(); ++i) {
        if (f.orbits.class_of[i] == c) whole.emplace_back(f.table.word(i), 1);
      }
      const BigCount one = g_block_sum(f.ctx, single, f.table.words());
      const BigCount all = g_block_sum(f.ctx, whole, f.table.words());
      CHECK(all == one * f.orbits.gamma[c]);
    }
  }
}

TEST_CASE("block sums over the divisible part vanish modulo m") {
  for (int n = 1; n <= 3; ++n) {
    Fixture& f = fix(n);
    for (std::uint64_t m : {2u, 3u}) {
      std::vector<std::pair<Word, std::uint32_t>> divisible;
      for (std::size_t i = 0; i < f.table.size(); ++i) {
        if (f.orbits.gamma[f.orbits.class_of[i]] % m == 0) {
          divisible.emplace_back(f.table.word(i), 1);
        }
      }
      if (divisible.empty()) continue;
      CHECK(mod_u64(g_block_sum(f.ctx, divisible, f.table.words()), m) == 0);
      CHECK(mod_u64(h_block_sum(f.ctx, divisible, f.table.words()), m) == 0);
      CHECK(mod_u64(f_block_sum(f.ctx, divisible, f.table.words()), m) == 0);
    }
  }
}

TEST_CASE("interval counts match the scan oracle for every pair, n <= 4") {
  for (int n = 0; n <= 4; ++n) {
    const PosetTable& t = fix(n).table;
    bool pass = true;
    for (std::size_t i = 0; i < t.size() && pass; ++i) {
      for (std::size_t j = 0; j < t.size(); ++j) {
        if (interval_count(t.at(i), t.at(j), t) !=
            BigCount(oracle::interval_scan(t.word(i), t.word(j), t))) {
          pass = false;
          break;
        }
      }
    }
    CHECK(pass);
  }
}

TEST_CASE("duality identity for up-counts, exhaustive at n = 5") {
  const PosetTable t5 = enumerate_lattice(5);
  const DownTable down5 = build_down_table(t5);
  bool pass = true;
  for (std::size_t i = 0; i < t5.size(); ++i) {
    const Word w = t5.word(i);
    std::uint64_t above = 0;
    for (Word z : t5.words()) {
      if (leq_words(w, z)) ++above;
    }
    if (above != down5.counts[t5.position_of(dual_word(w, 5))]) {
      pass = false;
      break;
    }
  }
  CHECK(pass);
}

TEST_CASE("thread count does not change any result") {
  const PosetTable t4 = enumerate_lattice(4);
  const DownTable down4 = build_down_table(t4);
  const PermAction action4(4);
  const OrbitTable orbits4 = build_orbits(t4, action4);
  const Executor one(1);
  const Executor four(4);
  KernelContext a(t4, down4, &orbits4, &one);
  KernelContext b(t4, down4, &orbits4, &four);

  CHECK(d_via_g(a) == d_via_g(b));
  CHECK(d_via_h(a) == d_via_h(b));
  CHECK(p4_count(a) == p4_count(b));
  CHECK(selfdual_count(a) == selfdual_count(b));
  for (std::uint64_t m : {2u, 12u}) {
    CHECK(residue_via_h(a, m).sum == residue_via_h(b, m).sum);
  }
  CHECK(residue_via_f(a, 2).sum == residue_via_f(b, 2).sum);

  const OrbitTable orbits_par = build_orbits(t4, action4, &four);
  CHECK(orbits_par.canon == orbits4.canon);
  CHECK(orbits_par.gamma == orbits4.gamma);
  const DownTable down_par = build_down_table(t4, &four);
  CHECK(down_par.counts == down4.counts);
}
