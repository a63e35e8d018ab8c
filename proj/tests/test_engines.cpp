#include "doctest.h"

#include <memory>

#include "dedekind/congruence.hpp"
#include "dedekind/engines.hpp"
#include "dedekind/oracle.hpp"

#include "json.hpp"

using namespace dedekind;

namespace {

struct Fixture {
  PosetTable table;
  DownTable down;
  PermAction action;
  OrbitTable orbits;
  KernelContext ctx;

  explicit Fixture(int n, std::uint64_t budget = kDefaultTupleBudget)
      : table(enumerate_lattice(n)),
        down(build_down_table(table)),
        action(n),
        orbits(build_orbits(table, action)),
        ctx(table, down, &orbits, nullptr, budget) {}
};

Fixture& fix(int n) {
  static std::unique_ptr<Fixture> cache[7];
  if (!cache[n]) cache[n] = std::make_unique<Fixture>(n);
  return *cache[n];
}

}  // namespace

TEST_CASE("pair kernel over the base-2 lattice") {
  Fixture& f = fix(2);
  const std::uint64_t expect[6][6] = {
      {6, 5, 3, 3, 2, 1},  {5, 10, 6, 6, 4, 2}, {3, 6, 9, 4, 6, 3},
      {3, 6, 4, 9, 6, 3},  {2, 4, 6, 6, 10, 5}, {1, 2, 3, 3, 5, 6}};
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      CHECK(g_pair(f.table.at(i), f.table.at(j), f.ctx) == BigCount(expect[i][j]));
    }
  }
  CHECK(g_pair(f.table.at(0), f.table.at(0), f.ctx) == 6);

  // definitional cross-check: maps from the 2-cube with 01 -> x, 10 -> y
  const auto b2 = oracle::SmallPoset::cube(2);
  for (Word x : f.table.words()) {
    for (Word y : f.table.words()) {
      const std::pair<unsigned, Word> fixed[] = {{2, x}, {1, y}};
      CHECK(g_pair(Mbf(x, 2), Mbf(y, 2), f.ctx) ==
            oracle::count_monotone_maps(b2, f.table, fixed));
    }
  }
}

TEST_CASE("exact counts via the pair kernel") {
  CHECK(d_via_g(fix(2).ctx) == 168);
  CHECK(d_via_g(fix(3).ctx) == 7581);
  CHECK(d_via_g(fix(4).ctx) == 7828354);
}

TEST_CASE("restricted pair-kernel sum over the base-2 lattice") {
  const ResidueWitness w = residue_via_g(fix(2).ctx, 2);
  CHECK(w.sum == 70);
  CHECK(w.residue == 0);
  CHECK(w.target == 4);
  CHECK(w.base_arity == 2);
  CHECK(w.method == "g2");
}

TEST_CASE("triple kernel at arity zero, frozen from the map oracle") {
  Fixture& f = fix(0);
  const Mbf zero(0, 0), one(1, 0);
  // definitional values: monotone maps from the 3-cube into {0, 1} fixing
  // the three weight-1 points
  CHECK(h_triple(zero, zero, zero, f.ctx) == 9);
  CHECK(h_triple(one, one, one, f.ctx) == 2);
  CHECK(h_triple(zero, zero, one, f.ctx) == 2);
  CHECK(h_triple(zero, one, one, f.ctx) == 1);

  const auto b3 = oracle::SmallPoset::cube(3);
  BigCount total = 0;
  for (Word x : f.table.words()) {
    for (Word y : f.table.words()) {
      for (Word z : f.table.words()) {
        const std::pair<unsigned, Word> fixed[] = {{4, x}, {2, y}, {1, z}};
        const BigCount v = h_triple(Mbf(x, 0), Mbf(y, 0), Mbf(z, 0), f.ctx);
        CHECK(v == oracle::count_monotone_maps(b3, f.table, fixed));
        total += v;
      }
    }
  }
  CHECK(total == 20);
}

TEST_CASE("triple kernel matches the map oracle at arity one") {
  Fixture& f = fix(1);
  const auto b3 = oracle::SmallPoset::cube(3);
  for (Word x : f.table.words()) {
    for (Word y : f.table.words()) {
      for (Word z : f.table.words()) {
        const std::pair<unsigned, Word> fixed[] = {{4, x}, {2, y}, {1, z}};
        CHECK(h_triple(Mbf(x, 1), Mbf(y, 1), Mbf(z, 1), f.ctx) ==
              oracle::count_monotone_maps(b3, f.table, fixed));
      }
    }
  }
}

TEST_CASE("exact counts via the triple kernel") {
  CHECK(d_via_h(fix(0).ctx) == 20);
  CHECK(d_via_h(fix(1).ctx) == 168);
  CHECK(d_via_h(fix(2).ctx) == 7581);
  CHECK(d_via_h(fix(3).ctx) == 7828354);
}

TEST_CASE("reduced triple-kernel sums at base 4 are verbatim") {
  Fixture& f = fix(4);
  const std::pair<std::uint64_t, const char*> expect[] = {
      {2, "2320978352"},
      {3, "74128573428"},
      {4, "128268820802"},
      {6, "89637133284"},
      {12, "566167187562"}};
  const std::uint64_t residues[] = {0, 0, 2, 0, 6};
  for (std::size_t i = 0; i < 5; ++i) {
    const ResidueWitness w = residue_via_h(f.ctx, expect[i].first);
    CHECK(to_decimal(w.sum) == expect[i].second);
    CHECK(w.residue == residues[i]);
    CHECK(w.residue == known_residue(7, expect[i].first));
    CHECK(w.target == 7);
  }
}

TEST_CASE("chain-collapse kernel") {
  Fixture& f0 = fix(0);
  const Mbf zero(0, 0), one(1, 0);
  CHECK(h_prime(zero, zero, zero, f0.ctx) == 2);
  CHECK(h_prime(one, one, one, f0.ctx) == 3);

  // full agreement with the six-element poset a < b < {c,d,e} < f
  const std::pair<unsigned, unsigned> covers[] = {{0, 1}, {1, 2}, {1, 3},
                                                  {1, 4}, {2, 5}, {3, 5}, {4, 5}};
  const auto cpos = oracle::SmallPoset::from_covers(6, covers);
  for (int n = 0; n <= 1; ++n) {
    Fixture& f = fix(n);
    for (Word u : f.table.words()) {
      for (Word v : f.table.words()) {
        for (Word w : f.table.words()) {
          const std::pair<unsigned, Word> fixed[] = {{2, u}, {3, v}, {4, w}};
          CHECK(h_prime(Mbf(u, n), Mbf(v, n), Mbf(w, n), f.ctx) ==
                oracle::count_monotone_maps(cpos, f.table, fixed));
        }
      }
    }
  }
}

TEST_CASE("diagonal triple-kernel sums collapse to the smaller poset") {
  // sum_x H(x,x,x) = sum_{u,v,w} H'(u,v,w), and the diagonal of H' gives the
  // 4-chain count; both identities exactly, for n <= 2.
  for (int n = 0; n <= 2; ++n) {
    Fixture& f = fix(n);
    BigCount diag_h = 0;
    for (Word x : f.table.words()) {
      diag_h += h_triple(Mbf(x, n), Mbf(x, n), Mbf(x, n), f.ctx);
    }
    BigCount full_hp = 0, diag_hp = 0;
    for (Word u : f.table.words()) {
      diag_hp += h_prime(Mbf(u, n), Mbf(u, n), Mbf(u, n), f.ctx);
      for (Word v : f.table.words()) {
        for (Word w : f.table.words()) {
          full_hp += h_prime(Mbf(u, n), Mbf(v, n), Mbf(w, n), f.ctx);
        }
      }
    }
    CHECK(diag_h == full_hp);
    CHECK(diag_hp == p4_count(f.ctx));

    // three-bucket reduction of the full collapse sum
    BigCount buckets = diag_hp;
    for (std::size_t i = 0; i < f.table.size(); ++i) {
      for (std::size_t j = i + 1; j < f.table.size(); ++j) {
        const Mbf u = f.table.at(i), v = f.table.at(j);
        buckets += 3 * (h_prime(u, u, v, f.ctx) + h_prime(u, v, v, f.ctx));
        for (std::size_t k = j + 1; k < f.table.size(); ++k) {
          buckets += 6 * h_prime(u, v, f.table.at(k), f.ctx);
        }
      }
    }
    CHECK(buckets == full_hp);
  }
}

TEST_CASE("4-chain counts and the matrix cross-check") {
  const BigCount expect[] = {5, 15, 105, 3490, 2068224};
  for (int n = 0; n <= 4; ++n) {
    CHECK(p4_count(fix(n).ctx) == expect[n]);
  }
  for (int n = 0; n <= 2; ++n) {
    CHECK(p4_count(fix(n).ctx) ==
          oracle::count_monotone_maps(oracle::SmallPoset::chain(4),
                                      fix(n).table));
  }

  const auto cube1 = order_matrix_cube(fix(1).ctx);
  const std::uint64_t m1[3][3] = {{1, 3, 6}, {0, 1, 3}, {0, 0, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(cube1[i][j] == m1[i][j]);

  const auto cube2 = order_matrix_cube(fix(2).ctx);
  const std::uint64_t m2[6][6] = {
      {1, 3, 6, 6, 14, 20}, {0, 1, 3, 3, 9, 14}, {0, 0, 1, 0, 3, 6},
      {0, 0, 0, 1, 3, 6},   {0, 0, 0, 0, 1, 3},  {0, 0, 0, 0, 0, 1}};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(cube2[i][j] == m2[i][j]);

  for (int n = 0; n <= 3; ++n) {
    CHECK(matrix_cube_sum(fix(n).ctx) == p4_count(fix(n).ctx));
  }
  CHECK_THROWS_AS(order_matrix_cube(fix(4).ctx), ResourceLimitError);

  const ResidueWitness w = residue_via_p4(fix(2).ctx);
  CHECK(w.sum == 105);
  CHECK(w.residue == known_residue(5, 3));
  CHECK(w.method == "p4mod3");
}

TEST_CASE("six-fold kernel at arity zero, frozen from the map oracle") {
  Fixture& f = fix(0);
  const Mbf zero(0, 0), one(1, 0);
  CHECK(f_six(zero, zero, zero, zero, zero, zero, f.ctx) == 17);
  CHECK(f_six(one, one, one, one, one, one, f.ctx) == 17);

  // all 64 tuples against the oracle, and the total
  const auto b4 = oracle::SmallPoset::cube(4);
  const unsigned middle[6] = {12, 10, 9, 6, 5, 3};
  BigCount total = 0;
  for (unsigned mask = 0; mask < 64; ++mask) {
    Mbf v[6];
    for (int k = 0; k < 6; ++k) v[k] = Mbf((mask >> k) & 1, 0);
    std::pair<unsigned, Word> fixed[6];
    for (int k = 0; k < 6; ++k) fixed[k] = {middle[k], v[k].bits};
    const BigCount val = f_six(v[0], v[1], v[2], v[3], v[4], v[5], f.ctx);
    CHECK(val == oracle::count_monotone_maps(b4, f.table, fixed));
    total += val;
  }
  CHECK(total == 168);
}

TEST_CASE("exact counts via the six-fold kernel") {
  CHECK(d_via_f(fix(0).ctx) == 168);
  CHECK(d_via_f(fix(1).ctx) == 7581);
  CHECK(d_via_f(fix(2).ctx) == 7828354);
}

TEST_CASE("reduced six-fold sum at base 4 mod 2 is verbatim") {
  const ResidueWitness w = residue_via_f(fix(4).ctx, 2);
  CHECK(to_decimal(w.sum) == "53336702474849828");
  CHECK(w.residue == 0);
  CHECK(w.residue == known_residue(8, 2));
  CHECK(w.target == 8);
}

TEST_CASE("block sums agree with per-call kernels") {
  Fixture& f = fix(1);
  std::vector<std::pair<Word, std::uint32_t>> outer;
  for (Word w : f.table.words()) outer.emplace_back(w, 1);

  BigCount g_direct = 0, h_direct = 0;
  for (Word x : f.table.words()) {
    for (Word y : f.table.words()) {
      g_direct += g_pair(Mbf(x, 1), Mbf(y, 1), f.ctx);
      for (Word z : f.table.words()) {
        h_direct += h_triple(Mbf(x, 1), Mbf(y, 1), Mbf(z, 1), f.ctx);
      }
    }
  }
  CHECK(g_block_sum(f.ctx, outer, f.table.words()) == g_direct);
  CHECK(h_block_sum(f.ctx, outer, f.table.words()) == h_direct);

  BigCount f_direct = 0;
  std::vector<std::size_t> idx(6, 0);
  for (;;) {
    f_direct += f_six(f.table.at(idx[0]), f.table.at(idx[1]), f.table.at(idx[2]),
                      f.table.at(idx[3]), f.table.at(idx[4]), f.table.at(idx[5]),
                      f.ctx);
    int k = 5;
    while (k >= 0 && ++idx[k] == f.table.size()) idx[k--] = 0;
    if (k < 0) break;
  }
  CHECK(f_block_sum(f.ctx, outer, f.table.words()) == f_direct);
}

TEST_CASE("budget refusals carry the tuple count") {
  Fixture small(5, 1000);  // tiny budget
  CHECK_THROWS_AS(d_via_h(small.ctx), BudgetError);
  try {
    d_via_h(small.ctx);
  } catch (const BudgetError& e) {
    CHECK(e.tuples() == 7581ull * 7581 * 7581);
  }

  // the base-4 mod-12 six-fold run exceeds the default budget
  Fixture& f4 = fix(4);
  CHECK_THROWS_AS(residue_via_f(f4.ctx, 12), BudgetError);
}

TEST_CASE("self-dual counts") {
  const BigCount expect[] = {0, 1, 2, 4, 12, 81};
  for (int n = 0; n <= 5; ++n) {
    const PosetTable t = enumerate_lattice(n);
    CHECK(selfdual_count(t) == expect[n]);
  }
  const ResidueWitness w = residue_via_lambda(enumerate_lattice(5));
  CHECK(w.sum == 81);
  CHECK(w.residue == 1);
  CHECK(w.residue == known_residue(5, 2));
  CHECK(w.method == "lambda2");
}

TEST_CASE("witness JSON carries integers as decimal strings") {
  const ResidueWitness w = residue_via_h(fix(4).ctx, 12);
  const auto j = nlohmann::json::parse(witness_json(w));
  CHECK(j.at("sum").is_string());
  CHECK(j.at("residue").is_string());
  CHECK(j.at("target").is_string());
  CHECK(j.at("sum").get<std::string>() == "566167187562");
  CHECK(j.at("residue").get<std::string>() == "6");
  CHECK(j.at("method").get<std::string>() == "h3");
  CHECK(big_from_decimal(j.at("sum").get<std::string>()) == w.sum);
}

TEST_CASE("context validation") {
  const PosetTable t2 = enumerate_lattice(2);
  const PosetTable t3 = enumerate_lattice(3);
  const DownTable down3 = build_down_table(t3);
  CHECK_THROWS_AS(KernelContext(t2, down3), std::invalid_argument);

  Fixture& f2 = fix(2);
  CHECK_THROWS_AS(g_pair(Mbf::from_string("01"), Mbf::from_string("01"), f2.ctx),
                  std::invalid_argument);

  const PosetTable t2b = enumerate_lattice(2);
  const DownTable down2 = build_down_table(t2b);
  KernelContext no_orbits(t2b, down2);
  CHECK_THROWS_AS(residue_via_g(no_orbits, 2), std::invalid_argument);
}
