#include "dedekind/engines.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

namespace dedekind {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start)
      .count();
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<std::uint64_t>::max() / b) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

std::uint64_t saturating_pow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r = saturating_mul(r, base);
  return r;
}

void check_budget(const KernelContext& ctx, std::uint64_t tuples,
                  const std::string& what) {
  if (tuples > ctx.tuple_budget()) {
    throw BudgetError(what + " needs " + std::to_string(tuples) +
                          " kernel evaluations, above the budget of " +
                          std::to_string(ctx.tuple_budget()),
                      tuples);
  }
}

// Open-addressing u64 -> u64 memo for the six-fold kernel factors. Any key
// value is legal, so occupancy is tracked in a side bitmap.
class FlatMap64 {
 public:
  explicit FlatMap64(std::size_t initial = 1u << 14) { rehash(initial); }

  const std::uint64_t* find(std::uint64_t key) const {
    std::size_t h = hash(key);
    for (;;) {
      if (!test(h)) return nullptr;
      if (keys_[h] == key) return &vals_[h];
      h = (h + 1) & mask_;
    }
  }

  void insert(std::uint64_t key, std::uint64_t value) {
    if ((filled_ + 1) * 5 > capacity() * 3) grow();
    std::size_t h = hash(key);
    while (test(h)) {
      if (keys_[h] == key) return;
      h = (h + 1) & mask_;
    }
    set(h);
    keys_[h] = key;
    vals_[h] = value;
    ++filled_;
  }

 private:
  std::size_t capacity() const { return mask_ + 1; }
  bool test(std::size_t i) const { return (used_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { used_[i >> 6] |= std::uint64_t{1} << (i & 63); }

  std::size_t hash(std::uint64_t k) const {
    k += 0x9E3779B97F4A7C15ull;
    k = (k ^ (k >> 30)) * 0xBF58476D1CE4E5B9ull;
    k = (k ^ (k >> 27)) * 0x94D049BB133111EBull;
    return static_cast<std::size_t>(k ^ (k >> 31)) & mask_;
  }

  void rehash(std::size_t cap) {
    mask_ = cap - 1;
    keys_.assign(cap, 0);
    vals_.assign(cap, 0);
    used_.assign((cap + 63) / 64, 0);
    filled_ = 0;
  }

  void grow() {
    std::vector<std::uint64_t> keys = std::move(keys_);
    std::vector<std::uint64_t> vals = std::move(vals_);
    std::vector<std::uint64_t> used = std::move(used_);
    const std::size_t old_cap = mask_ + 1;
    rehash(old_cap * 2);
    for (std::size_t i = 0; i < old_cap; ++i) {
      if ((used[i >> 6] >> (i & 63)) & 1u) {
        std::size_t h = hash(keys[i]);
        while (test(h)) h = (h + 1) & mask_;
        set(h);
        keys_[h] = keys[i];
        vals_[h] = vals[i];
        ++filled_;
      }
    }
  }

  std::vector<std::uint64_t> keys_;
  std::vector<std::uint64_t> vals_;
  std::vector<std::uint64_t> used_;
  std::size_t mask_ = 0;
  std::size_t filled_ = 0;
};

}  // namespace

// ---- KernelContext ----------------------------------------------------------

KernelContext::KernelContext(const PosetTable& table, const DownTable& down,
                             const OrbitTable* orbits, const Executor* exec,
                             std::uint64_t tuple_budget)
    : table_(table),
      down_(down),
      orbits_(orbits),
      exec_(exec ? exec : &serial_executor()),
      budget_(tuple_budget) {
  if (down_.arity != table_.arity()) {
    throw std::invalid_argument("down table arity does not match lattice");
  }
  if (down_.counts.size() != table_.size()) {
    throw std::invalid_argument("down table size does not match lattice");
  }
  if (orbits_ && orbits_->arity != table_.arity()) {
    throw std::invalid_argument("orbit table arity does not match lattice");
  }

  const int n = table_.arity();
  const std::size_t d = table_.size();

  if (n <= 4) {
    pos_by_mask_.assign(lattice_mask(n) + 1, std::numeric_limits<std::uint32_t>::max());
    for (std::size_t i = 0; i < d; ++i) {
      pos_by_mask_[table_.word(i)] = static_cast<std::uint32_t>(i);
    }
  }

  up_.resize(d);
  exec_->run_chunks(d, [&](std::size_t, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      up_[i] = down_.counts[pos_of(dual_word(table_.word(i), n))];
    }
  });

  if (n <= 4) {
    const auto& words = table_.words();
    re_matrix_.assign(d * d, 0);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i; j < d; ++j) {
        if (!leq_words(words[i], words[j])) continue;
        std::uint32_t count = 0;
        for (std::size_t k = i; k <= j; ++k) {
          if (leq_words(words[i], words[k]) && leq_words(words[k], words[j])) ++count;
        }
        re_matrix_[i * d + j] = count;
      }
    }
    re_matrix_t_.assign(d * d, 0);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        re_matrix_t_[j * d + i] = re_matrix_[i * d + j];
      }
    }
    build_updown_lists();
  }
}

const OrbitTable& KernelContext::orbits() const {
  if (!orbits_) {
    throw std::invalid_argument("this computation requires an orbit table");
  }
  return *orbits_;
}

void KernelContext::build_updown_lists() const {
  const auto& words = table_.words();
  const std::size_t d = words.size();
  upsets_.assign(d, {});
  downsets_.assign(d, {});
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      if (leq_words(words[i], words[j])) {
        upsets_[i].push_back(static_cast<std::uint32_t>(j));
        downsets_[j].push_back(static_cast<std::uint32_t>(i));
      }
    }
  }
}

void KernelContext::ensure_updown_lists() const {
  if (arity() >= kMaxArity) return;  // D_6 lists would hold d_7 entries
  std::call_once(updown_once_, [this] {
    if (!has_updown_lists()) build_updown_lists();
  });
}

// ---- shared helpers ----------------------------------------------------------

namespace {

void require_ctx_arity(const Mbf& x, const KernelContext& ctx) {
  if (x.arity != ctx.arity()) {
    throw std::invalid_argument("argument arity does not match context");
  }
}

std::vector<std::pair<Word, std::uint32_t>> all_reps(const KernelContext& ctx) {
  const OrbitTable& orbits = ctx.orbits();
  std::vector<std::pair<Word, std::uint32_t>> out;
  out.reserve(orbits.class_count());
  for (std::size_t c = 0; c < orbits.class_count(); ++c) {
    out.emplace_back(ctx.table().word(orbits.reps[c]), orbits.gamma[c]);
  }
  return out;
}

std::vector<std::pair<Word, std::uint32_t>> ec_reps(const EComplement& ec) {
  std::vector<std::pair<Word, std::uint32_t>> out;
  out.reserve(ec.rep_words.size());
  for (std::size_t i = 0; i < ec.rep_words.size(); ++i) {
    out.emplace_back(ec.rep_words[i], ec.rep_gammas[i]);
  }
  return out;
}

BigCount combine(std::vector<BigCount>& partials) {
  BigCount total = 0;
  for (const BigCount& p : partials) total += p;
  return total;
}

// ---- pair kernel internals ----

std::uint64_t g_value(const KernelContext& ctx, Word x, Word y) {
  return ctx.up_at(ctx.pos_of(x | y)) * ctx.down_at(ctx.pos_of(x & y));
}

// ---- triple kernel internals ----

// Fast path: dense re matrix and upset lists (n <= 4).
std::uint64_t h_value_fast(const KernelContext& ctx, Word x, Word y, Word z) {
  const std::uint64_t dm = ctx.down_at(ctx.pos_of(x & y & z));
  const std::uint32_t* rxy = ctx.re_row(ctx.pos_of(x | y));
  const std::uint32_t* rxz = ctx.re_row(ctx.pos_of(x | z));
  const std::uint32_t* ryz = ctx.re_row(ctx.pos_of(y | z));
  std::uint64_t s = 0;
  for (std::uint32_t ps : ctx.upset_list(ctx.pos_of(x | y | z))) {
    s += static_cast<std::uint64_t>(rxy[ps]) * rxz[ps] * ryz[ps];
  }
  return dm * s;
}

u128 h_value_generic(const KernelContext& ctx, ReScratch& re, Word x, Word y,
                     Word z) {
  const std::uint64_t dm = ctx.down_at(ctx.pos_of(x & y & z));
  const Word jxy = x | y, jxz = x | z, jyz = y | z;
  u128 s = 0;
  ctx.for_upset_positions(ctx.pos_of(x | y | z), [&](std::uint32_t ps) {
    const Word sw = ctx.table().word(ps);
    const std::uint64_t ab = re.re(jxy, sw) * re.re(jxz, sw);
    s += static_cast<u128>(ab) * re.re(jyz, sw);
  });
  return static_cast<u128>(dm) * s;
}

// ---- six-fold kernel internals ----

std::uint64_t pack4(Word a, Word b, Word c, Word d) {
  return (a << 48) | (b << 32) | (c << 16) | d;  // masks fit in 16 bits for n <= 4
}

std::uint64_t f_upper_fast(const KernelContext& ctx, Word j1, Word j2, Word j3,
                           Word j4, FlatMap64& memo) {
  const std::uint64_t key = pack4(j1, j2, j3, j4);
  if (const std::uint64_t* v = memo.find(key)) return *v;
  const std::uint32_t* r1 = ctx.re_row(ctx.pos_of(j1));
  const std::uint32_t* r2 = ctx.re_row(ctx.pos_of(j2));
  const std::uint32_t* r3 = ctx.re_row(ctx.pos_of(j3));
  const std::uint32_t* r4 = ctx.re_row(ctx.pos_of(j4));
  std::uint64_t s = 0;
  for (std::uint32_t pu : ctx.upset_list(ctx.pos_of(j1 | j2 | j3 | j4))) {
    s += static_cast<std::uint64_t>(r1[pu]) * r2[pu] * r3[pu] * r4[pu];
  }
  memo.insert(key, s);
  return s;
}

std::uint64_t f_lower_fast(const KernelContext& ctx, Word m1, Word m2, Word m3,
                           Word m4, FlatMap64& memo) {
  const std::uint64_t key = pack4(m1, m2, m3, m4);
  if (const std::uint64_t* v = memo.find(key)) return *v;
  const std::uint32_t* r1 = ctx.re_col_row(ctx.pos_of(m1));
  const std::uint32_t* r2 = ctx.re_col_row(ctx.pos_of(m2));
  const std::uint32_t* r3 = ctx.re_col_row(ctx.pos_of(m3));
  const std::uint32_t* r4 = ctx.re_col_row(ctx.pos_of(m4));
  std::uint64_t s = 0;
  for (std::uint32_t pu : ctx.downset_list(ctx.pos_of(m1 & m2 & m3 & m4))) {
    s += static_cast<std::uint64_t>(r1[pu]) * r2[pu] * r3[pu] * r4[pu];
  }
  memo.insert(key, s);
  return s;
}

u128 f_upper_generic(const KernelContext& ctx, ReScratch& re, Word j1, Word j2,
                     Word j3, Word j4) {
  u128 s = 0;
  ctx.for_upset_positions(ctx.pos_of(j1 | j2 | j3 | j4), [&](std::uint32_t pu) {
    const Word u = ctx.table().word(pu);
    const std::uint64_t ab = re.re(j1, u) * re.re(j2, u);
    const std::uint64_t cd = re.re(j3, u) * re.re(j4, u);
    s += static_cast<u128>(ab) * cd;
  });
  return s;
}

u128 f_lower_generic(const KernelContext& ctx, ReScratch& re, Word m1, Word m2,
                     Word m3, Word m4) {
  u128 s = 0;
  ctx.for_downset_positions(ctx.pos_of(m1 & m2 & m3 & m4), [&](std::uint32_t pu) {
    const Word u = ctx.table().word(pu);
    const std::uint64_t ab = re.re(u, m1) * re.re(u, m2);
    const std::uint64_t cd = re.re(u, m3) * re.re(u, m4);
    s += static_cast<u128>(ab) * cd;
  });
  return s;
}

ResidueWitness make_witness(int target, std::uint64_t m, std::string method,
                            BigCount sum, int base_arity, Clock::time_point start) {
  ResidueWitness w;
  w.target = target;
  w.modulus = m;
  w.method = std::move(method);
  w.residue = mod_u64(sum, m);
  w.sum = std::move(sum);
  w.base_arity = base_arity;
  w.elapsed_ms = ms_since(start);
  return w;
}

}  // namespace

// ---- pair kernel --------------------------------------------------------------

BigCount g_pair(const Mbf& x, const Mbf& y, const KernelContext& ctx) {
  require_ctx_arity(x, ctx);
  require_ctx_arity(y, ctx);
  return BigCount(g_value(ctx, x.bits, y.bits));
}

BigCount g_block_sum(const KernelContext& ctx,
                     std::span<const std::pair<Word, std::uint32_t>> outer,
                     std::span<const Word> inner,
                     const Executor::Progress& progress) {
  std::vector<BigCount> partials(Executor::chunk_count(outer.size()));
  ctx.executor().run_chunks(
      outer.size(),
      [&](std::size_t chunk, std::uint64_t begin, std::uint64_t end) {
        u128 acc = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
          const auto& [x, mult] = outer[i];
          u128 row = 0;
          for (Word y : inner) row += g_value(ctx, x, y);
          acc += static_cast<u128>(mult) * row;
        }
        partials[chunk] = big_from_u128(acc);
      },
      progress ? progress : ctx.progress);
  return combine(partials);
}

BigCount d_via_g(const KernelContext& ctx) {
  const auto outer = all_reps(ctx);
  return g_block_sum(ctx, outer, ctx.table().words());
}

ResidueWitness residue_via_g(const KernelContext& ctx, std::uint64_t m) {
  const auto start = Clock::now();
  const EComplement ec = e_complement(ctx.table(), ctx.orbits(), m);
  const auto outer = ec_reps(ec);
  BigCount sum = g_block_sum(ctx, outer, ec.elements);
  return make_witness(ctx.arity() + 2, m, "g2", std::move(sum), ctx.arity(), start);
}

// ---- triple kernel --------------------------------------------------------------

BigCount h_triple(const Mbf& x, const Mbf& y, const Mbf& z,
                  const KernelContext& ctx) {
  require_ctx_arity(x, ctx);
  require_ctx_arity(y, ctx);
  require_ctx_arity(z, ctx);
  if (ctx.has_re_matrix()) {
    return BigCount(h_value_fast(ctx, x.bits, y.bits, z.bits));
  }
  ReScratch re(ctx.table());
  return big_from_u128(h_value_generic(ctx, re, x.bits, y.bits, z.bits));
}

BigCount h_block_sum(const KernelContext& ctx,
                     std::span<const std::pair<Word, std::uint32_t>> outer,
                     std::span<const Word> inner,
                     const Executor::Progress& progress) {
  check_budget(ctx,
               saturating_mul(outer.size(), saturating_pow(inner.size(), 2)),
               "triple-kernel block sum");
  ctx.ensure_updown_lists();
  const std::uint64_t items = outer.size() * inner.size();
  std::vector<BigCount> partials(Executor::chunk_count(items));
  ctx.executor().run_chunks(
      items,
      [&](std::size_t chunk, std::uint64_t begin, std::uint64_t end) {
        BigCount local = 0;
        std::unique_ptr<ReScratch> re;
        if (!ctx.has_re_matrix()) re = std::make_unique<ReScratch>(ctx.table());
        for (std::uint64_t it = begin; it < end; ++it) {
          const auto& [x, mult] = outer[it / inner.size()];
          const Word y = inner[it % inner.size()];
          u128 acc = 0;
          if (ctx.has_re_matrix()) {
            for (Word z : inner) acc += h_value_fast(ctx, x, y, z);
          } else {
            for (Word z : inner) acc += h_value_generic(ctx, *re, x, y, z);
          }
          local += big_from_u128(static_cast<u128>(mult) * acc);
        }
        partials[chunk] = std::move(local);
      },
      progress ? progress : ctx.progress);
  return combine(partials);
}

BigCount d_via_h(const KernelContext& ctx) {
  const std::size_t d = ctx.size();
  check_budget(ctx, saturating_pow(d, 3), "exact triple-kernel sum");
  ctx.ensure_updown_lists();
  const auto& words = ctx.table().words();
  std::vector<BigCount> partials(Executor::chunk_count(d));
  ctx.executor().run_chunks(
      d,
      [&](std::size_t chunk, std::uint64_t begin, std::uint64_t end) {
        BigCount local = 0;
        std::unique_ptr<ReScratch> re;
        if (!ctx.has_re_matrix()) re = std::make_unique<ReScratch>(ctx.table());
        auto h = [&](Word x, Word y, Word z) -> u128 {
          if (ctx.has_re_matrix()) return h_value_fast(ctx, x, y, z);
          return h_value_generic(ctx, *re, x, y, z);
        };
        for (std::uint64_t i = begin; i < end; ++i) {
          const Word x = words[i];
          u128 acc = h(x, x, x);
          for (std::size_t j = i + 1; j < d; ++j) {
            const Word y = words[j];
            acc += 3 * (h(x, x, y) + h(x, y, y));
            for (std::size_t k = j + 1; k < d; ++k) {
              acc += 6 * h(x, y, words[k]);
            }
          }
          local += big_from_u128(acc);
        }
        partials[chunk] = std::move(local);
      },
      ctx.progress);
  return combine(partials);
}

ResidueWitness residue_via_h(const KernelContext& ctx, std::uint64_t m) {
  const auto start = Clock::now();
  const EComplement ec = e_complement(ctx.table(), ctx.orbits(), m);
  const auto outer = ec_reps(ec);
  BigCount sum = h_block_sum(ctx, outer, ec.elements);
  return make_witness(ctx.arity() + 3, m, "h3", std::move(sum), ctx.arity(), start);
}

BigCount h_prime(const Mbf& u, const Mbf& v, const Mbf& w,
                 const KernelContext& ctx) {
  require_ctx_arity(u, ctx);
  require_ctx_arity(v, ctx);
  require_ctx_arity(w, ctx);
  const Word m = u.bits & v.bits & w.bits;
  const Word j = u.bits | v.bits | w.bits;
  // sum over s <= M of re(s, M) equals the down-count total over the downset
  // of M.
  u128 below = 0;
  ctx.for_downset_positions(ctx.pos_of(m),
                            [&](std::uint32_t p) { below += ctx.down_at(p); });
  return big_from_u128(below * ctx.up_at(ctx.pos_of(j)));
}

// ---- chain counts ---------------------------------------------------------------

BigCount p4_count(const KernelContext& ctx) {
  const std::size_t d = ctx.size();
  if (ctx.arity() >= kMaxArity) {
    u128 pairs = 0;
    for (std::size_t i = 0; i < d; ++i) pairs += ctx.up_at(i);
    check_budget(ctx,
                 pairs > std::numeric_limits<std::uint64_t>::max()
                     ? std::numeric_limits<std::uint64_t>::max()
                     : static_cast<std::uint64_t>(pairs),
                 "chain-count pair sum");
  }
  const auto& words = ctx.table().words();
  std::vector<BigCount> partials(Executor::chunk_count(d));
  ctx.executor().run_chunks(
      d,
      [&](std::size_t chunk, std::uint64_t begin, std::uint64_t end) {
        u128 acc = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
          const Word b = words[i];
          std::uint64_t above = 0;
          for (std::size_t j = i; j < d; ++j) {
            if (leq_words(b, words[j])) above += ctx.up_at(j);
          }
          acc += static_cast<u128>(ctx.down_at(i)) * above;
        }
        partials[chunk] = big_from_u128(acc);
      },
      ctx.progress);
  return combine(partials);
}

ResidueWitness residue_via_p4(const KernelContext& ctx) {
  const auto start = Clock::now();
  BigCount sum = p4_count(ctx);
  return make_witness(ctx.arity() + 3, 3, "p4mod3", std::move(sum), ctx.arity(),
                      start);
}

std::vector<std::vector<std::uint64_t>> order_matrix_cube(const KernelContext& ctx) {
  if (ctx.arity() > 3) {
    throw ResourceLimitError("dense order-matrix cube is limited to n <= 3");
  }
  const std::size_t d = ctx.size();
  const auto& words = ctx.table().words();
  std::vector<std::vector<std::uint64_t>> m(d, std::vector<std::uint64_t>(d, 0));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      m[i][j] = leq_words(words[i], words[j]) ? 1 : 0;
    }
  }
  auto multiply = [d](const auto& a, const auto& b) {
    std::vector<std::vector<std::uint64_t>> r(d, std::vector<std::uint64_t>(d, 0));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t k = 0; k < d; ++k) {
        if (a[i][k] == 0) continue;
        for (std::size_t j = 0; j < d; ++j) r[i][j] += a[i][k] * b[k][j];
      }
    }
    return r;
  };
  return multiply(multiply(m, m), m);
}

BigCount matrix_cube_sum(const KernelContext& ctx) {
  const auto cube = order_matrix_cube(ctx);
  u128 total = 0;
  for (const auto& row : cube) {
    for (std::uint64_t v : row) total += v;
  }
  return big_from_u128(total);
}

// ---- six-fold kernel -------------------------------------------------------------

BigCount f_six(const Mbf& a, const Mbf& b, const Mbf& c, const Mbf& d,
               const Mbf& e, const Mbf& f, const KernelContext& ctx) {
  for (const Mbf* m : {&a, &b, &c, &d, &e, &f}) require_ctx_arity(*m, ctx);
  ReScratch re(ctx.table());
  const u128 upper = f_upper_generic(ctx, re, a.bits | b.bits | d.bits,
                                     a.bits | c.bits | e.bits,
                                     b.bits | c.bits | f.bits,
                                     d.bits | e.bits | f.bits);
  const u128 lower = f_lower_generic(ctx, re, a.bits & b.bits & c.bits,
                                     a.bits & d.bits & e.bits,
                                     b.bits & d.bits & f.bits,
                                     c.bits & e.bits & f.bits);
  return big_from_u128(upper) * big_from_u128(lower);
}

BigCount f_block_sum(const KernelContext& ctx,
                     std::span<const std::pair<Word, std::uint32_t>> outer,
                     std::span<const Word> inner,
                     const Executor::Progress& progress) {
  check_budget(ctx,
               saturating_mul(outer.size(), saturating_pow(inner.size(), 5)),
               "six-fold kernel block sum");
  ctx.ensure_updown_lists();
  const std::uint64_t items = outer.size() * inner.size();
  std::vector<BigCount> partials(Executor::chunk_count(items));

  ctx.executor().run_chunks(
      items,
      [&](std::size_t chunk, std::uint64_t begin, std::uint64_t end) {
        BigCount local = 0;
        const bool fast = ctx.has_re_matrix();
        FlatMap64 upper_memo, lower_memo;
        std::unique_ptr<ReScratch> re;
        if (!fast) re = std::make_unique<ReScratch>(ctx.table());

        for (std::uint64_t it = begin; it < end; ++it) {
          const auto& [a, mult] = outer[it / inner.size()];
          const Word b = inner[it % inner.size()];
          const Word jab = a | b;
          const Word mab = a & b;
          u128 acc = 0;
          BigCount acc_big = 0;
          for (const Word c : inner) {
            const Word m1 = mab & c;
            const Word jac = a | c;
            const Word jbc = b | c;
            for (const Word d : inner) {
              const Word j1 = jab | d;
              const Word pad = a & d;
              const Word pbd = b & d;
              for (const Word e : inner) {
                const Word j2 = jac | e;
                const Word m2 = pad & e;
                const Word pde = d | e;
                const Word pce = c & e;
                if (fast) {
                  for (const Word f : inner) {
                    const std::uint64_t up =
                        f_upper_fast(ctx, j1, j2, jbc | f, pde | f, upper_memo);
                    const std::uint64_t lo =
                        f_lower_fast(ctx, m1, m2, pbd & f, pce & f, lower_memo);
                    acc += static_cast<u128>(up) * lo;
                  }
                } else {
                  for (const Word f : inner) {
                    const u128 up =
                        f_upper_generic(ctx, *re, j1, j2, jbc | f, pde | f);
                    const u128 lo =
                        f_lower_generic(ctx, *re, m1, m2, pbd & f, pce & f);
                    acc_big += big_from_u128(up) * big_from_u128(lo);
                  }
                }
              }
            }
          }
          BigCount item = fast ? big_from_u128(acc) : acc_big;
          local += item * mult;
        }
        partials[chunk] = std::move(local);
      },
      progress ? progress : ctx.progress);
  return combine(partials);
}

BigCount d_via_f(const KernelContext& ctx) {
  const auto outer = all_reps(ctx);
  return f_block_sum(ctx, outer, ctx.table().words());
}

ResidueWitness residue_via_f(const KernelContext& ctx, std::uint64_t m) {
  const auto start = Clock::now();
  const EComplement ec = e_complement(ctx.table(), ctx.orbits(), m);
  const auto outer = ec_reps(ec);
  BigCount sum = f_block_sum(ctx, outer, ec.elements);
  return make_witness(ctx.arity() + 4, m, "f4", std::move(sum), ctx.arity(), start);
}

// ---- duality ----------------------------------------------------------------------

BigCount selfdual_count(const PosetTable& table, const Executor* exec) {
  const std::size_t d = table.size();
  const auto& words = table.words();
  const int n = table.arity();
  std::vector<std::uint64_t> partials(Executor::chunk_count(d), 0);
  const Executor& ex = exec ? *exec : serial_executor();
  ex.run_chunks(d, [&](std::size_t chunk, std::uint64_t begin, std::uint64_t end) {
    std::uint64_t count = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      if (words[i] == dual_word(words[i], n)) ++count;
    }
    partials[chunk] = count;
  });
  std::uint64_t total = 0;
  for (std::uint64_t p : partials) total += p;
  return BigCount(total);
}

BigCount selfdual_count(const KernelContext& ctx) {
  return selfdual_count(ctx.table(), &ctx.executor());
}

ResidueWitness residue_via_lambda(const PosetTable& table, const Executor* exec) {
  const auto start = Clock::now();
  BigCount sum = selfdual_count(table, exec);
  return make_witness(table.arity(), 2, "lambda2", std::move(sum), table.arity(),
                      start);
}

ResidueWitness residue_via_lambda(const KernelContext& ctx) {
  return residue_via_lambda(ctx.table(), &ctx.executor());
}

std::string witness_json(const ResidueWitness& w) {
  nlohmann::json j;
  j["target"] = std::to_string(w.target);
  j["modulus"] = std::to_string(w.modulus);
  j["method"] = w.method;
  j["sum"] = to_decimal(w.sum);
  j["residue"] = std::to_string(w.residue);
  j["base_arity"] = std::to_string(w.base_arity);
  j["elapsed_ms"] = std::to_string(w.elapsed_ms);
  return j.dump();
}

}  // namespace dedekind
