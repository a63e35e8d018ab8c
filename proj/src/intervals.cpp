#include "dedekind/intervals.hpp"

#include <algorithm>
#include <stdexcept>

namespace dedekind {

namespace {

// Open-addressing map from element word to its down-count, sized for the
// sub-lattice lookups in the n = 6 down-table build where a std::unordered_map
// probe per meet would dominate.
class WordValueMap {
 public:
  WordValueMap(const std::vector<Word>& keys, const std::vector<std::uint64_t>& values) {
    std::size_t cap = 16;
    while (cap < keys.size() * 2) cap <<= 1;
    mask_ = cap - 1;
    slots_.assign(cap, Slot{});
    used_.assign(cap, false);
    for (std::size_t i = 0; i < keys.size(); ++i) insert(keys[i], values[i]);
  }

  std::uint64_t at(Word k) const {
    std::size_t h = hash(k);
    for (;;) {
      if (used_[h] && slots_[h].key == k) return slots_[h].value;
      h = (h + 1) & mask_;
    }
  }

 private:
  struct Slot {
    Word key = 0;
    std::uint64_t value = 0;
  };

  static std::size_t splitmix(Word k) {
    k += 0x9E3779B97F4A7C15ull;
    k = (k ^ (k >> 30)) * 0xBF58476D1CE4E5B9ull;
    k = (k ^ (k >> 27)) * 0x94D049BB133111EBull;
    return static_cast<std::size_t>(k ^ (k >> 31));
  }
  std::size_t hash(Word k) const { return splitmix(k) & mask_; }

  void insert(Word k, std::uint64_t v) {
    std::size_t h = hash(k);
    while (used_[h]) h = (h + 1) & mask_;
    used_[h] = true;
    slots_[h] = Slot{k, v};
  }

  std::vector<Slot> slots_;
  std::vector<bool> used_;
  std::size_t mask_ = 0;
};

}  // namespace

DownTable build_down_table(const PosetTable& table, const Executor* exec,
                           const Executor::Progress& progress) {
  const int n = table.arity();
  std::vector<Word> words{0, 1};
  std::vector<std::uint64_t> counts{1, 2};
  for (int k = 1; k <= n; ++k) {
    const PosetTable level_local = (k == n) ? PosetTable(k, {}) : enumerate_lattice(k);
    const PosetTable& level = (k == n) ? table : level_local;
    const unsigned half = lattice_width(k - 1);
    const Word low_mask = lattice_mask(k - 1);
    const WordValueMap sub_counts(words, counts);

    // Per element x = x0*x1: sum re(bottom, x0 & z1) over z1 <= x1 in the
    // sub-lattice.
    const std::vector<Word>& sub_words = words;
    std::vector<std::uint64_t> next(level.size());
    auto fill = [&](std::size_t, std::uint64_t begin, std::uint64_t end) {
      for (std::uint64_t i = begin; i < end; ++i) {
        const Word x = level.word(i);
        const Word x0 = x >> half;
        const Word x1 = x & low_mask;
        std::uint64_t total = 0;
        for (Word z1 : sub_words) {
          if (z1 > x1) break;
          if (leq_words(z1, x1)) total += sub_counts.at(x0 & z1);
        }
        next[i] = total;
      }
    };
    const Executor& ex = exec ? *exec : serial_executor();
    ex.run_chunks(level.size(), fill, k == n ? progress : Executor::Progress{});

    if (k < n) words = level.words();
    counts.swap(next);
  }
  return DownTable{n, std::move(counts)};
}

std::uint64_t up_count_word(Word x, const PosetTable& table, const DownTable& down) {
  return down.counts[table.position_of(dual_word(x, table.arity()))];
}

BigCount up_count(const Mbf& x, const PosetTable& table, const DownTable& down) {
  if (x.arity != table.arity()) throw std::invalid_argument("arity mismatch");
  return BigCount(up_count_word(x.bits, table, down));
}

std::vector<Word> upset_words(Word x, const PosetTable& table) {
  std::vector<Word> out;
  const auto& words = table.words();
  for (std::size_t i = table.position_of(x); i < words.size(); ++i) {
    if (leq_words(x, words[i])) out.push_back(words[i]);
  }
  return out;
}

std::vector<Word> downset_words(Word x, const PosetTable& table) {
  std::vector<Word> out;
  const auto& words = table.words();
  const std::size_t last = table.position_of(x);
  for (std::size_t i = 0; i <= last; ++i) {
    if (leq_words(words[i], x)) out.push_back(words[i]);
  }
  return out;
}

namespace {
std::vector<Mbf> wrap(const std::vector<Word>& words, int n) {
  std::vector<Mbf> out;
  out.reserve(words.size());
  for (Word w : words) out.emplace_back(w, n);
  return out;
}
}  // namespace

std::vector<Mbf> upset(const Mbf& x, const PosetTable& table) {
  if (x.arity != table.arity()) throw std::invalid_argument("arity mismatch");
  return wrap(upset_words(x.bits, table), table.arity());
}

std::vector<Mbf> downset(const Mbf& x, const PosetTable& table) {
  if (x.arity != table.arity()) throw std::invalid_argument("arity mismatch");
  return wrap(downset_words(x.bits, table), table.arity());
}

ReScratch::ReScratch(const PosetTable& table) : table_(table) {
  if (table.arity() == kMaxArity) {
    sub_ = std::make_unique<PosetTable>(enumerate_lattice(kMaxArity - 1));
  }
}

std::uint64_t ReScratch::re_scan(const PosetTable& t, Word x, Word y) const {
  if (!leq_words(x, y)) return 0;
  const auto& words = t.words();
  const std::size_t lo = t.position_of(x);
  const std::size_t hi = t.position_of(y);
  std::uint64_t count = 0;
  for (std::size_t i = lo; i <= hi; ++i) {
    const Word z = words[i];
    if (leq_words(x, z) && leq_words(z, y)) ++count;
  }
  return count;
}

std::uint64_t ReScratch::re_sub(Word x, Word y) {
  if (!leq_words(x, y)) return 0;
  const std::uint64_t key = (x << 32) | y;  // D_5 words fit in 32 bits
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  const std::uint64_t value = re_scan(*sub_, x, y);
  memo_.emplace(key, value);
  return value;
}

std::uint64_t ReScratch::re(Word x, Word y) {
  if (!leq_words(x, y)) return 0;
  if (table_.arity() < kMaxArity) return re_scan(table_, x, y);

  const unsigned half = lattice_width(kMaxArity - 1);
  const Word low_mask = lattice_mask(kMaxArity - 1);
  const Word x0 = x >> half, x1 = x & low_mask;
  const Word y0 = y >> half, y1 = y & low_mask;
  const auto& sub_words = sub_->words();
  const std::size_t lo = sub_->position_of(x1);
  const std::size_t hi = sub_->position_of(y1);
  std::uint64_t total = 0;
  for (std::size_t i = lo; i <= hi; ++i) {
    const Word z1 = sub_words[i];
    if (leq_words(x1, z1) && leq_words(z1, y1)) {
      total += re_sub(x0, y0 & z1);
    }
  }
  return total;
}

BigCount interval_count(const Mbf& x, const Mbf& y, const PosetTable& table) {
  if (x.arity != y.arity) throw std::invalid_argument("arity mismatch");
  if (x.arity != table.arity()) throw std::invalid_argument("arity mismatch with table");
  ReScratch scratch(table);
  return BigCount(scratch.re(x.bits, y.bits));
}

}  // namespace dedekind
