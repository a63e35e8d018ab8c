#include "dedekind/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "dedekind/symmetry.hpp"

namespace dedekind::oracle {

SmallPoset SmallPoset::cube(int k) {
  SmallPoset p;
  p.size = 1u << k;
  p.leq.assign(p.size, std::vector<bool>(p.size, false));
  for (unsigned i = 0; i < p.size; ++i) {
    for (unsigned j = 0; j < p.size; ++j) {
      p.leq[i][j] = (i & ~j) == 0;
    }
  }
  return p;
}

SmallPoset SmallPoset::chain(unsigned len) {
  SmallPoset p;
  p.size = len;
  p.leq.assign(len, std::vector<bool>(len, false));
  for (unsigned i = 0; i < len; ++i) {
    for (unsigned j = i; j < len; ++j) p.leq[i][j] = true;
  }
  return p;
}

SmallPoset SmallPoset::from_covers(
    unsigned size, std::span<const std::pair<unsigned, unsigned>> covers) {
  SmallPoset p;
  p.size = size;
  p.leq.assign(size, std::vector<bool>(size, false));
  for (unsigned i = 0; i < size; ++i) p.leq[i][i] = true;
  for (const auto& [lo, hi] : covers) {
    if (lo >= hi || hi >= size) {
      throw std::invalid_argument("covers must point from low index to high");
    }
    p.leq[lo][hi] = true;
  }
  // Transitive closure; indices are topologically ordered.
  for (unsigned mid = 0; mid < size; ++mid) {
    for (unsigned i = 0; i < size; ++i) {
      if (!p.leq[i][mid]) continue;
      for (unsigned j = 0; j < size; ++j) {
        if (p.leq[mid][j]) p.leq[i][j] = true;
      }
    }
  }
  return p;
}

namespace {

void count_rec(const SmallPoset& poset, const PosetTable& target,
               const std::vector<std::optional<Word>>& fixed,
               std::vector<Word>& assigned, unsigned next, BigCount& total) {
  if (next == poset.size) {
    ++total;
    return;
  }
  auto consistent = [&](Word w) {
    for (unsigned i = 0; i < next; ++i) {
      if (poset.leq[i][next] && !leq_words(assigned[i], w)) return false;
      if (poset.leq[next][i] && !leq_words(w, assigned[i])) return false;
    }
    return true;
  };
  if (fixed[next]) {
    const Word w = *fixed[next];
    if (consistent(w)) {
      assigned[next] = w;
      count_rec(poset, target, fixed, assigned, next + 1, total);
    }
    return;
  }
  for (Word w : target.words()) {
    if (consistent(w)) {
      assigned[next] = w;
      count_rec(poset, target, fixed, assigned, next + 1, total);
    }
  }
}

}  // namespace

BigCount count_monotone_maps(const SmallPoset& poset, const PosetTable& target,
                             std::span<const std::pair<unsigned, Word>> fixed) {
  std::vector<std::optional<Word>> fixed_at(poset.size);
  for (const auto& [idx, w] : fixed) {
    if (idx >= poset.size) throw std::invalid_argument("fixed index out of range");
    fixed_at[idx] = w;
  }
  std::vector<Word> assigned(poset.size, 0);
  BigCount total = 0;
  count_rec(poset, target, fixed_at, assigned, 0, total);
  return total;
}

Word canonical_min_image(Word g, int n) {
  Word best = g;
  for (const Permutation& pi : all_permutations(n)) {
    const Mbf img = apply_perm(pi, Mbf(g, n));
    best = std::min(best, img.bits);
  }
  return best;
}

std::uint64_t interval_scan(Word x, Word y, const PosetTable& table) {
  std::uint64_t count = 0;
  for (Word z : table.words()) {
    if (leq_words(x, z) && leq_words(z, y)) ++count;
  }
  return count;
}

}  // namespace dedekind::oracle
