#include "dedekind/poset_table.hpp"

#include <algorithm>
#include <stdexcept>

namespace dedekind {

PosetTable::PosetTable(int arity, std::vector<Word> sorted_words)
    : arity_(arity), words_(std::move(sorted_words)) {}

bool PosetTable::contains(Word w) const {
  auto it = std::lower_bound(words_.begin(), words_.end(), w);
  return it != words_.end() && *it == w;
}

std::size_t PosetTable::position_of(Word w) const {
  auto it = std::lower_bound(words_.begin(), words_.end(), w);
  if (it == words_.end() || *it != w) {
    throw std::invalid_argument("word is not an element of D_" +
                                std::to_string(arity_));
  }
  return static_cast<std::size_t>(it - words_.begin());
}

PosetTable enumerate_lattice(int n) {
  if (n < 0) throw std::invalid_argument("arity must be nonnegative");
  if (n > kMaxArity) {
    throw ResourceLimitError(
        "enumeration of D_" + std::to_string(n) +
        " is not materializable (limit is n = " + std::to_string(kMaxArity) + ")");
  }
  std::vector<Word> words{0, 1};
  for (int k = 1; k <= n; ++k) {
    const unsigned half = lattice_width(k - 1);
    std::vector<Word> next;
    for (std::size_t i = 0; i < words.size(); ++i) {
      const Word g0 = words[i];
      // g0 <= g1 pointwise implies g0 <= g1 numerically, so candidates for
      // the right half start at position i; blocks come out sorted because
      // g0 occupies the high bits.
      for (std::size_t j = i; j < words.size(); ++j) {
        const Word g1 = words[j];
        if (leq_words(g0, g1)) {
          next.push_back((g0 << half) | g1);
        }
      }
    }
    words.swap(next);
  }
  return PosetTable(n, std::move(words));
}

}  // namespace dedekind
