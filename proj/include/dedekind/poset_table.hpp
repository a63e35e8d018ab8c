#pragma once

#include <cstdint>
#include <vector>

#include "dedekind/mbf.hpp"

namespace dedekind {

// The full lattice D_n, sorted ascending by the numeric total order.
// Positions in this order are the table indices used by every other module.
class PosetTable {
 public:
  PosetTable(int arity, std::vector<Word> sorted_words);

  int arity() const { return arity_; }
  std::size_t size() const { return words_.size(); }

  Word word(std::size_t pos) const { return words_[pos]; }
  Mbf at(std::size_t pos) const { return Mbf(words_[pos], arity_); }
  const std::vector<Word>& words() const { return words_; }

  Word bottom() const { return 0; }
  Word top() const { return lattice_mask(arity_); }

  bool contains(Word w) const;
  // Position of w in the sorted order; throws std::invalid_argument if w is
  // not an element.
  std::size_t position_of(Word w) const;

 private:
  int arity_;
  std::vector<Word> words_;
};

// Builds D_n by the pair construction: every element of D_n is g0*g1 with
// g0, g1 in D_{n-1} and g0 <= g1; the base case is D_0 = {0, 1}. Blocks come
// out already sorted because g0 occupies the high half of the word.
// Throws ResourceLimitError for n > kMaxArity.
PosetTable enumerate_lattice(int n);

}  // namespace dedekind
