#pragma once

// Definitional counting oracles, deliberately independent of the engine
// implementations they are used to check. Everything here is a direct
// enumeration; keep it that way.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dedekind/bigcount.hpp"
#include "dedekind/poset_table.hpp"

namespace dedekind::oracle {

// A small explicit poset whose elements 0..size-1 are listed in a
// topological order (every relation points from a lower index to a higher
// one).
struct SmallPoset {
  unsigned size = 0;
  std::vector<std::vector<bool>> leq;  // leq[i][j] iff element i <= element j

  // The k-cube: elements are the 2^k point masks, ordered by inclusion.
  static SmallPoset cube(int k);
  // The len-element chain 0 < 1 < ... < len-1.
  static SmallPoset chain(unsigned len);
  // Reflexive-transitive closure of the given cover relations.
  static SmallPoset from_covers(unsigned size,
                                std::span<const std::pair<unsigned, unsigned>> covers);
};

// Number of monotone maps from the poset into D_n that agree with the fixed
// assignments, by depth-first enumeration over the topological order.
BigCount count_monotone_maps(const SmallPoset& poset, const PosetTable& target,
                             std::span<const std::pair<unsigned, Word>> fixed = {});

// Minimal image of g under all variable permutations, computed from the
// point-level definition.
Word canonical_min_image(Word g, int n);

// |{z : x <= z <= y}| by a full scan of the table.
std::uint64_t interval_scan(Word x, Word y, const PosetTable& table);

}  // namespace dedekind::oracle
