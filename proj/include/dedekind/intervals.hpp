#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "dedekind/bigcount.hpp"
#include "dedekind/parallel.hpp"
#include "dedekind/poset_table.hpp"

namespace dedekind {

// Downset sizes re(bottom, x) for every element, aligned with the table
// order. Values stay below 2^23 through n = 6, so one machine word is ample.
struct DownTable {
  int arity = 0;
  std::vector<std::uint64_t> counts;
};

// Builds re(bottom, .) bottom-up through the arities using the half-split
// recursion re(bottom, x0*x1) = sum over z1 <= x1 of re(bottom, x0 & z1)
// taken over D_{n-1}.
DownTable build_down_table(const PosetTable& table, const Executor* exec = nullptr,
                           const Executor::Progress& progress = nullptr);

inline std::uint64_t down_count(const DownTable& down, std::size_t pos) {
  return down.counts[pos];
}

// re(x, top) looked up as re(bottom, dual(x)); duality reverses the order.
std::uint64_t up_count_word(Word x, const PosetTable& table, const DownTable& down);
BigCount up_count(const Mbf& x, const PosetTable& table, const DownTable& down);

// All elements >= x (resp. <= x) in table order.
std::vector<Word> upset_words(Word x, const PosetTable& table);
std::vector<Word> downset_words(Word x, const PosetTable& table);
std::vector<Mbf> upset(const Mbf& x, const PosetTable& table);
std::vector<Mbf> downset(const Mbf& x, const PosetTable& table);

// Memoizing general-interval counter bound to one lattice. Not thread-safe;
// create one per worker. For n <= 5 a query is a direct scan of the table
// slice between the endpoints; for n = 6 it is the half-split recursion
// re(x0*x1, y0*y1) = sum over z1 in [x1, y1] of re(x0, y0 & z1) evaluated
// over D_5 with the D_5 queries memoized.
class ReScratch {
 public:
  explicit ReScratch(const PosetTable& table);

  std::uint64_t re(Word x, Word y);

 private:
  std::uint64_t re_scan(const PosetTable& t, Word x, Word y) const;
  std::uint64_t re_sub(Word x, Word y);

  const PosetTable& table_;
  std::unique_ptr<PosetTable> sub_;  // D_{n-1}, built only for n = 6
  std::unordered_map<std::uint64_t, std::uint64_t> memo_;
};

// Exact |{z : x <= z <= y}|; 0 whenever x <= y fails.
BigCount interval_count(const Mbf& x, const Mbf& y, const PosetTable& table);

}  // namespace dedekind
