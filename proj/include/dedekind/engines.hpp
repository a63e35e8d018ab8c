#pragma once

#include <cstdint>
#include <mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dedekind/bigcount.hpp"
#include "dedekind/errors.hpp"
#include "dedekind/intervals.hpp"
#include "dedekind/parallel.hpp"
#include "dedekind/symmetry.hpp"

namespace dedekind {

// Default ceiling on the number of kernel evaluations a reduced sum may
// request before being refused; override per context for sanctioned
// long runs.
inline constexpr std::uint64_t kDefaultTupleBudget = 10'000'000'000ull;

// Read-only bundle of everything the counting kernels need for one base
// arity. Shared freely across threads; per-worker mutable state lives in
// scratch objects created inside the engines.
class KernelContext {
 public:
  KernelContext(const PosetTable& table, const DownTable& down,
                const OrbitTable* orbits = nullptr,
                const Executor* exec = nullptr,
                std::uint64_t tuple_budget = kDefaultTupleBudget);

  KernelContext(const KernelContext&) = delete;
  KernelContext& operator=(const KernelContext&) = delete;

  // Optional diagnostic sink; engines report chunk completion through it.
  Executor::Progress progress;

  int arity() const { return table_.arity(); }
  std::size_t size() const { return table_.size(); }
  const PosetTable& table() const { return table_; }
  const DownTable& down() const { return down_; }
  const Executor& executor() const { return *exec_; }
  std::uint64_t tuple_budget() const { return budget_; }

  bool has_orbits() const { return orbits_ != nullptr; }
  const OrbitTable& orbits() const;

  std::uint64_t down_at(std::size_t pos) const { return down_.counts[pos]; }
  std::uint64_t up_at(std::size_t pos) const { return up_[pos]; }

  // Table position of an element word; direct-indexed for n <= 4.
  std::size_t pos_of(Word w) const {
    if (!pos_by_mask_.empty()) return pos_by_mask_[w];
    return table_.position_of(w);
  }

  // Dense interval matrix re(x, y), present for n <= 4.
  bool has_re_matrix() const { return !re_matrix_.empty(); }
  const std::uint32_t* re_row(std::size_t px) const {
    return &re_matrix_[px * table_.size()];
  }
  // Same matrix transposed: re_col_row(py)[px] = re(x, y).
  const std::uint32_t* re_col_row(std::size_t py) const {
    return &re_matrix_t_[py * table_.size()];
  }

  // Per-element upset/downset position lists; eager for n <= 4, built on
  // demand for n = 5, never materialized for n = 6.
  bool has_updown_lists() const { return !upsets_.empty(); }
  void ensure_updown_lists() const;
  const std::vector<std::uint32_t>& upset_list(std::size_t pos) const {
    return upsets_[pos];
  }
  const std::vector<std::uint32_t>& downset_list(std::size_t pos) const {
    return downsets_[pos];
  }

  template <class Fn>
  void for_upset_positions(std::size_t pos, Fn&& fn) const {
    if (has_updown_lists()) {
      for (std::uint32_t p : upsets_[pos]) fn(p);
      return;
    }
    const auto& words = table_.words();
    const Word x = words[pos];
    for (std::size_t i = pos; i < words.size(); ++i) {
      if (leq_words(x, words[i])) fn(static_cast<std::uint32_t>(i));
    }
  }

  template <class Fn>
  void for_downset_positions(std::size_t pos, Fn&& fn) const {
    if (has_updown_lists()) {
      for (std::uint32_t p : downsets_[pos]) fn(p);
      return;
    }
    const auto& words = table_.words();
    const Word x = words[pos];
    for (std::size_t i = 0; i <= pos; ++i) {
      if (leq_words(words[i], x)) fn(static_cast<std::uint32_t>(i));
    }
  }

 private:
  void build_updown_lists() const;

  const PosetTable& table_;
  const DownTable& down_;
  const OrbitTable* orbits_;
  const Executor* exec_;
  std::uint64_t budget_;

  std::vector<std::uint64_t> up_;
  std::vector<std::uint32_t> pos_by_mask_;   // n <= 4
  std::vector<std::uint32_t> re_matrix_;     // n <= 4
  std::vector<std::uint32_t> re_matrix_t_;   // n <= 4

  mutable std::vector<std::vector<std::uint32_t>> upsets_;
  mutable std::vector<std::vector<std::uint32_t>> downsets_;
  mutable std::once_flag updown_once_;
};

// One modular result with its exact, unreduced intermediate sum. The sums
// are the strongest regression anchors, so they are kept verbatim.
struct ResidueWitness {
  int target = 0;
  std::uint64_t modulus = 0;
  std::string method;
  BigCount sum;
  std::uint64_t residue = 0;
  int base_arity = 0;
  std::int64_t elapsed_ms = 0;
};

// ---- Pair kernel (maps from the 2-cube) ------------------------------------

// Number of monotone maps from B^2 into D_n sending 01 to x and 10 to y:
// re(x|y, top) * re(bottom, x & y). Symmetric in its arguments.
BigCount g_pair(const Mbf& x, const Mbf& y, const KernelContext& ctx);

// Exact d_{n+2} as the orbit-reduced double sum over representatives.
BigCount d_via_g(const KernelContext& ctx);

// d_{n+2} mod m from the class-reduced sum over elements whose orbit size
// is not divisible by m.
ResidueWitness residue_via_g(const KernelContext& ctx, std::uint64_t m);

// sum over x in outer of mult(x) * sum over y in inner of G(x, y).
BigCount g_block_sum(const KernelContext& ctx,
                     std::span<const std::pair<Word, std::uint32_t>> outer,
                     std::span<const Word> inner,
                     const Executor::Progress& progress = nullptr);

// ---- Triple kernel (maps from the 3-cube) -----------------------------------

// Number of monotone maps from B^3 into D_n fixing the three weight-1 points
// to x, y, z. Invariant under argument permutations.
BigCount h_triple(const Mbf& x, const Mbf& y, const Mbf& z,
                  const KernelContext& ctx);

// Exact d_{n+3} via the three-bucket decomposition over unordered triples:
// diagonal terms once, twice-repeated patterns with factor 3, strict triples
// with factor 6.
BigCount d_via_h(const KernelContext& ctx);

ResidueWitness residue_via_h(const KernelContext& ctx, std::uint64_t m);

BigCount h_block_sum(const KernelContext& ctx,
                     std::span<const std::pair<Word, std::uint32_t>> outer,
                     std::span<const Word> inner,
                     const Executor::Progress& progress = nullptr);

// Number of monotone maps from the six-element poset a < b < {c,d,e} < f
// into D_n with the antichain fixed to (u, v, w).
BigCount h_prime(const Mbf& u, const Mbf& v, const Mbf& w,
                 const KernelContext& ctx);

// ---- Chain counts and the matrix cross-check --------------------------------

// Number of monotone maps from the 4-chain into D_n, summed as
// re(bottom, b) * re(c, top) over pairs b <= c. Congruent to d_{n+3} mod 3.
BigCount p4_count(const KernelContext& ctx);

ResidueWitness residue_via_p4(const KernelContext& ctx);

// Cube of the order matrix M[i][j] = [element i <= element j]; its total sum
// equals p4_count. Kept dense as an independent cross-check, n <= 3 only.
std::vector<std::vector<std::uint64_t>> order_matrix_cube(const KernelContext& ctx);

BigCount matrix_cube_sum(const KernelContext& ctx);

// ---- Six-fold kernel (maps from the 4-cube) ----------------------------------

// Number of monotone maps from B^4 into D_n fixing the six weight-2 points,
// in the order g(0011)=a, g(0101)=b, g(1001)=c, g(0110)=d, g(1010)=e,
// g(1100)=f.
BigCount f_six(const Mbf& a, const Mbf& b, const Mbf& c, const Mbf& d,
               const Mbf& e, const Mbf& f, const KernelContext& ctx);

// Exact d_{n+4} via the orbit-reduced six-fold sum.
BigCount d_via_f(const KernelContext& ctx);

ResidueWitness residue_via_f(const KernelContext& ctx, std::uint64_t m);

BigCount f_block_sum(const KernelContext& ctx,
                     std::span<const std::pair<Word, std::uint32_t>> outer,
                     std::span<const Word> inner,
                     const Executor::Progress& progress = nullptr);

// ---- Duality ----------------------------------------------------------------

// Number of self-dual elements of D_n; always congruent to d_n mod 2.
// Needs only the lattice itself, so a table-level overload is provided.
BigCount selfdual_count(const PosetTable& table, const Executor* exec = nullptr);
BigCount selfdual_count(const KernelContext& ctx);

ResidueWitness residue_via_lambda(const PosetTable& table,
                                  const Executor* exec = nullptr);
ResidueWitness residue_via_lambda(const KernelContext& ctx);

// JSON rendering of a witness with every integer as a decimal string.
std::string witness_json(const ResidueWitness& w);

}  // namespace dedekind
