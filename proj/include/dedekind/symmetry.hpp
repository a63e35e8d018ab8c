#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dedekind/parallel.hpp"
#include "dedekind/poset_table.hpp"

namespace dedekind {

// A permutation of the n variables, zero-based: variable j maps to perm[j].
using Permutation = std::vector<std::uint8_t>;

std::vector<Permutation> all_permutations(int n);

// Relabelling variables by pi sends g to g o pi. Definitional, point-level
// implementation; PermAction below is the precomputed fast path.
Mbf apply_perm(const Permutation& pi, const Mbf& g);

// All n! variable permutations of one arity, each precompiled into a
// byte-gather table over the 2^n word bits so that applying one costs eight
// lookups.
class PermAction {
 public:
  explicit PermAction(int n);

  int arity() const { return n_; }
  std::size_t size() const { return perms_.size(); }
  const Permutation& perm(std::size_t k) const { return perms_[k]; }

  Word apply(std::size_t k, Word w) const {
    const Word* t = &tables_[k * kTableStride];
    Word out = 0;
    for (unsigned c = 0; c < chunks_; ++c) {
      out |= t[c * 256 + ((w >> (8 * c)) & 0xFF)];
    }
    return out;
  }

  // Minimal image over all permutations: the canonical representative of
  // the orbit of w.
  Word canonical_word(Word w) const {
    Word best = w;
    for (std::size_t k = 1; k < perms_.size(); ++k) {
      const Word img = apply(k, w);
      if (img < best) best = img;
    }
    return best;
  }

 private:
  static constexpr std::size_t kTableStride = 8 * 256;

  int n_;
  unsigned chunks_;
  std::vector<Permutation> perms_;  // identity first
  std::vector<Word> tables_;        // size() * kTableStride entries
};

Mbf canonical(const Mbf& g, const PermAction& action);

// Orbit decomposition of D_n under the variable permutations.
struct OrbitTable {
  int arity = 0;
  std::vector<Word> canon;             // per element: minimal orbit member
  std::vector<std::uint32_t> class_of; // per element: index into reps
  std::vector<std::uint32_t> reps;     // table positions of representatives
  std::vector<std::uint32_t> gamma;    // per class: orbit size

  std::size_t class_count() const { return reps.size(); }
};

OrbitTable build_orbits(const PosetTable& table, const PermAction& action,
                        const Executor* exec = nullptr,
                        const Executor::Progress& progress = nullptr);

// Orbit-size histogram: gamma value -> number of classes.
std::map<std::uint32_t, std::uint64_t> gamma_histogram(const OrbitTable& orbits);

// Number of classes whose orbit has full size n!.
std::uint64_t no_symmetry_count(const OrbitTable& orbits);

// The elements whose orbit size is NOT divisible by m, together with the
// representatives among them. Closed under every variable permutation, since
// gamma is constant on orbits.
struct EComplement {
  std::uint64_t modulus = 0;
  std::vector<Word> elements;             // ascending
  std::vector<Word> rep_words;            // ascending
  std::vector<std::uint32_t> rep_gammas;  // aligned with rep_words
};

EComplement e_complement(const PosetTable& table, const OrbitTable& orbits,
                         std::uint64_t m);

}  // namespace dedekind
