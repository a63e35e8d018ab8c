#pragma once

// Monotone Boolean functions of arity n, stored as their 2^n-character truth
// string packed into one 64-bit word.
//
// Conventions, fixed once for the whole codebase:
//   - String position i holds the value at the point p with i = sum p_j 2^(j-1),
//     so position 0 is g(0...0) and position 2^n-1 is g(1...1).
//   - The leftmost character (position 0) is the most significant bit of the
//     word. String lexicographic order, word numeric order, and the total
//     order used for enumeration therefore coincide.
//   - Arity is carried alongside the word, never inferred from it.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "dedekind/errors.hpp"

namespace dedekind {

using Word = std::uint64_t;

// 2^6 = 64 bits is one machine word; larger lattices are not materialized.
inline constexpr int kMaxArity = 6;

constexpr unsigned lattice_width(int n) { return 1u << n; }

constexpr Word lattice_mask(int n) {
  return lattice_width(n) == 64 ? ~Word{0}
                                : (Word{1} << lattice_width(n)) - Word{1};
}

namespace detail {

constexpr std::array<std::uint8_t, 256> kReversedByte = [] {
  std::array<std::uint8_t, 256> t{};
  for (unsigned v = 0; v < 256; ++v) {
    unsigned r = 0;
    for (unsigned b = 0; b < 8; ++b) {
      if (v & (1u << b)) r |= 1u << (7 - b);
    }
    t[v] = static_cast<std::uint8_t>(r);
  }
  return t;
}();

// kVarMask[k] selects the word bits whose index has bit k set; used by the
// per-variable monotonicity constraint below.
inline constexpr std::array<Word, 6> kVarMask = {
    0xAAAA'AAAA'AAAA'AAAAull, 0xCCCC'CCCC'CCCC'CCCCull,
    0xF0F0'F0F0'F0F0'F0F0ull, 0xFF00'FF00'FF00'FF00ull,
    0xFFFF'0000'FFFF'0000ull, 0xFFFF'FFFF'0000'0000ull};

}  // namespace detail

constexpr Word reverse_word_bits(Word w, unsigned width) {
  Word full = 0;
  for (unsigned i = 0; i < 8; ++i) {
    full = (full << 8) | detail::kReversedByte[(w >> (8 * i)) & 0xFF];
  }
  return width == 64 ? full : full >> (64 - width);
}

// Pointwise order on same-arity functions.
constexpr bool leq_words(Word x, Word y) { return (x & ~y) == 0; }

constexpr Word join_words(Word x, Word y) { return x | y; }
constexpr Word meet_words(Word x, Word y) { return x & y; }

// Reverse the string, then negate every bit.
constexpr Word dual_word(Word w, int n) {
  return ~reverse_word_bits(w, lattice_width(n)) & lattice_mask(n);
}

// g is monotone iff for every variable k, setting that variable never lowers
// the value. Word bit b corresponds to the point with index 2^n-1-b, so the
// constraint reads: every set bit at b with bit k of b set implies a set bit
// at b ^ 2^k.
constexpr bool is_monotone_word(Word w, int n) {
  if (w & ~lattice_mask(n)) return false;
  for (int k = 0; k < n; ++k) {
    const Word m = detail::kVarMask[static_cast<unsigned>(k)] & lattice_mask(n);
    if (((w & m) >> (1u << k)) & ~w) return false;
  }
  return true;
}

constexpr bool word_bit(Word w, int n, unsigned position) {
  return (w >> (lattice_width(n) - 1 - position)) & Word{1};
}

struct Mbf {
  Word bits = 0;
  std::uint8_t arity = 0;

  constexpr Mbf() = default;
  constexpr Mbf(Word b, int n) : bits(b), arity(static_cast<std::uint8_t>(n)) {}

  static constexpr Mbf bottom(int n) { return Mbf(0, n); }
  static constexpr Mbf top(int n) { return Mbf(lattice_mask(n), n); }

  // Parses a truth string such as "0101"; validates length, characters, and
  // monotonicity.
  static Mbf from_string(std::string_view s);

  std::string to_string() const;

  unsigned width() const { return lattice_width(arity); }
  bool bit(unsigned position) const { return word_bit(bits, arity, position); }

  friend constexpr bool operator==(const Mbf&, const Mbf&) = default;
};

// Index of a point of B^n given as the tuple (p_1, ..., p_n):
// i = sum p_j 2^(j-1).
constexpr unsigned point_index(std::span<const unsigned> point) {
  unsigned i = 0;
  for (std::size_t j = 0; j < point.size(); ++j) {
    i |= (point[j] & 1u) << j;
  }
  return i;
}

void require_same_arity(const Mbf& x, const Mbf& y);

bool leq(const Mbf& x, const Mbf& y);
Mbf join(const Mbf& x, const Mbf& y);
Mbf meet(const Mbf& x, const Mbf& y);
Mbf dual(const Mbf& x);

// Strict total order used for enumeration (numeric order of the words).
inline bool precedes(const Mbf& x, const Mbf& y) { return x.bits < y.bits; }

// Validates a raw truth string of power-of-two length; throws
// std::invalid_argument on bad length or characters, ResourceLimitError on
// widths beyond one word.
bool is_monotone(std::string_view bits);

}  // namespace dedekind
