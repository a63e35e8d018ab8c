#include "dedekind/mbf.hpp"

#include <bit>
#include <stdexcept>

namespace dedekind {

namespace {

int arity_for_length(std::size_t len) {
  if (len == 0 || !std::has_single_bit(len)) {
    throw std::invalid_argument("truth string length must be a power of two");
  }
  const int n = std::countr_zero(len);
  if (n > kMaxArity) {
    throw ResourceLimitError("arity " + std::to_string(n) +
                             " exceeds the one-word limit (max 6)");
  }
  return n;
}

Word parse_bits(std::string_view s) {
  Word w = 0;
  for (char c : s) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("truth string must contain only 0 and 1");
    }
    w = (w << 1) | static_cast<Word>(c - '0');
  }
  return w;
}

}  // namespace

Mbf Mbf::from_string(std::string_view s) {
  const int n = arity_for_length(s.size());
  const Word w = parse_bits(s);
  if (!is_monotone_word(w, n)) {
    throw std::invalid_argument("truth string is not monotone: " + std::string(s));
  }
  return Mbf(w, n);
}

std::string Mbf::to_string() const {
  std::string s(width(), '0');
  for (unsigned i = 0; i < width(); ++i) {
    if (bit(i)) s[i] = '1';
  }
  return s;
}

void require_same_arity(const Mbf& x, const Mbf& y) {
  if (x.arity != y.arity) {
    throw std::invalid_argument("arity mismatch: " + std::to_string(x.arity) +
                                " vs " + std::to_string(y.arity));
  }
}

bool leq(const Mbf& x, const Mbf& y) {
  require_same_arity(x, y);
  return leq_words(x.bits, y.bits);
}

Mbf join(const Mbf& x, const Mbf& y) {
  require_same_arity(x, y);
  return Mbf(join_words(x.bits, y.bits), x.arity);
}

Mbf meet(const Mbf& x, const Mbf& y) {
  require_same_arity(x, y);
  return Mbf(meet_words(x.bits, y.bits), x.arity);
}

Mbf dual(const Mbf& x) { return Mbf(dual_word(x.bits, x.arity), x.arity); }

bool is_monotone(std::string_view bits) {
  const int n = arity_for_length(bits.size());
  return is_monotone_word(parse_bits(bits), n);
}

}  // namespace dedekind
