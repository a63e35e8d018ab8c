#include "dedekind/bigcount.hpp"

#include <cctype>
#include <stdexcept>

namespace dedekind {

std::string to_decimal(const BigCount& v) { return v.str(); }

BigCount big_from_decimal(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty decimal string");
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("sign without digits");
  for (std::size_t k = i; k < s.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) {
      throw std::invalid_argument("not a decimal integer: " + std::string(s));
    }
  }
  return BigCount(std::string(s));
}

std::uint64_t mod_u64(const BigCount& v, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("modulus must be nonzero");
  BigCount r = v % m;
  if (r < 0) r += m;
  return r.convert_to<std::uint64_t>();
}

}  // namespace dedekind
