#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace dedekind {

// Unbounded nonnegative counter. Tables and inner loops stay in machine
// words; results are widened to BigCount at accumulation boundaries.
using BigCount = boost::multiprecision::cpp_int;

using u128 = unsigned __int128;

inline BigCount big_from_u128(u128 v) {
  BigCount hi = static_cast<std::uint64_t>(v >> 64);
  return (hi << 64) | static_cast<std::uint64_t>(v);
}

std::string to_decimal(const BigCount& v);

// Parses an optionally signed decimal string; throws std::invalid_argument
// on anything else.
BigCount big_from_decimal(std::string_view s);

std::uint64_t mod_u64(const BigCount& v, std::uint64_t m);

}  // namespace dedekind
