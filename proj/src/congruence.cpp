#include "dedekind/congruence.hpp"

#include <stdexcept>
#include <string>

namespace dedekind {

namespace {

// Extended gcd: returns g and coefficients with a*x + b*y = g.
BigCount ext_gcd(const BigCount& a, const BigCount& b, BigCount& x, BigCount& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  BigCount x1, y1;
  BigCount g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

}  // namespace

ResidueSystem crt_combine(std::span<const ResidueEntry> entries) {
  if (entries.empty()) throw std::invalid_argument("no congruences to combine");
  for (const auto& e : entries) {
    if (e.modulus < 2) {
      throw std::invalid_argument("modulus must be at least 2, got " +
                                  std::to_string(e.modulus));
    }
    if (e.residue >= e.modulus) {
      throw std::invalid_argument("residue " + std::to_string(e.residue) +
                                  " out of range for modulus " +
                                  std::to_string(e.modulus));
    }
  }

  ResidueSystem out;
  out.entries.assign(entries.begin(), entries.end());
  BigCount mod = entries[0].modulus;
  BigCount res = entries[0].residue;
  for (std::size_t i = 1; i < entries.size(); ++i) {
    const BigCount m2 = entries[i].modulus;
    const BigCount r2 = entries[i].residue;
    BigCount p, q;
    const BigCount g = ext_gcd(mod, m2, p, q);
    if (g != 1) {
      throw std::invalid_argument(
          "moduli are not pairwise coprime: gcd(" + to_decimal(mod) + ", " +
          to_decimal(m2) + ") = " + to_decimal(g));
    }
    // res + mod * t with t chosen so the result is r2 mod m2.
    BigCount t = ((r2 - res) % m2) * (p % m2) % m2;
    BigCount combined = res + mod * t;
    mod *= m2;
    combined %= mod;
    if (combined < 0) combined += mod;
    res = combined;
  }
  out.modulus = mod;
  out.residue = res;
  return out;
}

std::uint64_t known_residue(int n, std::uint64_t m) {
  if (m < 2) throw std::invalid_argument("modulus must be at least 2");
  const KnownValues& kv = known_values();
  if (n < 0 || static_cast<std::size_t>(n) >= kv.dedekind.size()) {
    throw std::invalid_argument("exact count for index " + std::to_string(n) +
                                " is not known");
  }
  return mod_u64(kv.dedekind[static_cast<std::size_t>(n)], m);
}

const KnownValues& known_values() {
  static const KnownValues kv = [] {
    KnownValues v;
    v.dedekind = {BigCount(2),
                  BigCount(3),
                  BigCount(6),
                  BigCount(20),
                  BigCount(168),
                  BigCount(7581),
                  BigCount(7828354),
                  BigCount(2414682040998ull),
                  big_from_decimal("56130437228687557907788")};
    v.classes = {BigCount(2),
                 BigCount(3),
                 BigCount(5),
                 BigCount(10),
                 BigCount(30),
                 BigCount(210),
                 BigCount(16353),
                 BigCount(490013148),
                 big_from_decimal("1392195548889993358")};
    v.selfdual = {BigCount(0),
                  BigCount(1),
                  BigCount(2),
                  BigCount(4),
                  BigCount(12),
                  BigCount(81),
                  BigCount(2646),
                  BigCount(1422564),
                  BigCount(229809982112ull),
                  big_from_decimal("423295099074735261880")};
    v.p4 = {BigCount(5),
            BigCount(15),
            BigCount(105),
            BigCount(3490),
            BigCount(2068224),
            BigCount(262808891710ull),
            big_from_decimal("868329572680304346696")};
    v.no_symmetry = {0, 1, 0, 0, 7, 7281, 468822749};

    v.r4_gamma_histogram = {{1, 6}, {3, 2}, {4, 9}, {6, 6}, {12, 7}};
    v.r7_gamma_histogram = {
        {1, 9},      {7, 27},     {21, 75},    {30, 5},      {35, 117},
        {42, 99},    {70, 90},    {84, 9},     {105, 1206},  {120, 4},
        {140, 702},  {210, 3255}, {252, 114},  {315, 2742},  {360, 18},
        {420, 26739},{504, 237},  {630, 47242},{720, 4},     {840, 75024},
        {1260, 1024050}, {1680, 3128}, {2520, 20005503}, {5040, 468822749}};

    v.h3_sums_base4 = {{2, BigCount(2320978352ull)},
                       {3, BigCount(74128573428ull)},
                       {4, BigCount(128268820802ull)},
                       {6, BigCount(89637133284ull)},
                       {12, BigCount(566167187562ull)}};
    v.f4_sums_base4 = {{2, BigCount(53336702474849828ull)},
                       {3, BigCount(3019662424037271148ull)},
                       {4, big_from_decimal("25754060568741983624")},
                       {6, BigCount(14729824485525634108ull)},
                       {12, BigCount(15054599294580333880ull)}};

    v.g2_sum_base7_mod5 = big_from_decimal("1404812111893131438640857806");
    v.g2_sum_base7_mod7 = big_from_decimal("299895177645066825375626");
    v.f4_sum_base5_mod5 = big_from_decimal("157853570524864492086");

    v.ec7_sizes = {{7, 9999}, {3, 108873}, {21, 118863}, {5, 154863}};

    v.d9_residues = {{2, 0}, {3, 0}, {5, 1}, {7, 6}};
    v.d9_crt_modulus = 210;
    v.d9_crt_residue = 6;
    return v;
  }();
  return kv;
}

}  // namespace dedekind
