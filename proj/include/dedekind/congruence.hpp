#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dedekind/bigcount.hpp"

namespace dedekind {

struct ResidueEntry {
  std::uint64_t modulus = 0;
  std::uint64_t residue = 0;
};

struct ResidueSystem {
  std::vector<ResidueEntry> entries;
  BigCount modulus;  // product of the entry moduli
  BigCount residue;  // unique value modulo the product agreeing with every entry
};

// Combines pairwise coprime congruences by iterative extended-gcd steps.
// Throws std::invalid_argument on moduli < 2, out-of-range residues, or a
// non-coprime pair (named in the message).
ResidueSystem crt_combine(std::span<const ResidueEntry> entries);

// Residue of the tabulated monotone-function count for 0 <= n <= 8; the
// ninth value is unknown and raises std::invalid_argument.
std::uint64_t known_residue(int n, std::uint64_t m);

// Published reference values used as golden fixtures. Everything here is
// either an OEIS-tabulated sequence value or a reported computation result;
// the reported large-scale sums are shipped as constants, not recomputed.
struct KnownValues {
  std::vector<BigCount> dedekind;       // |D_n| for n = 0..8        (A000372)
  std::vector<BigCount> classes;        // classes of D_n, n = 0..8  (A003182)
  std::vector<BigCount> selfdual;       // self-duals, n = 0..9      (A001206)
  std::vector<BigCount> p4;             // 4-chain counts, n = 0..6
  std::vector<std::uint64_t> no_symmetry;  // full-orbit classes, n = 1..7 (A220879)

  std::vector<std::pair<std::uint32_t, std::uint32_t>> r4_gamma_histogram;
  std::vector<std::pair<std::uint32_t, std::uint64_t>> r7_gamma_histogram;

  // Exact reduced sums over the base-4 lattice, keyed by modulus.
  std::vector<std::pair<std::uint64_t, BigCount>> h3_sums_base4;
  std::vector<std::pair<std::uint64_t, BigCount>> f4_sums_base4;

  // Reported large-scale reduced sums (base arity 7 pair kernel, base
  // arity 5 six-fold kernel); far beyond this build's materialization limit.
  BigCount g2_sum_base7_mod5;
  BigCount g2_sum_base7_mod7;
  BigCount f4_sum_base5_mod5;

  // Reported sizes of the not-divisible sets over the base-7 lattice.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ec7_sizes;

  // The headline congruence system for the ninth value.
  std::vector<ResidueEntry> d9_residues;  // moduli 2, 3, 5, 7
  std::uint64_t d9_crt_modulus = 0;
  std::uint64_t d9_crt_residue = 0;
};

const KnownValues& known_values();

}  // namespace dedekind
