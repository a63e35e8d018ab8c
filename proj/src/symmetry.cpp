#include "dedekind/symmetry.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

namespace dedekind {

std::vector<Permutation> all_permutations(int n) {
  Permutation p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), std::uint8_t{0});
  std::vector<Permutation> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

namespace {

// Point remap induced by pi: bit j of the image index is bit pi[j] of the
// source index, i.e. sigma(i) is the index of the tuple i o pi.
unsigned remap_point(const Permutation& pi, unsigned i) {
  unsigned out = 0;
  for (std::size_t j = 0; j < pi.size(); ++j) {
    out |= ((i >> pi[j]) & 1u) << j;
  }
  return out;
}

}  // namespace

Mbf apply_perm(const Permutation& pi, const Mbf& g) {
  if (pi.size() != g.arity) {
    throw std::invalid_argument("permutation size does not match arity");
  }
  const unsigned w = g.width();
  Word out = 0;
  for (unsigned i = 0; i < w; ++i) {
    if (word_bit(g.bits, g.arity, remap_point(pi, i))) {
      out |= Word{1} << (w - 1 - i);
    }
  }
  return Mbf(out, g.arity);
}

PermAction::PermAction(int n) : n_(n), chunks_((lattice_width(n) + 7) / 8) {
  perms_ = all_permutations(n);
  const unsigned width = lattice_width(n);
  tables_.assign(perms_.size() * kTableStride, 0);
  for (std::size_t k = 0; k < perms_.size(); ++k) {
    // dst_of_src[s] = word bit of the image that receives source word bit s.
    std::array<unsigned, 64> dst_of_src{};
    for (unsigned d = 0; d < width; ++d) {
      const unsigned dst_pos = width - 1 - d;
      const unsigned src_pos = remap_point(perms_[k], dst_pos);
      dst_of_src[width - 1 - src_pos] = d;
    }
    Word* t = &tables_[k * kTableStride];
    for (unsigned c = 0; c < chunks_; ++c) {
      for (unsigned v = 0; v < 256; ++v) {
        Word img = 0;
        for (unsigned b = 0; b < 8; ++b) {
          const unsigned s = 8 * c + b;
          if (s < width && (v & (1u << b))) {
            img |= Word{1} << dst_of_src[s];
          }
        }
        t[c * 256 + v] = img;
      }
    }
  }
}

Mbf canonical(const Mbf& g, const PermAction& action) {
  if (g.arity != action.arity()) {
    throw std::invalid_argument("action arity does not match argument");
  }
  return Mbf(action.canonical_word(g.bits), g.arity);
}

OrbitTable build_orbits(const PosetTable& table, const PermAction& action,
                        const Executor* exec, const Executor::Progress& progress) {
  if (table.arity() != action.arity()) {
    throw std::invalid_argument("action arity does not match table");
  }
  OrbitTable orbits;
  orbits.arity = table.arity();
  orbits.canon.resize(table.size());

  const Executor& ex = exec ? *exec : serial_executor();
  ex.run_chunks(
      table.size(),
      [&](std::size_t, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
          orbits.canon[i] = action.canonical_word(table.word(i));
        }
      },
      progress);

  std::vector<Word> rep_words;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (orbits.canon[i] == table.word(i)) {
      orbits.reps.push_back(static_cast<std::uint32_t>(i));
      rep_words.push_back(table.word(i));
    }
  }

  orbits.class_of.resize(table.size());
  ex.run_chunks(table.size(), [&](std::size_t, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      auto it = std::lower_bound(rep_words.begin(), rep_words.end(), orbits.canon[i]);
      orbits.class_of[i] = static_cast<std::uint32_t>(it - rep_words.begin());
    }
  });

  orbits.gamma.assign(orbits.reps.size(), 0);
  for (std::uint32_t c : orbits.class_of) ++orbits.gamma[c];
  return orbits;
}

std::map<std::uint32_t, std::uint64_t> gamma_histogram(const OrbitTable& orbits) {
  std::map<std::uint32_t, std::uint64_t> hist;
  for (std::uint32_t g : orbits.gamma) ++hist[g];
  return hist;
}

std::uint64_t no_symmetry_count(const OrbitTable& orbits) {
  std::uint64_t factorial = 1;
  for (int k = 2; k <= orbits.arity; ++k) factorial *= static_cast<std::uint64_t>(k);
  std::uint64_t count = 0;
  for (std::uint32_t g : orbits.gamma) {
    if (g == factorial) ++count;
  }
  return count;
}

EComplement e_complement(const PosetTable& table, const OrbitTable& orbits,
                         std::uint64_t m) {
  if (m < 2) throw std::invalid_argument("modulus must be at least 2");
  if (table.arity() != orbits.arity) {
    throw std::invalid_argument("orbit table arity does not match lattice");
  }
  EComplement ec;
  ec.modulus = m;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (orbits.gamma[orbits.class_of[i]] % m != 0) {
      ec.elements.push_back(table.word(i));
    }
  }
  for (std::size_t c = 0; c < orbits.class_count(); ++c) {
    if (orbits.gamma[c] % m != 0) {
      ec.rep_words.push_back(table.word(orbits.reps[c]));
      ec.rep_gammas.push_back(orbits.gamma[c]);
    }
  }
  return ec;
}

}  // namespace dedekind
