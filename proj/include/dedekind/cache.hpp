#pragma once

#include <filesystem>
#include <map>
#include <memory>

#include "dedekind/intervals.hpp"
#include "dedekind/parallel.hpp"
#include "dedekind/poset_table.hpp"
#include "dedekind/symmetry.hpp"

namespace dedekind {

// Binary cache formats. All integers little-endian.
//   lattice  "DDKD": magic, version 1, arity byte, u64 count, then the
//            elements as ceil(2^n/8)-byte words in sorted order.
//   downs    "DDKT": magic, version 1, arity byte, u64 count, u64 counts
//            aligned to the lattice order.
//   orbits   "DDKO": magic, version 1, arity byte, u64 count, u64 canonical
//            value per element, then u32 orbit size per representative in
//            ascending representative order.
// Loads validate magic, version, arity, and structural consistency; anything
// off throws std::runtime_error.

void save_lattice(const PosetTable& table, const std::filesystem::path& path);
PosetTable load_lattice(const std::filesystem::path& path, int expected_arity);

void save_down_table(const DownTable& down, const std::filesystem::path& path);
DownTable load_down_table(const std::filesystem::path& path, const PosetTable& table);

void save_orbits(const OrbitTable& orbits, const std::filesystem::path& path);
OrbitTable load_orbits(const std::filesystem::path& path, const PosetTable& table);

// Cache-aware owner of per-arity tables. Builds on miss, persists when a
// cache directory is configured, and hands out stable references; results
// never depend on whether a load or a build produced them.
class LatticeStore {
 public:
  // Empty dir disables persistence.
  LatticeStore(std::filesystem::path dir, const Executor* exec = nullptr);

  // Optional diagnostic sink for the heavy builds (orbits and down tables).
  Executor::Progress build_progress;

  const PosetTable& table(int n);
  const DownTable& down(int n);
  const PermAction& action(int n);
  const OrbitTable& orbits(int n);

  const Executor* executor() const { return exec_; }

 private:
  std::filesystem::path file(const char* stem, int n) const;

  std::filesystem::path dir_;
  const Executor* exec_;
  std::map<int, std::unique_ptr<PosetTable>> tables_;
  std::map<int, std::unique_ptr<DownTable>> downs_;
  std::map<int, std::unique_ptr<PermAction>> actions_;
  std::map<int, std::unique_ptr<OrbitTable>> orbits_;
};

}  // namespace dedekind
