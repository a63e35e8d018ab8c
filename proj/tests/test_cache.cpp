#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "dedekind/cache.hpp"

using namespace dedekind;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("ddk-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int counter;
};
int TempDir::counter = 0;

}  // namespace

TEST_CASE("lattice cache round trip") {
  TempDir dir;
  const PosetTable t4 = enumerate_lattice(4);
  const fs::path file = dir.path / "lattice-4.bin";
  save_lattice(t4, file);

  const PosetTable loaded = load_lattice(file, 4);
  CHECK(loaded.arity() == 4);
  CHECK(loaded.words() == t4.words());

  CHECK_THROWS_AS(load_lattice(file, 3), std::runtime_error);  // arity mismatch
  CHECK_THROWS_AS(load_lattice(dir.path / "missing.bin", 4), std::runtime_error);
}

TEST_CASE("corrupt cache files are rejected") {
  TempDir dir;
  const PosetTable t3 = enumerate_lattice(3);
  const fs::path file = dir.path / "lattice-3.bin";
  save_lattice(t3, file);

  SUBCASE("bad magic") {
    std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(0);
    f.write("XXXX", 4);
    f.close();
    CHECK_THROWS_AS(load_lattice(file, 3), std::runtime_error);
  }
  SUBCASE("bad version") {
    std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(4);
    f.put(char(9));
    f.close();
    CHECK_THROWS_AS(load_lattice(file, 3), std::runtime_error);
  }
  SUBCASE("truncated") {
    const auto size = fs::file_size(file);
    fs::resize_file(file, size - 3);
    CHECK_THROWS_AS(load_lattice(file, 3), std::runtime_error);
  }
  SUBCASE("trailing bytes") {
    std::ofstream f(file, std::ios::app | std::ios::binary);
    f.put(char(0));
    f.close();
    CHECK_THROWS_AS(load_lattice(file, 3), std::runtime_error);
  }
  SUBCASE("non-monotone element") {
    // flip a payload byte inside the element area
    std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(14);
    f.put(char(0x02));
    f.close();
    CHECK_THROWS_AS(load_lattice(file, 3), std::runtime_error);
  }
}

TEST_CASE("down table cache round trip") {
  TempDir dir;
  const PosetTable t4 = enumerate_lattice(4);
  const DownTable down = build_down_table(t4);
  const fs::path file = dir.path / "down-4.bin";
  save_down_table(down, file);
  const DownTable loaded = load_down_table(file, t4);
  CHECK(loaded.arity == 4);
  CHECK(loaded.counts == down.counts);

  const PosetTable t3 = enumerate_lattice(3);
  CHECK_THROWS_AS(load_down_table(file, t3), std::runtime_error);
}

TEST_CASE("orbit cache round trip") {
  TempDir dir;
  const PosetTable t4 = enumerate_lattice(4);
  const OrbitTable orbits = build_orbits(t4, PermAction(4));
  const fs::path file = dir.path / "orbits-4.bin";
  save_orbits(orbits, file);
  const OrbitTable loaded = load_orbits(file, t4);
  CHECK(loaded.canon == orbits.canon);
  CHECK(loaded.class_of == orbits.class_of);
  CHECK(loaded.reps == orbits.reps);
  CHECK(loaded.gamma == orbits.gamma);
}

TEST_CASE("store persists and reloads identically") {
  TempDir dir;
  std::vector<Word> words_first;
  std::vector<std::uint64_t> downs_first;
  std::vector<std::uint32_t> gammas_first;
  {
    LatticeStore store(dir.path);
    words_first = store.table(5).words();
    downs_first = store.down(5).counts;
    gammas_first = store.orbits(5).gamma;
  }
  CHECK(fs::exists(dir.path / "lattice-5.bin"));
  CHECK(fs::exists(dir.path / "down-5.bin"));
  CHECK(fs::exists(dir.path / "orbits-5.bin"));
  {
    LatticeStore store(dir.path);
    CHECK(store.table(5).words() == words_first);
    CHECK(store.down(5).counts == downs_first);
    CHECK(store.orbits(5).gamma == gammas_first);
  }
  // a corrupt file is ignored and rebuilt
  {
    std::ofstream f(dir.path / "down-5.bin", std::ios::binary | std::ios::trunc);
    f.write("garbage", 7);
  }
  {
    LatticeStore store(dir.path);
    CHECK(store.down(5).counts == downs_first);
  }
}

TEST_CASE("store without a directory never writes") {
  LatticeStore store({});
  CHECK(store.table(3).size() == 20);
  CHECK(store.down(3).counts.size() == 20);
}
