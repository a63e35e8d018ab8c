#include "dedekind/cache.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string_view>

namespace dedekind {

namespace {

constexpr std::uint8_t kVersion = 1;

void put_u64(std::ostream& out, std::uint64_t v) {
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(buf, 8);
}

void put_u32(std::ostream& out, std::uint32_t v) {
  char buf[4];
  for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(buf, 4);
}

void put_word(std::ostream& out, Word v, unsigned bytes) {
  char buf[8];
  for (unsigned i = 0; i < bytes; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(buf, static_cast<std::streamsize>(bytes));
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char buf[8];
  in.read(reinterpret_cast<char*>(buf), 8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | buf[i];
  return v;
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char buf[4];
  in.read(reinterpret_cast<char*>(buf), 4);
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | buf[i];
  return v;
}

Word get_word(std::istream& in, unsigned bytes) {
  unsigned char buf[8] = {0};
  in.read(reinterpret_cast<char*>(buf), static_cast<std::streamsize>(bytes));
  Word v = 0;
  for (int i = static_cast<int>(bytes) - 1; i >= 0; --i) v = (v << 8) | buf[i];
  return v;
}

unsigned element_bytes(int arity) { return (lattice_width(arity) + 7) / 8; }

class CacheWriter {
 public:
  CacheWriter(const std::filesystem::path& path, const char* magic, int arity)
      : final_path_(path), tmp_path_(path.string() + ".tmp") {
    std::filesystem::create_directories(path.parent_path());
    out_.open(tmp_path_, std::ios::binary | std::ios::trunc);
    if (!out_) throw std::runtime_error("cannot write " + tmp_path_.string());
    out_.write(magic, 4);
    out_.put(static_cast<char>(kVersion));
    out_.put(static_cast<char>(arity));
  }

  std::ofstream& stream() { return out_; }

  void commit() {
    out_.flush();
    if (!out_) throw std::runtime_error("write failed: " + tmp_path_.string());
    out_.close();
    std::filesystem::rename(tmp_path_, final_path_);
  }

 private:
  std::filesystem::path final_path_;
  std::filesystem::path tmp_path_;
  std::ofstream out_;
};

std::ifstream open_checked(const std::filesystem::path& path, const char* magic,
                           int expected_arity) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  char m[4];
  in.read(m, 4);
  if (!in || std::string_view(m, 4) != std::string_view(magic, 4)) {
    throw std::runtime_error("bad magic in " + path.string());
  }
  const int version = in.get();
  if (version != kVersion) {
    throw std::runtime_error("unsupported cache version in " + path.string());
  }
  const int arity = in.get();
  if (arity != expected_arity) {
    throw std::runtime_error("cache arity mismatch in " + path.string());
  }
  return in;
}

void require_good(std::istream& in, const std::filesystem::path& path) {
  if (!in) throw std::runtime_error("truncated cache file " + path.string());
  // There must be no trailing garbage.
  if (in.peek() != std::char_traits<char>::eof()) {
    throw std::runtime_error("trailing bytes in cache file " + path.string());
  }
}

}  // namespace

void save_lattice(const PosetTable& table, const std::filesystem::path& path) {
  CacheWriter w(path, "DDKD", table.arity());
  put_u64(w.stream(), table.size());
  const unsigned bytes = element_bytes(table.arity());
  for (Word v : table.words()) put_word(w.stream(), v, bytes);
  w.commit();
}

PosetTable load_lattice(const std::filesystem::path& path, int expected_arity) {
  std::ifstream in = open_checked(path, "DDKD", expected_arity);
  const std::uint64_t count = get_u64(in);
  const unsigned bytes = element_bytes(expected_arity);
  std::vector<Word> words(count);
  for (std::uint64_t i = 0; i < count; ++i) words[i] = get_word(in, bytes);
  require_good(in, path);
  for (std::uint64_t i = 0; i < count; ++i) {
    if (i > 0 && words[i] <= words[i - 1]) {
      throw std::runtime_error("cache elements out of order in " + path.string());
    }
    if (!is_monotone_word(words[i], expected_arity)) {
      throw std::runtime_error("non-monotone cache element in " + path.string());
    }
  }
  return PosetTable(expected_arity, std::move(words));
}

void save_down_table(const DownTable& down, const std::filesystem::path& path) {
  CacheWriter w(path, "DDKT", down.arity);
  put_u64(w.stream(), down.counts.size());
  for (std::uint64_t v : down.counts) put_u64(w.stream(), v);
  w.commit();
}

DownTable load_down_table(const std::filesystem::path& path, const PosetTable& table) {
  std::ifstream in = open_checked(path, "DDKT", table.arity());
  const std::uint64_t count = get_u64(in);
  if (count != table.size()) {
    throw std::runtime_error("count mismatch in " + path.string());
  }
  DownTable down;
  down.arity = table.arity();
  down.counts.resize(count);
  for (std::uint64_t i = 0; i < count; ++i) down.counts[i] = get_u64(in);
  require_good(in, path);
  if (count > 0 && (down.counts.front() != 1 || down.counts.back() != count)) {
    throw std::runtime_error("implausible down counts in " + path.string());
  }
  return down;
}

void save_orbits(const OrbitTable& orbits, const std::filesystem::path& path) {
  CacheWriter w(path, "DDKO", orbits.arity);
  put_u64(w.stream(), orbits.canon.size());
  for (Word v : orbits.canon) put_u64(w.stream(), v);
  for (std::uint32_t g : orbits.gamma) put_u32(w.stream(), g);
  w.commit();
}

OrbitTable load_orbits(const std::filesystem::path& path, const PosetTable& table) {
  std::ifstream in = open_checked(path, "DDKO", table.arity());
  const std::uint64_t count = get_u64(in);
  if (count != table.size()) {
    throw std::runtime_error("count mismatch in " + path.string());
  }
  OrbitTable orbits;
  orbits.arity = table.arity();
  orbits.canon.resize(count);
  for (std::uint64_t i = 0; i < count; ++i) orbits.canon[i] = get_u64(in);

  std::vector<Word> rep_words;
  for (std::uint64_t i = 0; i < count; ++i) {
    if (orbits.canon[i] == table.word(i)) {
      orbits.reps.push_back(static_cast<std::uint32_t>(i));
      rep_words.push_back(table.word(i));
    }
  }
  orbits.gamma.resize(orbits.reps.size());
  for (std::size_t c = 0; c < orbits.gamma.size(); ++c) {
    orbits.gamma[c] = get_u32(in);
  }
  require_good(in, path);

  orbits.class_of.resize(count);
  std::uint64_t gamma_total = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    auto it = std::lower_bound(rep_words.begin(), rep_words.end(), orbits.canon[i]);
    if (it == rep_words.end() || *it != orbits.canon[i]) {
      throw std::runtime_error("canonical value without representative in " +
                               path.string());
    }
    orbits.class_of[i] = static_cast<std::uint32_t>(it - rep_words.begin());
  }
  for (std::uint32_t g : orbits.gamma) gamma_total += g;
  if (gamma_total != count) {
    throw std::runtime_error("orbit sizes do not partition the lattice in " +
                             path.string());
  }
  return orbits;
}

LatticeStore::LatticeStore(std::filesystem::path dir, const Executor* exec)
    : dir_(std::move(dir)), exec_(exec) {}

std::filesystem::path LatticeStore::file(const char* stem, int n) const {
  return dir_ / (std::string(stem) + "-" + std::to_string(n) + ".bin");
}

namespace {

// A corrupt cache entry is rebuilt, not fatal; the complaint goes to the
// diagnostic stream.
template <class Load>
auto try_load(const std::filesystem::path& path, Load&& load)
    -> decltype(load()) {
  if (!std::filesystem::exists(path)) return nullptr;
  try {
    return load();
  } catch (const std::exception& e) {
    std::cerr << "cache: ignoring " << path.string() << ": " << e.what() << "\n";
    return nullptr;
  }
}

}  // namespace

const PosetTable& LatticeStore::table(int n) {
  auto it = tables_.find(n);
  if (it != tables_.end()) return *it->second;
  std::unique_ptr<PosetTable> built;
  if (!dir_.empty()) {
    const auto path = file("lattice", n);
    built = try_load(path, [&] {
      return std::make_unique<PosetTable>(load_lattice(path, n));
    });
  }
  if (!built) {
    built = std::make_unique<PosetTable>(enumerate_lattice(n));
    if (!dir_.empty() && n >= 5) save_lattice(*built, file("lattice", n));
  }
  return *tables_.emplace(n, std::move(built)).first->second;
}

const DownTable& LatticeStore::down(int n) {
  auto it = downs_.find(n);
  if (it != downs_.end()) return *it->second;
  const PosetTable& t = table(n);
  std::unique_ptr<DownTable> built;
  if (!dir_.empty()) {
    const auto path = file("down", n);
    built = try_load(path, [&] {
      return std::make_unique<DownTable>(load_down_table(path, t));
    });
  }
  if (!built) {
    built = std::make_unique<DownTable>(build_down_table(t, exec_, build_progress));
    if (!dir_.empty() && n >= 5) save_down_table(*built, file("down", n));
  }
  return *downs_.emplace(n, std::move(built)).first->second;
}

const PermAction& LatticeStore::action(int n) {
  auto it = actions_.find(n);
  if (it != actions_.end()) return *it->second;
  return *actions_.emplace(n, std::make_unique<PermAction>(n)).first->second;
}

const OrbitTable& LatticeStore::orbits(int n) {
  auto it = orbits_.find(n);
  if (it != orbits_.end()) return *it->second;
  const PosetTable& t = table(n);
  std::unique_ptr<OrbitTable> built;
  if (!dir_.empty()) {
    const auto path = file("orbits", n);
    built = try_load(path, [&] {
      return std::make_unique<OrbitTable>(load_orbits(path, t));
    });
  }
  if (!built) {
    built = std::make_unique<OrbitTable>(
        build_orbits(t, action(n), exec_, build_progress));
    if (!dir_.empty() && n >= 5) save_orbits(*built, file("orbits", n));
  }
  return *orbits_.emplace(n, std::move(built)).first->second;
}

}  // namespace dedekind
