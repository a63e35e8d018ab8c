#pragma once

#include <cstdint>
#include <functional>

namespace dedekind {

// Chunked parallel driver. Chunk boundaries depend only on the item count,
// never on the thread count, and every accumulation in this codebase is an
// exact integer sum, so results are identical for any thread count.
class Executor {
 public:
  // threads == 0 picks the hardware concurrency.
  explicit Executor(unsigned threads = 0);

  unsigned threads() const { return threads_; }

  using ChunkFn =
      std::function<void(std::size_t chunk, std::uint64_t begin, std::uint64_t end)>;
  using Progress = std::function<void(std::uint64_t done, std::uint64_t total)>;

  // Splits [0, count) into chunk_count(count) contiguous ranges and runs fn
  // once per range. fn must only write per-chunk state.
  void run_chunks(std::uint64_t count, const ChunkFn& fn,
                  const Progress& progress = nullptr) const;

  static std::uint64_t chunk_count(std::uint64_t count);

 private:
  unsigned threads_;
};

// Serial fallback used when no executor is supplied.
const Executor& serial_executor();

}  // namespace dedekind
