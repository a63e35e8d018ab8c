#include "dedekind/parallel.hpp"

#include <atomic>
#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dedekind {

namespace {
constexpr std::uint64_t kMaxChunks = 192;
}

Executor::Executor(unsigned threads) : threads_(threads) {
  if (threads_ == 0) {
    threads_ = std::max(1u, std::thread::hardware_concurrency());
  }
}

std::uint64_t Executor::chunk_count(std::uint64_t count) {
  return std::min(count, kMaxChunks);
}

void Executor::run_chunks(std::uint64_t count, const ChunkFn& fn,
                          const Progress& progress) const {
  if (count == 0) return;
  const std::uint64_t chunks = chunk_count(count);
  const std::uint64_t base = count / chunks;
  const std::uint64_t extra = count % chunks;
  auto bounds = [&](std::uint64_t c) {
    // First `extra` chunks carry one extra item.
    std::uint64_t begin = c * base + std::min<std::uint64_t>(c, extra);
    std::uint64_t len = base + (c < extra ? 1 : 0);
    return std::pair<std::uint64_t, std::uint64_t>(begin, begin + len);
  };

  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(threads_, chunks));
  if (workers <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) {
      auto [b, e] = bounds(c);
      fn(static_cast<std::size_t>(c), b, e);
      if (progress) progress(c + 1, chunks);
    }
    return;
  }

  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> done{0};
  std::mutex progress_mu;
  std::exception_ptr first_error;
  std::mutex error_mu;

  auto worker = [&]() {
    for (;;) {
      std::uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= chunks) return;
      try {
        auto [b, e] = bounds(c);
        fn(static_cast<std::size_t>(c), b, e);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
        return;
      }
      std::uint64_t d = done.fetch_add(1, std::memory_order_relaxed) + 1;
      if (progress) {
        std::lock_guard<std::mutex> lock(progress_mu);
        progress(d, chunks);
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

const Executor& serial_executor() {
  static const Executor exec(1);
  return exec;
}

}  // namespace dedekind
