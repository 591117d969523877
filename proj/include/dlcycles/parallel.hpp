#pragma once

// Fixed-chunk parallel map/reduce. Chunk boundaries depend only on the range,
// never on the thread count, and partial results are combined in chunk order,
// so floating-point reductions are bit-stable across thread counts.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dlc {

/// Thread count from DLCYCLES_THREADS, else hardware concurrency, at least 1.
inline unsigned default_threads() {
  if (const char* env = std::getenv("DLCYCLES_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(chunk_index) for chunk_index in [0, chunks) on up to `threads` workers.
/// The first exception thrown by any chunk is rethrown on the caller.
template <class Body>
void parallel_for_chunks(std::size_t chunks, unsigned threads, Body&& body) {
  threads = std::max(1u, threads);
  if (threads == 1 || chunks <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) body(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        body(c);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = chunks;
      }
    }
  };
  const unsigned n = static_cast<unsigned>(std::min<std::size_t>(threads, chunks));
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

/// Splits [lo, hi) into chunks of `chunk` elements, maps each to a T with
/// map(begin, end), and folds the partials left to right with combine.
template <class T, class Map, class Combine>
T chunked_reduce(std::size_t lo, std::size_t hi, std::size_t chunk, unsigned threads, T init,
                 Map&& map, Combine&& combine) {
  if (hi <= lo) return init;
  chunk = std::max<std::size_t>(1, chunk);
  const std::size_t chunks = (hi - lo + chunk - 1) / chunk;
  std::vector<T> partial(chunks, init);
  parallel_for_chunks(chunks, threads, [&](std::size_t c) {
    const std::size_t b = lo + c * chunk;
    partial[c] = map(b, std::min(hi, b + chunk));
  });
  T acc = std::move(init);
  for (auto& part : partial) acc = combine(std::move(acc), part);
  return acc;
}

}  // namespace dlc
