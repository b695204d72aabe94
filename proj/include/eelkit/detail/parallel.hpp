#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace eelkit::detail {

// Thread count resolution: explicit request > EELKIT_THREADS > hardware.
inline int resolve_threads(int requested) {
  if (const char* env = std::getenv("EELKIT_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Splits [0, n) into at most `threads` contiguous chunks and runs
// fn(chunk_index, begin, end) on each. Chunk boundaries depend only on
// (n, threads), so per-chunk results can be merged in chunk order to obtain
// a reduction whose result is independent of scheduling.
template <typename Fn>
void parallel_chunks(std::size_t n, int threads, Fn&& fn) {
  const int t = threads < 1 ? 1 : threads;
  const std::size_t chunks = static_cast<std::size_t>(t) < n ? static_cast<std::size_t>(t) : (n > 0 ? n : 1);
  if (chunks <= 1) {
    fn(std::size_t{0}, std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(chunks);
  const std::size_t base = n / chunks, rem = n % chunks;
  std::size_t begin = 0;
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t len = base + (c < rem ? 1 : 0);
    const std::size_t end = begin + len;
    pool.emplace_back([c, begin, end, &fn] { fn(c, begin, end); });
    begin = end;
  }
  for (auto& th : pool) th.join();
}

}  // namespace eelkit::detail
