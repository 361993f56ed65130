#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace dlab {

// Splits [0, n) into `workers` contiguous chunks and runs fn(chunk, begin,
// end) for each, one thread per chunk. Chunk boundaries depend only on n and
// workers, so callers that merge per-chunk results in chunk order get output
// that is independent of scheduling.
template <class Fn>
void parallel_chunks(std::size_t n, int workers, Fn&& fn) {
  const std::size_t w = static_cast<std::size_t>(std::max(1, workers));
  if (w == 1 || n < 2 * w) {
    fn(std::size_t{0}, std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(w);
  const std::size_t step = (n + w - 1) / w;
  for (std::size_t c = 0; c < w; ++c) {
    const std::size_t b = std::min(n, c * step), e = std::min(n, b + step);
    threads.emplace_back([&, c, b, e] {
      try {
        fn(c, b, e);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

inline std::size_t chunk_count(std::size_t n, int workers) {
  const std::size_t w = static_cast<std::size_t>(std::max(1, workers));
  return (w == 1 || n < 2 * w) ? 1 : w;
}

}  // namespace dlab
