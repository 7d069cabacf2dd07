#pragma once
// Deterministic work splitting: a range is cut into one contiguous chunk per
// worker and each worker writes only its own slots, so results never depend
// on scheduling. Worker count 1 runs inline on the calling thread.

#include <cstddef>
#include <exception>
#include <stdexcept>
#include <thread>
#include <vector>

namespace bilayer {

inline std::size_t default_worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// fn(begin, end) is called for each contiguous chunk; chunks partition
// [0, n). The first exception thrown by any chunk is rethrown here.
template <typename Fn>
void parallel_chunks(std::size_t n, std::size_t workers, Fn&& fn) {
  if (workers == 0) throw std::invalid_argument("worker count must be >= 1");
  if (n == 0) return;
  if (workers > n) workers = n;
  if (workers == 1) {
    fn(std::size_t{0}, n);
    return;
  }

  const std::size_t base = n / workers;
  const std::size_t extra = n % workers;
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  threads.reserve(workers);
  std::size_t begin = 0;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t len = base + (w < extra ? 1 : 0);
    const std::size_t end = begin + len;
    threads.emplace_back([&fn, &errors, w, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
    begin = end;
  }
  for (auto& t : threads) t.join();
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
}

}  // namespace bilayer
