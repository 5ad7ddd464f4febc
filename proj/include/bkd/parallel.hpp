#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bkd {

/// Evaluates f(n) for n in [from, to] on up to `workers` threads and returns
/// the results in n order. The first exception thrown by any worker is
/// rethrown on the calling thread.
template <class R, class F>
std::vector<R> parallel_map(long from, long to, unsigned workers, F f) {
  if (to < from) return {};
  const long count = to - from + 1;
  std::vector<R> out(static_cast<std::size_t>(count));
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::min<long>(count, 1024))));
  if (workers == 1) {
    for (long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = f(from + i);
    return out;
  }

  constexpr long kChunk = 32;
  std::atomic<long> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto run = [&] {
    for (;;) {
      const long start = next.fetch_add(kChunk);
      if (start >= count) return;
      const long stop = std::min(count, start + kChunk);
      try {
        for (long i = start; i < stop; ++i) out[static_cast<std::size_t>(i)] = f(from + i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace bkd
