#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dpt {

// Worker count from DPT_THREADS, defaulting to the hardware concurrency.
inline int worker_count() {
  if (const char* s = std::getenv("DPT_THREADS")) {
    const int n = std::atoi(s);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Calls f(i) for i in [0, n) on static chunks; results must be written to per-index slots.
template <class F>
void parallel_for(long n, F&& f) {
  const int workers = static_cast<int>(std::min<long>(worker_count(), std::max<long>(n, 1)));
  if (workers <= 1) {
    for (long i = 0; i < n; ++i) f(i);
    return;
  }
  std::exception_ptr err;
  std::mutex m;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (long i = w; i < n; i += workers) f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(m);
        if (!err) err = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

// Pairwise sum, independent of how the values were produced.
inline double pairwise_sum(const double* x, long n) {
  if (n <= 8) {
    double s = 0.0;
    for (long i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const long h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

inline double pairwise_sum(const std::vector<double>& x) { return pairwise_sum(x.data(), static_cast<long>(x.size())); }

}  // namespace dpt
