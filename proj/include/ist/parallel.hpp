#pragma once

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <vector>

namespace ist {

// Worker count from NONLOCAL_IST_THREADS; 0 or unset means one per core.
inline unsigned thread_count() {
  static const unsigned n = [] {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("NONLOCAL_IST_THREADS")) {
      const long v = std::strtol(env, nullptr, 10);
      if (v > 0) return static_cast<unsigned>(v);
    }
    return hw;
  }();
  return n;
}

// f(i) for i in [0, n), dynamically chunked across threads.
template <class F>
void parallel_for(std::size_t n, F&& f) {
  const unsigned nt = thread_count();
  if (n == 0) return;
  if (nt <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  const std::size_t chunk = std::max<std::size_t>(1, n / (8 * nt));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::atomic<bool> failed{false};
  std::mutex err_mtx;
  auto work = [&] {
    try {
      for (;;) {
        const std::size_t lo = next.fetch_add(chunk);
        if (lo >= n || failed.load()) return;
        const std::size_t hi = std::min(n, lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) f(i);
      }
    } catch (...) {
      std::lock_guard<std::mutex> g(err_mtx);
      if (!failed.exchange(true)) err = std::current_exception();
    }
  };
  pool.reserve(nt);
  for (unsigned t = 0; t < nt; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace ist
