#ifndef ERI_PARALLEL_HPP
#define ERI_PARALLEL_HPP

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace eri {

inline int& thread_count_ref() {
  static int count = 0;  // 0 = auto
  return count;
}

inline void set_thread_count(int n) { thread_count_ref() = n; }

inline int resolved_thread_count() {
  int n = thread_count_ref();
  if (n > 0) return n;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? (int)hw : 1;
}

// Parallel loop over [0, n). Work items must write to disjoint slots; results
// are then identical for any thread count.
inline void parallel_for(int n, const std::function<void(int)>& body) {
  int threads = std::min(resolved_thread_count(), n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&]() {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= n) return;
        body(i);
      }
    });
  for (auto& th : pool) th.join();
}

}  // namespace eri

#endif
