#include "scatterbound/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace scatterbound {

int worker_count() {
  static const int count = [] {
    if (const char* env = std::getenv("SCATTERBOUND_THREADS")) {
      const int n = std::atoi(env);
      if (n >= 1) return std::min(n, 64);
      return 1;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(hw, 1u, 8u));
  }();
  return count;
}

void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
  const int workers = worker_count();
  if (workers <= 1 || n < 64) {
    fn(0, n);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) {
    const std::size_t begin = static_cast<std::size_t>(t) * chunk;
    if (begin >= n) break;
    const std::size_t end = std::min(n, begin + chunk);
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace scatterbound
