#include "turan/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace turan {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("TURAN_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return std::clamp<int>(static_cast<int>(hw), 1, 8);
}

void parallel_blocks(std::uint64_t total, int threads,
                     const std::function<void(int, std::uint64_t, std::uint64_t)>& fn) {
  int t = std::max(1, threads);
  if (t == 1 || total < 2 * static_cast<std::uint64_t>(t)) {
    fn(0, 0, total);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(t));
  std::uint64_t chunk = total / static_cast<std::uint64_t>(t);
  for (int i = 0; i < t; ++i) {
    std::uint64_t lo = chunk * static_cast<std::uint64_t>(i);
    std::uint64_t hi = (i + 1 == t) ? total : lo + chunk;
    pool.emplace_back([&fn, i, lo, hi] { fn(i, lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace turan
