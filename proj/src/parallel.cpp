#include "ddm/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ddm {

namespace {
std::atomic<std::size_t> g_max_threads{0};  // 0 = use hardware concurrency
}

std::size_t max_threads() {
  const std::size_t k = g_max_threads.load();
  if (k > 0) return k;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

void set_max_threads(std::size_t k) { g_max_threads.store(k); }

void parallel_for(std::size_t count, std::size_t grain,
                  const std::function<void(std::size_t, std::size_t)>& body) {
  if (count == 0) return;
  const std::size_t workers =
      std::min({max_threads(), count, grain > 0 ? (count + grain - 1) / grain
                                                : count});
  if (workers <= 1) {
    body(0, count);
    return;
  }

  std::exception_ptr err;
  std::mutex err_mutex;
  auto run = [&](std::size_t begin, std::size_t end) {
    try {
      body(begin, end);
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mutex);
      if (!err) err = std::current_exception();
    }
  };

  const std::size_t block = (count + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) {
    const std::size_t begin = w * block;
    if (begin >= count) break;
    pool.emplace_back(run, begin, std::min(begin + block, count));
  }
  run(0, std::min(block, count));
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace ddm
