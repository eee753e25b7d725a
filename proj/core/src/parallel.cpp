#include "tensoreq/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace tensoreq {
namespace {

constexpr std::size_t kMinParallelWork = 1u << 16;

std::size_t default_threads() noexcept {
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

std::atomic<std::size_t>& thread_setting() noexcept {
  static std::atomic<std::size_t> n{default_threads()};
  return n;
}

}  // namespace

void set_num_threads(std::size_t n) noexcept { thread_setting() = std::max<std::size_t>(1, n); }

std::size_t num_threads() noexcept { return thread_setting(); }

void parallel_for(std::size_t count, std::size_t work, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min(num_threads(), count);
  if (workers <= 1 || work < kMinParallelWork) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) body(i);
      });
    }
  }
}

}  // namespace tensoreq
