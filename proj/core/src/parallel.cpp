#include "rescalk/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace rescalk {
namespace {

std::size_t default_threads() {
  if (const char* env = std::getenv("RESCALK_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

std::atomic<std::size_t>& thread_cap() {
  static std::atomic<std::size_t> cap{0};  // 0 = use default
  return cap;
}

}  // namespace

std::size_t max_threads() {
  const std::size_t cap = thread_cap().load(std::memory_order_relaxed);
  return cap > 0 ? cap : default_threads();
}

void set_max_threads(std::size_t n) {
  thread_cap().store(n, std::memory_order_relaxed);
}

void parallel_for(std::size_t count,
                  const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  const std::size_t workers = std::min(max_threads(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  // Workers pull indices from a shared counter; any exceptions are stashed
  // per index and the lowest-index one is rethrown, so failure behavior
  // does not depend on scheduling.
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace rescalk
