#include "metric_depth/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace metric_depth {
namespace {

std::atomic<std::size_t> configured_threads{0};
std::once_flag env_once;
thread_local bool inside_worker = false;

std::size_t hardware_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void read_environment() {
  std::size_t threads = 0;
  if (const char* env = std::getenv("METRIC_DEPTH_THREADS")) {
    try {
      threads = static_cast<std::size_t>(std::stoul(env));
    } catch (const std::exception&) {
      threads = 0;
    }
  }
  if (configured_threads.load() == 0) {
    configured_threads.store(threads == 0 ? hardware_threads() : threads);
  }
}

}  // namespace

std::size_t thread_count() {
  std::call_once(env_once, read_environment);
  return configured_threads.load();
}

void set_thread_count(std::size_t threads) {
  std::call_once(env_once, read_environment);
  configured_threads.store(threads == 0 ? hardware_threads() : threads);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min(thread_count(), count);
  if (workers <= 1 || inside_worker) {
    for (std::size_t i = 0; i < count; ++i) {
      body(i);
    }
    return;
  }

  constexpr std::size_t kNoError = std::numeric_limits<std::size_t>::max();
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> first_error{kNoError};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto work = [&] {
    inside_worker = true;
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || i > first_error.load()) {
        break;
      }
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (i < first_error.load()) {
          first_error.store(i);
          error = std::current_exception();
        }
      }
    }
    inside_worker = false;
  };

  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) {
    pool.emplace_back(work);
  }
  work();
  pool.clear();

  if (error) {
    std::rethrow_exception(error);
  }
}

}  // namespace metric_depth
