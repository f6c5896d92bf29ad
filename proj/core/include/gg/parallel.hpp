#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gg {

/// Environment variable that forces single-threaded evaluation when set to
/// anything other than "0" or the empty string.
inline constexpr const char* kSingleThreadedEnv = "GG_SINGLE_THREADED";

inline bool single_threaded_forced() {
  const char* v = std::getenv(kSingleThreadedEnv);
  return v != nullptr && *v != '\0' && !(v[0] == '0' && v[1] == '\0');
}

/// Worker count after applying the environment override; 0 means one per core.
inline unsigned resolve_workers(unsigned requested) {
  if (single_threaded_forced()) return 1;
  if (requested == 0) requested = std::max(1u, std::thread::hardware_concurrency());
  return requested;
}

/// Evaluates fn(i) for i in [0, count) and returns the results in index
/// order, so the output does not depend on the number of workers. The first
/// exception by index is rethrown after all workers stop.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, unsigned workers, Fn fn) {
  std::vector<T> out(count);
  workers = std::min<unsigned>(resolve_workers(workers), static_cast<unsigned>(std::max<std::size_t>(1, count)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex mu;
  std::size_t error_index = count;
  std::exception_ptr error;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace gg
