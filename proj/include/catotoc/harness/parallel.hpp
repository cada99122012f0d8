#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace catotoc::harness {

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Exceptions are
/// captured per index and returned; work items never share output.
template <class F>
std::vector<std::exception_ptr> parallel_for(int count, int threads, F&& fn) {
  std::vector<std::exception_ptr> errors(count > 0 ? count : 0);
  if (count <= 0) return errors;
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int nworkers = std::clamp(threads, 1, count);
  if (nworkers == 1) {
    worker();
    return errors;
  }
  std::vector<std::jthread> pool;
  pool.reserve(nworkers);
  for (int w = 0; w < nworkers; ++w) pool.emplace_back(worker);
  pool.clear();
  return errors;
}

}  // namespace catotoc::harness
