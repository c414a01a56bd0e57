// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MHSP_UTIL_PARALLEL_HPP_
#define MHSP_UTIL_PARALLEL_HPP_

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mhsp::par {

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Runs f(i) for i in [0, n). The serial path is the reference implementation
// that the equivalence tests and the benchmark compare against. Work items
// must write only to per-index slots, which keeps results identical across
// thread counts and schedules.
template <class F>
void parallel_for(std::size_t n, F&& f, bool parallel = true) {
#ifdef _OPENMP
  if (parallel && n > 1 && max_threads() > 1) {
    std::atomic<bool> failed{false};
    std::exception_ptr err;
    std::mutex err_mutex;
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      if (failed.load(std::memory_order_relaxed)) continue;
      try {
        f(static_cast<std::size_t>(i));
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!err) {
          err = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
        }
      }
    }
    if (err) std::rethrow_exception(err);
    return;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) f(i);
}

}  // namespace mhsp::par

#endif  // MHSP_UTIL_PARALLEL_HPP_
