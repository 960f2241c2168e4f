// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace adg {

namespace detail {
inline std::atomic<int>& thread_cap_override() {
  static std::atomic<int> cap{0};  // 0: use the environment/hardware default
  return cap;
}
}  // namespace detail

/// Programmatic worker cap; 0 restores the default.
inline void set_thread_cap(int cap) { detail::thread_cap_override() = cap; }

/// Worker cap: explicit override, else ACOUSTODG_THREADS, else the hardware
/// concurrency. Results never depend on the cap; work items write to
/// disjoint slots.
inline int max_threads() {
  const int forced = detail::thread_cap_override();
  if (forced >= 1) return forced;
  static const int cached = [] {
    if (const char* env = std::getenv("ACOUSTODG_THREADS")) {
      const int v = std::atoi(env);
      if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }();
  return cached;
}

template <typename Fn>
void parallel_for(int n, Fn&& fn) {
  const int workers = std::min(max_threads(), std::max(n, 1));
  if (workers <= 1 || n < 64) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const int chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int lo = w * chunk;
    const int hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (int i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace adg
