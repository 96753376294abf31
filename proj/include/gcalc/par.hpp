// Data-parallel sweep helper. Index loops over independent work items run
// through the OpenMP path by default; the serial reference path is kept
// selectable at runtime (GCALC_SERIAL=1 or par::set_parallel(false)) and is
// what the benchmark tool compares against.
#pragma once

#include <cstddef>
#include <cstdlib>

namespace gcalc::par {

inline bool& parallel_flag() {
  static bool enabled = [] {
    const char* env = std::getenv("GCALC_SERIAL");
    return !(env && env[0] == '1');
  }();
  return enabled;
}

inline bool parallel_enabled() { return parallel_flag(); }
inline void set_parallel(bool on) { parallel_flag() = on; }

template <class F>
void parallel_for(std::size_t n, F&& body) {
  if (parallel_enabled()) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      body(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) body(i);
  }
}

}  // namespace gcalc::par
