#pragma once

#include <cstdint>
#include <exception>

#include "holocorr/types.hpp"

namespace holocorr {

/// Runs body(i) for i in [0, n). Under Exec::parallel the loop is an OpenMP
/// worksharing loop; an exception escaping any iteration is rethrown after the
/// loop, and when several iterations throw the lowest index wins, matching the
/// serial order.
template <typename Body>
void for_each_index(std::int64_t n, Exec exec, const Body& body) {
  if (exec == Exec::serial) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::int64_t error_at = n;
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(holocorr_for_each_index)
      {
        if (i < error_at) {
          error_at = i;
          error = std::current_exception();
        }
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

/// Threads OpenMP will use for the next parallel region.
int worker_threads();
void set_worker_threads(int n);

}  // namespace holocorr
