#pragma once

#include <cstddef>
#include <functional>

namespace torsionlab {

/// Worker count: TORSIONLAB_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs body(chunk) for chunk = 0..chunks-1 on up to worker_count() threads.
/// Callers write results into per-chunk slots so reduction order is fixed.
void parallel_for_chunks(std::size_t chunks, const std::function<void(std::size_t)>& body);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(long double x);
  long double value() const { return sum_ + compensation_; }

 private:
  long double sum_ = 0.0L;
  long double compensation_ = 0.0L;
};

}  // namespace torsionlab
