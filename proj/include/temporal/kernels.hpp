#pragma once

// Batch evaluation of the temporal primitives. Each kernel exists twice: an
// OpenMP-parallel version over independent items, and a serial reference kept
// for testing and benchmarking. The serial MADD reference steps the sweep one
// tick at a time instead of folding runs of empty ticks.

#include "temporal/accumulators.hpp"
#include "temporal/arith.hpp"
#include "temporal/core.hpp"

#include <exception>
#include <mutex>
#include <span>
#include <vector>

namespace temporal {

namespace kernels {

std::vector<Integer> madd_batch(std::span<const MultiValentTrain> trains);
std::vector<BinaryWord> toggle_batch(std::span<const Integer> pulse_counts, unsigned depth);
std::vector<Integer> measure_batch(std::span<const IntervalValue> intervals, const ClockRef& ref);
std::vector<Integer> accumulate_batch(const AccumulatorConfig& config, std::span<const IntervalValue> intervals,
                                      const ClockRef& ref);
std::vector<Integer> convert_batch(std::span<const Integer> values, const ClockRef& from, const ClockRef& to);

/// Runs fn(i) for i in [0, n) across OpenMP threads. The first exception thrown
/// by any iteration is rethrown on the calling thread.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace kernels

namespace serial {

/// Tick-by-tick sweep from the highest occupied position down to 0.
Integer madd_tickwise(const MultiValentTrain& train);

/// Latch-by-latch simulation: every input pulse toggles stage 0 and ripples on falling edges.
BinaryWord toggle_pulsewise(const Integer& pulse_count, unsigned depth);

std::vector<Integer> madd_batch(std::span<const MultiValentTrain> trains);
std::vector<BinaryWord> toggle_batch(std::span<const Integer> pulse_counts, unsigned depth);
std::vector<Integer> measure_batch(std::span<const IntervalValue> intervals, const ClockRef& ref);
std::vector<Integer> accumulate_batch(const AccumulatorConfig& config, std::span<const IntervalValue> intervals,
                                      const ClockRef& ref);
std::vector<Integer> convert_batch(std::span<const Integer> values, const ClockRef& from, const ClockRef& to);

}  // namespace serial

}  // namespace temporal
