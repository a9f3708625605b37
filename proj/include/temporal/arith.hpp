#pragma once

#include "temporal/core.hpp"

#include <set>
#include <span>
#include <vector>

namespace temporal {

/// Several duplicate-free positive values overlaid on one channel after a start pulse at tick 0.
class MuxChannel {
 public:
  MuxChannel(std::set<Tick> value_pulses, ClockRef clock);

  /// Throws MalformedChannel when the train has no start pulse at tick 0.
  static MuxChannel from_train(const PulseTrain& train);

  const std::set<Tick>& value_pulses() const noexcept { return value_pulses_; }
  const ClockRef& clock() const noexcept { return clock_; }
  PulseTrain to_train() const;

  friend bool operator==(const MuxChannel&, const MuxChannel&) = default;

 private:
  std::set<Tick> value_pulses_;
  ClockRef clock_;
};

/// Amplitude a placed at temporal position b, contributing a * b.
struct TuplePair {
  Integer a;
  Integer b;
};

UnaryTrain add_concat(const UnaryTrain& x, const UnaryTrain& y);

/// Ticks spent streaming both operands back to back.
Integer add_concat_ticks(const UnaryTrain& x, const UnaryTrain& y);

/// Re-measures x under a reference running k times faster.
UnaryTrain mul_dilate(const UnaryTrain& x, const Integer& k);

/// Both factors temporal: the second operand's length becomes the dilation factor.
/// A zero-length second operand yields an empty train.
UnaryTrain mul_temporal(const UnaryTrain& x, const UnaryTrain& y);

/// First arrival among lanes sharing one start tick.
Integer min_race(std::span<const IntervalValue> lanes, DeliveryMode mode = DeliveryMode::ParallelSynchronous);

/// Last arrival among lanes sharing one start tick.
Integer max_race(std::span<const IntervalValue> lanes, DeliveryMode mode = DeliveryMode::ParallelSynchronous);

MuxChannel mux(std::span<const Integer> values, const ClockRef& clock);
std::set<Integer> demux(const MuxChannel& ch);
std::set<Integer> demux(const PulseTrain& train);

MultiValentTrain mv_place(const TuplePair& pair, const ClockRef& clock);
MultiValentTrain mv_merge(std::span<const MultiValentTrain> trains);

/// Dot product of positions and amplitudes, evaluated by a high-to-low sweep that
/// keeps a running amplitude sum and folds it into the accumulator once per tick.
/// Runs of empty ticks are folded in one step.
Integer madd(const MultiValentTrain& train);

/// Number of accumulate steps the sweep takes: the highest occupied position.
Integer madd_sweep_ticks(const MultiValentTrain& train);

}  // namespace temporal
