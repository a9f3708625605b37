#pragma once

#include "temporal/core.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace temporal {

struct ConstantLatency {
  Tick delay;
};

/// Piecewise-constant delay: each step applies from its emission tick onward.
/// The first step must start at tick 0.
struct LatencyTable {
  std::vector<std::pair<Tick, Tick>> steps;
};

/// Delay drawn uniformly from [low, high], a pure function of (seed, emission tick).
struct SeededJitter {
  std::uint64_t seed = 0;
  Tick low;
  Tick high;
};

using Latency = std::variant<ConstantLatency, LatencyTable, SeededJitter>;

class Link {
 public:
  Link(Latency latency, ClockRef src_clock, ClockRef dst_clock);

  static Link constant(const Tick& delay, const ClockRef& clock) {
    return Link(ConstantLatency{delay}, clock, clock);
  }

  Tick delay_at(const Tick& emission) const;
  const Latency& latency() const noexcept { return latency_; }
  const ClockRef& src_clock() const noexcept { return src_clock_; }
  const ClockRef& dst_clock() const noexcept { return dst_clock_; }

 private:
  Latency latency_;
  ClockRef src_clock_;
  ClockRef dst_clock_;
};

enum class EventRole { Start, Pulse, End };

std::string_view to_string(EventRole role);

struct TimedEvent {
  EventRole role = EventRole::Start;
  Tick tick;
  Integer amplitude = 1;

  friend bool operator==(const TimedEvent&, const TimedEvent&) = default;
};

/// Events in non-decreasing tick order: one start first, one end last, pulses between.
class TimedMessage {
 public:
  TimedMessage(std::vector<TimedEvent> events, ClockRef clock);

  static TimedMessage interval(const IntervalValue& iv);

  const std::vector<TimedEvent>& events() const noexcept { return events_; }
  const ClockRef& clock() const noexcept { return clock_; }
  const Tick& start_tick() const { return events_.front().tick; }
  const Tick& end_tick() const { return events_.back().tick; }
  /// Distance from the start event to the end event.
  Integer span() const { return end_tick().count() - start_tick().count(); }
  IntervalValue as_interval() const { return IntervalValue(start_tick(), end_tick(), clock_); }

  friend bool operator==(const TimedMessage&, const TimedMessage&) = default;

 private:
  std::vector<TimedEvent> events_;
  ClockRef clock_;
};

struct StabilityViolation {
  TimedMessage distorted;
  Integer value_error;  // distorted span - original span
};

using TransmitResult = std::variant<TimedMessage, StabilityViolation>;

/// Shifts every event by the link delay. Throws StabilityViolation when the delay
/// differs between the message's events.
TimedMessage transmit(const TimedMessage& msg, const Link& link);

/// Like transmit, but an unstable link yields a diagnosable StabilityViolation.
TransmitResult transmit_checked(const TimedMessage& msg, const Link& link);

/// dst.frequency / src.frequency; 1 means a shared reference.
Rational negotiate_reference(const ClockRef& src, const ClockRef& dst);

/// Value read at the destination of a link, in the destination's reference.
Integer receive_value(const TimedMessage& arrived, const Link& link);

PulseTrain serialize_stream(std::span<const Integer> values, DeliveryMode mode, const ClockRef& clock,
                            std::span<const Tick> gaps = {});
std::vector<Integer> parse_stream(const PulseTrain& train, DeliveryMode mode);

std::vector<IntervalValue> deliver_parallel(std::span<const Integer> values, DeliveryMode mode,
                                            const ClockRef& clock, std::span<const Tick> offsets = {});
std::vector<Integer> measure_parallel(std::span<const IntervalValue> lanes);

}  // namespace temporal
