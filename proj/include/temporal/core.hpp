#pragma once

#include "temporal/errors.hpp"
#include "temporal/numeric.hpp"

#include <compare>
#include <concepts>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace temporal {

/// A non-negative count of reference-clock periods.
class Tick {
 public:
  Tick() = default;
  explicit Tick(Integer count);
  template <std::integral I>
  Tick(I count) : Tick(Integer(count)) {}  // NOLINT: implicit from literals

  const Integer& count() const noexcept { return count_; }

  friend bool operator==(const Tick& a, const Tick& b) { return a.count_ == b.count_; }
  friend std::strong_ordering operator<=>(const Tick& a, const Tick& b) {
    return a.count_.compare(b.count_) <=> 0;
  }

  friend Tick operator+(const Tick& a, const Tick& b) { return Tick(a.count_ + b.count_); }
  /// Throws NegativeTick when b > a.
  friend Tick operator-(const Tick& a, const Tick& b) { return Tick(a.count_ - b.count_); }
  Tick& operator+=(const Tick& other) {
    count_ += other.count_;
    return *this;
  }

 private:
  Integer count_{0};
};

std::string to_string(const Tick& t);
std::ostream& operator<<(std::ostream& os, const Tick& t);

/// A named time reference: the "currency" interval lengths are counted in.
class ClockRef {
 public:
  ClockRef(std::string id, Rational frequency);

  const std::string& id() const noexcept { return id_; }
  const Rational& frequency() const noexcept { return frequency_; }

  friend bool operator==(const ClockRef&, const ClockRef&) = default;

 private:
  std::string id_;
  Rational frequency_;
};

/// to.frequency / from.frequency.
Rational ratio(const ClockRef& from, const ClockRef& to);

/// Ordered pulse events on one channel. Positions are strictly increasing.
class PulseTrain {
 public:
  explicit PulseTrain(ClockRef clock) : clock_(std::move(clock)) {}
  PulseTrain(std::vector<Tick> pulses, ClockRef clock);
  PulseTrain(std::initializer_list<Tick> pulses, ClockRef clock)
      : PulseTrain(std::vector<Tick>(pulses), std::move(clock)) {}

  const std::vector<Tick>& pulses() const noexcept { return pulses_; }
  const ClockRef& clock() const noexcept { return clock_; }
  std::size_t size() const noexcept { return pulses_.size(); }
  bool empty() const noexcept { return pulses_.empty(); }

  /// Pulse-wise OR of two trains on the same clock.
  PulseTrain merged_with(const PulseTrain& other) const;
  PulseTrain shifted(const Tick& offset) const;

  friend bool operator==(const PulseTrain&, const PulseTrain&) = default;

 private:
  std::vector<Tick> pulses_;
  ClockRef clock_;
};

/// Contiguous marks from tick 0; the value is the length.
struct UnaryTrain {
  Integer length;
  ClockRef clock;

  friend bool operator==(const UnaryTrain&, const UnaryTrain&) = default;
};

/// A datum carried as the delay between a start and an end event.
class IntervalValue {
 public:
  IntervalValue(Tick start, Tick end, ClockRef clock);

  const Tick& start() const noexcept { return start_; }
  const Tick& end() const noexcept { return end_; }
  const ClockRef& clock() const noexcept { return clock_; }
  Integer value() const { return end_.count() - start_.count(); }

  friend bool operator==(const IntervalValue&, const IntervalValue&) = default;

 private:
  Tick start_;
  Tick end_;
  ClockRef clock_;
};

/// Position -> amplitude buckets. Absent positions have amplitude 0.
class MultiValentTrain {
 public:
  using Buckets = std::map<Tick, Integer>;

  explicit MultiValentTrain(ClockRef clock) : clock_(std::move(clock)) {}
  MultiValentTrain(Buckets buckets, ClockRef clock);

  const Buckets& buckets() const noexcept { return buckets_; }
  const ClockRef& clock() const noexcept { return clock_; }
  bool empty() const noexcept { return buckets_.empty(); }
  Integer amplitude(const Tick& position) const;

  /// Adds amplitude at a position (amplitude >= 1).
  void deposit(const Tick& position, const Integer& amplitude);

  friend bool operator==(const MultiValentTrain&, const MultiValentTrain&) = default;

 private:
  Buckets buckets_;
  ClockRef clock_;
};

enum class DeliveryMode { Serial, SerialDiscontinuous, ParallelSynchronous, ParallelAsynchronous };

std::string_view to_string(DeliveryMode mode);

UnaryTrain encode_unary(const Integer& n, const ClockRef& clock);
Integer decode_unary(const UnaryTrain& t);

/// Start delimiter at tick 0, end pulse at tick n. Zero collapses to a single pulse.
PulseTrain encode_pim(const Integer& n, const ClockRef& clock);
Integer decode_pim(const PulseTrain& t);

/// floor((end - start) * ref.frequency / iv.clock.frequency).
Integer measure_interval(const IntervalValue& iv, const ClockRef& ref);

/// Little-endian digits, each carried as a unary train of length < base.
std::vector<UnaryTrain> encode_hybrid(const Integer& n, unsigned base, const ClockRef& clock);
Integer decode_hybrid(const std::vector<UnaryTrain>& digits, unsigned base);

}  // namespace temporal
