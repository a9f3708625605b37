#include "temporal/core.hpp"

#include <algorithm>
#include <ostream>

namespace temporal {

Tick::Tick(Integer count) : count_(std::move(count)) {
  if (count_ < 0) {
    throw Error(ErrorCode::NegativeTick, "tick count " + count_.str() + " is negative");
  }
}

std::string to_string(const Tick& t) { return t.count().str(); }
std::ostream& operator<<(std::ostream& os, const Tick& t) { return os << t.count(); }

ClockRef::ClockRef(std::string id, Rational frequency) : id_(std::move(id)), frequency_(std::move(frequency)) {
  if (frequency_ <= 0) {
    throw Error(ErrorCode::InvalidClock, "clock '" + id_ + "' needs a positive frequency");
  }
}

Rational ratio(const ClockRef& from, const ClockRef& to) { return to.frequency() / from.frequency(); }

PulseTrain::PulseTrain(std::vector<Tick> pulses, ClockRef clock)
    : pulses_(std::move(pulses)), clock_(std::move(clock)) {
  for (std::size_t i = 1; i < pulses_.size(); ++i) {
    if (!(pulses_[i - 1] < pulses_[i])) {
      throw Error(ErrorCode::MalformedCode,
                  "pulse positions must be strictly increasing (position " + std::to_string(i) + ")");
    }
  }
}

PulseTrain PulseTrain::merged_with(const PulseTrain& other) const {
  if (!(clock_ == other.clock_)) {
    throw Error(ErrorCode::ClockMismatch, "cannot OR trains on clocks '" + clock_.id() + "' and '" +
                                              other.clock_.id() + "'");
  }
  std::vector<Tick> out;
  out.reserve(pulses_.size() + other.pulses_.size());
  std::set_union(pulses_.begin(), pulses_.end(), other.pulses_.begin(), other.pulses_.end(),
                 std::back_inserter(out));
  return PulseTrain(std::move(out), clock_);
}

PulseTrain PulseTrain::shifted(const Tick& offset) const {
  std::vector<Tick> out;
  out.reserve(pulses_.size());
  for (const auto& p : pulses_) out.push_back(p + offset);
  return PulseTrain(std::move(out), clock_);
}

IntervalValue::IntervalValue(Tick start, Tick end, ClockRef clock)
    : start_(std::move(start)), end_(std::move(end)), clock_(std::move(clock)) {
  if (end_ < start_) {
    throw Error(ErrorCode::InvalidArgument,
                "interval end " + to_string(end_) + " precedes start " + to_string(start_));
  }
}

MultiValentTrain::MultiValentTrain(Buckets buckets, ClockRef clock)
    : buckets_(std::move(buckets)), clock_(std::move(clock)) {
  for (const auto& [pos, amp] : buckets_) {
    if (amp < 1) {
      throw Error(ErrorCode::InvalidArgument, "amplitude at position " + to_string(pos) + " must be >= 1");
    }
  }
}

Integer MultiValentTrain::amplitude(const Tick& position) const {
  auto it = buckets_.find(position);
  return it == buckets_.end() ? Integer(0) : it->second;
}

void MultiValentTrain::deposit(const Tick& position, const Integer& amplitude) {
  if (amplitude < 1) {
    throw Error(ErrorCode::InvalidArgument, "deposited amplitude must be >= 1");
  }
  buckets_[position] += amplitude;
}

std::string_view to_string(DeliveryMode mode) {
  switch (mode) {
    case DeliveryMode::Serial: return "Serial";
    case DeliveryMode::SerialDiscontinuous: return "SerialDiscontinuous";
    case DeliveryMode::ParallelSynchronous: return "ParallelSynchronous";
    case DeliveryMode::ParallelAsynchronous: return "ParallelAsynchronous";
  }
  return "Unknown";
}

UnaryTrain encode_unary(const Integer& n, const ClockRef& clock) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "unary value must be non-negative");
  return UnaryTrain{n, clock};
}

Integer decode_unary(const UnaryTrain& t) { return t.length; }

PulseTrain encode_pim(const Integer& n, const ClockRef& clock) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "PIM value must be non-negative");
  if (n == 0) return PulseTrain({Tick(0)}, clock);
  return PulseTrain({Tick(0), Tick(n)}, clock);
}

Integer decode_pim(const PulseTrain& t) {
  if (t.size() != 1 && t.size() != 2) {
    throw Error(ErrorCode::MalformedCode,
                "a PIM code has 1 or 2 pulses, got " + std::to_string(t.size()));
  }
  if (t.pulses().front() != Tick(0)) {
    throw Error(ErrorCode::MalformedCode, "PIM start delimiter must sit at tick 0");
  }
  return t.pulses().back().count() - t.pulses().front().count();
}

Integer measure_interval(const IntervalValue& iv, const ClockRef& ref) {
  if (iv.clock() == ref) return iv.value();
  return floor_of(Rational(iv.value()) * ratio(iv.clock(), ref));
}

std::vector<UnaryTrain> encode_hybrid(const Integer& n, unsigned base, const ClockRef& clock) {
  if (base < 2) throw Error(ErrorCode::InvalidBase, "base must be >= 2, got " + std::to_string(base));
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "hybrid value must be non-negative");
  std::vector<UnaryTrain> digits;
  Integer rest = n;
  do {
    digits.push_back(UnaryTrain{rest % base, clock});
    rest /= base;
  } while (rest != 0);
  return digits;
}

Integer decode_hybrid(const std::vector<UnaryTrain>& digits, unsigned base) {
  if (base < 2) throw Error(ErrorCode::InvalidBase, "base must be >= 2, got " + std::to_string(base));
  Integer value = 0;
  Integer weight = 1;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const auto& d = digits[i].length;
    if (d >= base || d < 0) {
      throw Error(ErrorCode::DigitOverflow,
                  "digit " + std::to_string(i) + " has length " + d.str() + ", base is " + std::to_string(base));
    }
    value += d * weight;
    weight *= base;
  }
  return value;
}

}  // namespace temporal
