#include "temporal/arith.hpp"

#include <algorithm>

namespace temporal {
namespace {

void require_same_clock(const ClockRef& a, const ClockRef& b) {
  if (!(a == b)) {
    throw Error(ErrorCode::ClockMismatch, "clocks '" + a.id() + "' and '" + b.id() +
                                              "' differ; convert one side first");
  }
}

void check_race_lanes(std::span<const IntervalValue> lanes, DeliveryMode mode) {
  if (mode != DeliveryMode::ParallelSynchronous) {
    throw Error(ErrorCode::ModeMismatch,
                "race operators need ParallelSynchronous lanes, got " + std::string(to_string(mode)));
  }
  if (lanes.empty()) throw Error(ErrorCode::EmptyInput, "race needs at least one lane");
  for (const auto& lane : lanes) {
    require_same_clock(lanes.front().clock(), lane.clock());
    if (lane.start() != lanes.front().start()) {
      throw Error(ErrorCode::ModeMismatch, "lanes do not share a start tick");
    }
  }
}

}  // namespace

MuxChannel::MuxChannel(std::set<Tick> value_pulses, ClockRef clock)
    : value_pulses_(std::move(value_pulses)), clock_(std::move(clock)) {
  if (value_pulses_.contains(Tick(0))) {
    throw Error(ErrorCode::ZeroValue, "value pulse at tick 0 collides with the start marker");
  }
}

MuxChannel MuxChannel::from_train(const PulseTrain& train) {
  if (train.empty() || train.pulses().front() != Tick(0)) {
    throw Error(ErrorCode::MalformedChannel, "multiplexed channel has no start pulse at tick 0");
  }
  return MuxChannel(std::set<Tick>(train.pulses().begin() + 1, train.pulses().end()), train.clock());
}

PulseTrain MuxChannel::to_train() const {
  std::vector<Tick> pulses{Tick(0)};
  pulses.insert(pulses.end(), value_pulses_.begin(), value_pulses_.end());
  return PulseTrain(std::move(pulses), clock_);
}

UnaryTrain add_concat(const UnaryTrain& x, const UnaryTrain& y) {
  require_same_clock(x.clock, y.clock);
  return UnaryTrain{x.length + y.length, x.clock};
}

Integer add_concat_ticks(const UnaryTrain& x, const UnaryTrain& y) {
  require_same_clock(x.clock, y.clock);
  return x.length + y.length;
}

UnaryTrain mul_dilate(const UnaryTrain& x, const Integer& k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "dilation factor must be >= 1, got " + k.str());
  const ClockRef faster(x.clock.id() + "*" + k.str(), x.clock.frequency() * Rational(k));
  const IntervalValue span(Tick(0), Tick(x.length), x.clock);
  return UnaryTrain{measure_interval(span, faster), x.clock};
}

UnaryTrain mul_temporal(const UnaryTrain& x, const UnaryTrain& y) {
  require_same_clock(x.clock, y.clock);
  const Integer k = decode_unary(y);
  if (k == 0) return UnaryTrain{0, x.clock};
  return mul_dilate(x, k);
}

Integer min_race(std::span<const IntervalValue> lanes, DeliveryMode mode) {
  check_race_lanes(lanes, mode);
  const auto first = std::min_element(lanes.begin(), lanes.end(),
                                      [](const auto& a, const auto& b) { return a.end() < b.end(); });
  return first->value();
}

Integer max_race(std::span<const IntervalValue> lanes, DeliveryMode mode) {
  check_race_lanes(lanes, mode);
  const auto last = std::max_element(lanes.begin(), lanes.end(),
                                     [](const auto& a, const auto& b) { return a.end() < b.end(); });
  return last->value();
}

MuxChannel mux(std::span<const Integer> values, const ClockRef& clock) {
  if (values.empty()) throw Error(ErrorCode::EmptyInput, "mux needs at least one value");
  std::set<Tick> pulses;
  for (const auto& v : values) {
    if (v == 0) throw Error(ErrorCode::ZeroValue, "0 cannot be multiplexed: its pulse is the start marker");
    if (v < 0) throw Error(ErrorCode::InvalidArgument, "mux values must be positive");
    if (!pulses.insert(Tick(v)).second) {
      throw Error(ErrorCode::DuplicateValue, "value " + v.str() + " appears more than once");
    }
  }
  return MuxChannel(std::move(pulses), clock);
}

std::set<Integer> demux(const MuxChannel& ch) {
  std::set<Integer> out;
  for (const auto& p : ch.value_pulses()) out.insert(out.end(), p.count());
  return out;
}

std::set<Integer> demux(const PulseTrain& train) { return demux(MuxChannel::from_train(train)); }

MultiValentTrain mv_place(const TuplePair& pair, const ClockRef& clock) {
  if (pair.a < 1) throw Error(ErrorCode::InvalidArgument, "tuple amplitude must be >= 1");
  return MultiValentTrain({{Tick(pair.b), pair.a}}, clock);
}

MultiValentTrain mv_merge(std::span<const MultiValentTrain> trains) {
  if (trains.empty()) throw Error(ErrorCode::EmptyInput, "mv_merge needs at least one train");
  MultiValentTrain merged(trains.front().clock());
  for (const auto& t : trains) {
    require_same_clock(merged.clock(), t.clock());
    for (const auto& [pos, amp] : t.buckets()) merged.deposit(pos, amp);
  }
  return merged;
}

Integer madd(const MultiValentTrain& train) {
  Integer running = 0;
  Integer accumulator = 0;
  const auto& buckets = train.buckets();
  for (auto it = buckets.rbegin(); it != buckets.rend(); ++it) {
    running += it->second;
    // S stays constant from this position down to the next occupied one.
    auto next = std::next(it);
    const Integer floor_pos = next == buckets.rend() ? Integer(0) : next->first.count();
    accumulator += running * (it->first.count() - floor_pos);
  }
  return accumulator;
}

Integer madd_sweep_ticks(const MultiValentTrain& train) {
  if (train.empty()) return 0;
  return train.buckets().rbegin()->first.count();
}

}  // namespace temporal
