#include "temporal/channel.hpp"

#include <algorithm>

namespace temporal {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31U);
}

std::vector<Tick> shifted_delays(const TimedMessage& msg, const Link& link) {
  std::vector<Tick> delays;
  delays.reserve(msg.events().size());
  for (const auto& e : msg.events()) delays.push_back(link.delay_at(e.tick));
  return delays;
}

TimedMessage apply_delays(const TimedMessage& msg, const std::vector<Tick>& delays) {
  const auto& in = msg.events();
  const Tick start = in.front().tick + delays.front();
  const Tick end = std::max(start, in.back().tick + delays.back());
  // A varying delay may reorder pulses or push them past a delimiter; the receiver
  // sees them clamped inside [start, end] in arrival order.
  std::vector<TimedEvent> pulses(in.begin() + 1, in.end() - 1);
  for (std::size_t i = 0; i < pulses.size(); ++i) {
    pulses[i].tick = std::clamp(pulses[i].tick + delays[i + 1], start, end);
  }
  std::stable_sort(pulses.begin(), pulses.end(), [](const auto& a, const auto& b) { return a.tick < b.tick; });
  std::vector<TimedEvent> out;
  out.reserve(in.size());
  out.push_back({EventRole::Start, start, in.front().amplitude});
  out.insert(out.end(), pulses.begin(), pulses.end());
  out.push_back({EventRole::End, end, in.back().amplitude});
  return TimedMessage(std::move(out), msg.clock());
}

}  // namespace

Link::Link(Latency latency, ClockRef src_clock, ClockRef dst_clock)
    : latency_(std::move(latency)), src_clock_(std::move(src_clock)), dst_clock_(std::move(dst_clock)) {
  if (const auto* table = std::get_if<LatencyTable>(&latency_)) {
    if (table->steps.empty() || table->steps.front().first != Tick(0)) {
      throw Error(ErrorCode::InvalidArgument, "latency table must start at emission tick 0");
    }
    for (std::size_t i = 1; i < table->steps.size(); ++i) {
      if (!(table->steps[i - 1].first < table->steps[i].first)) {
        throw Error(ErrorCode::InvalidArgument, "latency table ticks must be strictly increasing");
      }
    }
  }
  if (const auto* jitter = std::get_if<SeededJitter>(&latency_)) {
    if (jitter->high < jitter->low) throw Error(ErrorCode::InvalidArgument, "jitter high < low");
  }
}

Tick Link::delay_at(const Tick& emission) const {
  if (const auto* c = std::get_if<ConstantLatency>(&latency_)) return c->delay;
  if (const auto* table = std::get_if<LatencyTable>(&latency_)) {
    auto it = std::upper_bound(table->steps.begin(), table->steps.end(), emission,
                               [](const Tick& t, const auto& step) { return t < step.first; });
    return std::prev(it)->second;
  }
  const auto& jitter = std::get<SeededJitter>(latency_);
  const Integer width = jitter.high.count() - jitter.low.count() + 1;
  const auto low_bits = static_cast<std::uint64_t>(emission.count() & Integer(UINT64_MAX));
  const Integer draw = Integer(splitmix64(jitter.seed ^ splitmix64(low_bits))) % width;
  return Tick(jitter.low.count() + draw);
}

std::string_view to_string(EventRole role) {
  switch (role) {
    case EventRole::Start: return "start";
    case EventRole::Pulse: return "pulse";
    case EventRole::End: return "end";
  }
  return "unknown";
}

TimedMessage::TimedMessage(std::vector<TimedEvent> events, ClockRef clock)
    : events_(std::move(events)), clock_(std::move(clock)) {
  if (events_.size() < 2) throw Error(ErrorCode::MalformedCode, "a message needs a start and an end event");
  if (events_.front().role != EventRole::Start) {
    throw Error(ErrorCode::MalformedCode, "a message must open with its start event");
  }
  if (events_.back().role != EventRole::End) {
    throw Error(ErrorCode::MalformedCode, "a message must close with its end event");
  }
  for (std::size_t i = 1; i < events_.size(); ++i) {
    if (events_[i].tick < events_[i - 1].tick) {
      throw Error(ErrorCode::MalformedCode, "message events must be in non-decreasing tick order");
    }
    if (i + 1 < events_.size() && events_[i].role != EventRole::Pulse) {
      throw Error(ErrorCode::MalformedCode, "only pulses may sit between the start and end events");
    }
  }
}

TimedMessage TimedMessage::interval(const IntervalValue& iv) {
  return TimedMessage({{EventRole::Start, iv.start(), 1}, {EventRole::End, iv.end(), 1}}, iv.clock());
}

TransmitResult transmit_checked(const TimedMessage& msg, const Link& link) {
  const auto delays = shifted_delays(msg, link);
  TimedMessage arrived = apply_delays(msg, delays);
  const bool stable = std::all_of(delays.begin(), delays.end(), [&](const Tick& d) { return d == delays.front(); });
  if (stable) return arrived;
  Integer error = arrived.span() - msg.span();
  return StabilityViolation{std::move(arrived), std::move(error)};
}

TimedMessage transmit(const TimedMessage& msg, const Link& link) {
  auto result = transmit_checked(msg, link);
  if (auto* violation = std::get_if<StabilityViolation>(&result)) {
    throw Error(ErrorCode::StabilityViolation,
                "link delay varies within the message span (value error " + violation->value_error.str() + ")");
  }
  return std::get<TimedMessage>(std::move(result));
}

Rational negotiate_reference(const ClockRef& src, const ClockRef& dst) { return ratio(src, dst); }

Integer receive_value(const TimedMessage& arrived, const Link& link) {
  const Rational rate = negotiate_reference(link.src_clock(), link.dst_clock());
  if (rate == 1) return arrived.span();
  return floor_of(Rational(arrived.span()) * rate);
}

PulseTrain serialize_stream(std::span<const Integer> values, DeliveryMode mode, const ClockRef& clock,
                            std::span<const Tick> gaps) {
  for (const auto& v : values) {
    if (v == 0) throw Error(ErrorCode::ZeroValue, "a zero-length value would merge adjacent delimiters");
    if (v < 0) throw Error(ErrorCode::InvalidArgument, "stream values must be non-negative");
  }
  std::vector<Tick> pulses;
  if (mode == DeliveryMode::Serial) {
    if (!gaps.empty()) throw Error(ErrorCode::GapCountMismatch, "Serial streams take no gaps");
    Tick cursor(0);
    pulses.push_back(cursor);
    for (const auto& v : values) {
      cursor += Tick(v);
      pulses.push_back(cursor);
    }
    return PulseTrain(std::move(pulses), clock);
  }
  if (mode != DeliveryMode::SerialDiscontinuous) {
    throw Error(ErrorCode::ModeMismatch, "serialize_stream takes a serial mode, got " + std::string(to_string(mode)));
  }
  const std::size_t boundaries = values.empty() ? 0 : values.size() - 1;
  if (gaps.size() != boundaries) {
    throw Error(ErrorCode::GapCountMismatch, "expected " + std::to_string(boundaries) + " gaps, got " +
                                                 std::to_string(gaps.size()));
  }
  Tick cursor(0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) {
      if (gaps[i - 1] == Tick(0)) throw Error(ErrorCode::InvalidArgument, "discontinuous gaps must be >= 1");
      cursor += gaps[i - 1];
    }
    pulses.push_back(cursor);
    cursor += Tick(values[i]);
    pulses.push_back(cursor);
  }
  return PulseTrain(std::move(pulses), clock);
}

std::vector<Integer> parse_stream(const PulseTrain& train, DeliveryMode mode) {
  const auto& p = train.pulses();
  std::vector<Integer> values;
  if (mode == DeliveryMode::Serial) {
    if (p.empty() || p.front() != Tick(0)) {
      throw Error(ErrorCode::MalformedStream, "serial stream needs a start marker at tick 0");
    }
    for (std::size_t i = 1; i < p.size(); ++i) values.push_back(p[i].count() - p[i - 1].count());
    return values;
  }
  if (mode != DeliveryMode::SerialDiscontinuous) {
    throw Error(ErrorCode::ModeMismatch, "parse_stream takes a serial mode, got " + std::string(to_string(mode)));
  }
  if (p.size() % 2 != 0) throw Error(ErrorCode::MalformedStream, "discontinuous stream has an unpaired delimiter");
  if (!p.empty() && p.front() != Tick(0)) {
    throw Error(ErrorCode::MalformedStream, "discontinuous stream must open at tick 0");
  }
  for (std::size_t i = 0; i < p.size(); i += 2) values.push_back(p[i + 1].count() - p[i].count());
  return values;
}

std::vector<IntervalValue> deliver_parallel(std::span<const Integer> values, DeliveryMode mode,
                                            const ClockRef& clock, std::span<const Tick> offsets) {
  std::vector<IntervalValue> lanes;
  lanes.reserve(values.size());
  if (mode == DeliveryMode::ParallelSynchronous) {
    if (!offsets.empty()) throw Error(ErrorCode::OffsetCountMismatch, "synchronous lanes take no offsets");
    for (const auto& v : values) lanes.emplace_back(Tick(0), Tick(v), clock);
    return lanes;
  }
  if (mode != DeliveryMode::ParallelAsynchronous) {
    throw Error(ErrorCode::ModeMismatch, "deliver_parallel takes a parallel mode, got " + std::string(to_string(mode)));
  }
  if (offsets.size() != values.size()) {
    throw Error(ErrorCode::OffsetCountMismatch, "expected " + std::to_string(values.size()) + " offsets, got " +
                                                    std::to_string(offsets.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    lanes.emplace_back(offsets[i], offsets[i] + Tick(values[i]), clock);
  }
  return lanes;
}

std::vector<Integer> measure_parallel(std::span<const IntervalValue> lanes) {
  std::vector<Integer> values;
  values.reserve(lanes.size());
  for (const auto& lane : lanes) values.push_back(lane.value());
  return values;
}

}  // namespace temporal
