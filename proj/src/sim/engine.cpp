#include "temporal/sim/engine.hpp"

#include "temporal/arith.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace temporal::sim {
namespace {

/// A message in flight, ticks in base units. `clock` is the producer's reference.
struct Message {
  PayloadType type = PayloadType::Scalar;
  ClockRef clock;
  std::vector<TimedEvent> events;
};

struct QueueItem {
  Integer tick;
  std::size_t block = 0;
  PortDirection direction = PortDirection::In;
  unsigned port = 0;
  std::uint64_t seq = 0;
  EventRole role = EventRole::Start;
  Integer amplitude = 1;
};

struct LaterFirst {
  bool operator()(const QueueItem& a, const QueueItem& b) const {
    if (a.tick != b.tick) return a.tick > b.tick;
    if (a.block != b.block) return a.block > b.block;
    if (a.direction != b.direction) return a.direction > b.direction;
    if (a.port != b.port) return a.port > b.port;
    return a.seq > b.seq;
  }
};

struct BlockState {
  const BlockSpec* spec = nullptr;
  ClockRef clock;
  Integer period;
  unsigned inputs = 0;
  std::vector<std::optional<Message>> arriving;
  std::vector<bool> complete;
  unsigned completed = 0;
  bool fired = false;
  std::map<unsigned, Message> outputs;
  std::set<unsigned> outputs_complete;
};

std::string render(const Message& msg, const ClockRef& base) {
  const auto& ev = msg.events;
  auto offset = [&](const Tick& t) {
    return measure_interval(IntervalValue(ev.front().tick, t, base), msg.clock);
  };
  std::ostringstream os;
  switch (msg.type) {
    case PayloadType::Scalar:
      os << offset(ev.back().tick);
      break;
    case PayloadType::Set: {
      os << '{';
      bool first = true;
      for (const auto& e : ev) {
        if (e.role != EventRole::Pulse) continue;
        os << (first ? "" : ",") << offset(e.tick);
        first = false;
      }
      os << '}';
      break;
    }
    case PayloadType::MultiValent: {
      std::map<Integer, Integer> buckets;
      for (const auto& e : ev) {
        if (e.role == EventRole::Pulse) buckets[offset(e.tick)] += e.amplitude;
      }
      os << '{';
      bool first = true;
      for (const auto& [pos, amp] : buckets) {
        os << (first ? "" : ",") << pos << ':' << amp;
        first = false;
      }
      os << '}';
      break;
    }
  }
  return os.str();
}

class Engine {
 public:
  Engine(const Netlist& net, const RunOptions& options)
      : net_(net), options_(options), base_("base", base_frequency(net.clocks)) {
    std::vector<const BlockSpec*> sorted;
    for (const auto& b : net.blocks) sorted.push_back(&b);
    std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->id < b->id; });
    for (const auto* b : sorted) {
      rank_[b->id] = states_.size();
      BlockState s{b, net.clock_of(*b), 0, net.input_count(*b), {}, {}, 0, false, {}, {}};
      s.period = numerator_of(base_.frequency() / s.clock.frequency());
      s.arriving.resize(s.inputs);
      s.complete.assign(s.inputs, false);
      states_.push_back(std::move(s));
    }
    for (std::size_t i = 0; i < net.wires.size(); ++i) fanout_[net.wires[i].src].push_back(i);
  }

  Trace run() {
    for (auto& s : states_) {
      if (s.spec->kind == BlockKind::Source) fire(s, Integer(0));
    }
    while (!queue_.empty()) {
      QueueItem item = queue_.top();
      if (item.tick > options_.budget) {
        trace_.stats.budget_exhausted = true;
        break;
      }
      queue_.pop();
      BlockState& s = states_[item.block];
      trace_.events.push_back({item.tick, s.spec->id,
                               PortRef{s.spec->id, item.direction, item.port}.port_name(), item.role,
                               item.amplitude});
      trace_.stats.total_ticks = item.tick;
      if (item.role != EventRole::End) continue;
      if (item.direction == PortDirection::Out) {
        s.outputs_complete.insert(item.port);
        continue;
      }
      s.complete[item.port] = true;
      if (++s.completed == s.inputs && !s.fired) fire(s, item.tick);
    }
    trace_.stats.event_count = trace_.events.size();
    trace_.stats.base_frequency = base_.frequency();
    collect_probes();
    return std::move(trace_);
  }

 private:
  Integer decode_scalar(const Message& msg, const ClockRef& clock) const {
    return measure_interval(IntervalValue(msg.events.front().tick, msg.events.back().tick, base_), clock);
  }

  std::vector<std::pair<Integer, Integer>> decode_pulses(const Message& msg, const ClockRef& clock) const {
    std::vector<std::pair<Integer, Integer>> out;
    for (const auto& e : msg.events) {
      if (e.role != EventRole::Pulse) continue;
      out.emplace_back(measure_interval(IntervalValue(msg.events.front().tick, e.tick, base_), clock), e.amplitude);
    }
    return out;
  }

  Message scalar_message(const Integer& start, const Integer& value, const BlockState& s) const {
    return Message{PayloadType::Scalar,
                   s.clock,
                   {{EventRole::Start, Tick(start), 1}, {EventRole::End, Tick(start + value * s.period), 1}}};
  }

  void check_limit(const BlockState& s, const Integer& value) const {
    if (options_.max_value && value > *options_.max_value) {
      throw Error(ErrorCode::ValueLimit, "block '" + s.spec->id + "' produced " + value.str() +
                                             ", above the configured limit " + options_.max_value->str());
    }
  }

  void fire(BlockState& s, const Integer& tick) {
    s.fired = true;
    const BlockSpec& b = *s.spec;
    const bool source = b.kind == BlockKind::Source;
    const Integer t_out = source ? Integer(0) : (tick / s.period + 1) * s.period;
    std::vector<std::pair<unsigned, Message>> outputs;
    std::optional<Integer> linear_model;

    auto scalar_inputs = [&] {
      std::vector<UnaryTrain> xs;
      for (const auto& m : s.arriving) xs.push_back(encode_unary(decode_scalar(*m, s.clock), s.clock));
      return xs;
    };
    auto emit_scalar = [&](Integer value, const Integer& lead = Integer(0)) {
      if (options_.output_hook) value = options_.output_hook(b, value);
      check_limit(s, value);
      outputs.emplace_back(0, scalar_message(t_out + lead * s.period, value, s));
    };

    try {
      switch (b.kind) {
        case BlockKind::Source:
          if (auto value = natural_param(b, "value")) {
            check_limit(s, *value);
            outputs.emplace_back(0, scalar_message(0, *value, s));
          } else {
            const MultiValentTrain train(parse_buckets(b.params.at("mv")), s.clock);
            Message m{PayloadType::MultiValent, s.clock, {{EventRole::Start, Tick(0), 1}}};
            for (const auto& [pos, amp] : train.buckets()) {
              check_limit(s, pos.count());
              m.events.push_back({EventRole::Pulse, Tick(pos.count() * s.period), amp});
            }
            m.events.push_back({EventRole::End, Tick(madd_sweep_ticks(train) * s.period), 1});
            outputs.emplace_back(0, std::move(m));
          }
          break;
        case BlockKind::Add: {
          const auto xs = scalar_inputs();
          UnaryTrain sum = encode_unary(0, s.clock);
          for (const auto& x : xs) sum = add_concat(sum, x);
          linear_model = decode_unary(sum);
          emit_scalar(decode_unary(sum));
          break;
        }
        case BlockKind::Mul: {
          const auto xs = scalar_inputs();
          const auto k = natural_param(b, "k");
          emit_scalar(decode_unary(k ? mul_dilate(xs[0], *k) : mul_temporal(xs[0], xs[1])));
          break;
        }
        case BlockKind::Min:
        case BlockKind::Max: {
          std::vector<Integer> values;
          for (const auto& x : scalar_inputs()) values.push_back(decode_unary(x));
          const auto lanes = deliver_parallel(values, DeliveryMode::ParallelSynchronous, s.clock);
          emit_scalar(b.kind == BlockKind::Min ? min_race(lanes) : max_race(lanes));
          break;
        }
        case BlockKind::Mux: {
          std::vector<Integer> values;
          for (const auto& x : scalar_inputs()) values.push_back(decode_unary(x));
          const MuxChannel ch = mux(values, s.clock);
          Message m{PayloadType::Set, s.clock, {{EventRole::Start, Tick(t_out), 1}}};
          for (const auto& p : ch.value_pulses()) {
            check_limit(s, p.count());
            m.events.push_back({EventRole::Pulse, Tick(t_out + p.count() * s.period), 1});
          }
          const Tick last = m.events.back().tick;
          m.events.push_back({EventRole::End, last, 1});
          outputs.emplace_back(0, std::move(m));
          break;
        }
        case BlockKind::Demux: {
          std::vector<Tick> pulses{Tick(0)};
          for (const auto& [offset, amp] : decode_pulses(*s.arriving[0], s.clock)) pulses.emplace_back(offset);
          const auto values = demux(PulseTrain(std::move(pulses), s.clock));
          unsigned port = 0;
          for (const auto& v : values) outputs.emplace_back(port++, scalar_message(t_out, v, s));
          break;
        }
        case BlockKind::Madd: {
          std::vector<MultiValentTrain> trains;
          for (const auto& m : s.arriving) {
            MultiValentTrain t(s.clock);
            for (const auto& [pos, amp] : decode_pulses(*m, s.clock)) t.deposit(Tick(pos), amp);
            trains.push_back(std::move(t));
          }
          const MultiValentTrain merged = mv_merge(trains);
          emit_scalar(madd(merged), madd_sweep_ticks(merged));
          break;
        }
        case BlockKind::Accumulator: {
          const Message& in = *s.arriving[0];
          const IntervalValue iv(in.events.front().tick, in.events.back().tick, base_);
          const AccumulatorConfig config = accumulator_config(b, options_.seed);
          const AccumulatorReading reading = accumulate(config, iv, s.clock);
          if (reading.overflow) {
            trace_.stats.overflow_flags.push_back(b.id + ": toggle chain of depth " + std::to_string(config.chain_depth) +
                                                  " wrapped");
          }
          emit_scalar(reading.value);
          break;
        }
        case BlockKind::Convert: {
          const Message& in = *s.arriving[0];
          emit_scalar(convert_reference(decode_scalar(in, in.clock), in.clock, s.clock));
          break;
        }
        case BlockKind::Probe:
          break;
      }
    } catch (const Error& e) {
      throw Error(ErrorCode::SimulationError, "block '" + b.id + "': " + e.what());
    }

    if (b.kind != BlockKind::Probe) {
      Integer last = t_out;
      for (const auto& [port, m] : outputs) last = std::max(last, m.events.back().tick.count());
      trace_.stats.block_costs.push_back({b.id, std::string(to_string(b.kind)),
                                          (last - t_out) / s.period + (source ? 0 : kDelimiterOverhead),
                                          linear_model});
    }
    for (auto& [port, m] : outputs) emit(s, port, std::move(m));
  }

  void emit(BlockState& s, unsigned port, Message msg) {
    const std::size_t rank = rank_.at(s.spec->id);
    for (const auto& e : msg.events) {
      queue_.push({e.tick.count(), rank, PortDirection::Out, port, seq_++, e.role, e.amplitude});
    }
    const PortRef out{s.spec->id, PortDirection::Out, port};
    if (auto it = fanout_.find(out); it != fanout_.end()) {
      for (std::size_t w : it->second) deliver(s, msg, w);
    }
    s.outputs.emplace(port, std::move(msg));
  }

  void deliver(const BlockState& src, const Message& msg, std::size_t wire_index) {
    const WireSpec& wire = net_.wires[wire_index];
    BlockState& dst = states_[rank_.at(wire.dst.block)];
    Latency latency = wire.latency;
    if (auto* jitter = std::get_if<SeededJitter>(&latency)) {
      jitter->seed = options_.seed * 0x9e3779b97f4a7c15ULL + wire_index;
    }
    // Latencies count periods of the driving clock; translate the message to that unit.
    std::vector<TimedEvent> local = msg.events;
    for (auto& e : local) e.tick = Tick(e.tick.count() / src.period);
    const TimedMessage sent(std::move(local), src.clock);
    const Link link(std::move(latency), src.clock, dst.clock);
    TransmitResult result = transmit_checked(sent, link);
    const TimedMessage* arrived = std::get_if<TimedMessage>(&result);
    if (auto* violation = std::get_if<StabilityViolation>(&result)) {
      std::ostringstream os;
      os << wire.src.str() << " -> " << wire.dst.str() << ": delay varies within the message, value error "
         << (violation->value_error >= 0 ? "+" : "") << violation->value_error;
      trace_.stats.stability_violations.push_back(os.str());
      arrived = &violation->distorted;
    }
    Message in{msg.type, msg.clock, arrived->events()};
    for (auto& e : in.events) e.tick = Tick(e.tick.count() * src.period);
    const std::size_t rank = rank_.at(dst.spec->id);
    for (const auto& e : in.events) {
      queue_.push({e.tick.count(), rank, PortDirection::In, wire.dst.index, seq_++, e.role, e.amplitude});
    }
    dst.arriving[wire.dst.index] = std::move(in);
  }

  void collect_probes() {
    auto lookup = [&](const PortRef& port) -> std::string {
      const BlockState& s = states_[rank_.at(port.block)];
      if (port.direction == PortDirection::Out) {
        if (!s.outputs_complete.contains(port.index)) return "?";
        return render(s.outputs.at(port.index), base_);
      }
      if (port.index >= s.inputs || !s.complete[port.index]) return "?";
      return render(*s.arriving[port.index], base_);
    };
    for (const auto& b : net_.blocks) {
      if (b.kind == BlockKind::Probe) {
        trace_.results.push_back({b.id, lookup(PortRef{b.id, PortDirection::In, 0})});
      }
    }
    for (const auto& p : net_.probes) trace_.results.push_back({p.label, lookup(p.port)});
  }

  const Netlist& net_;
  const RunOptions& options_;
  ClockRef base_;
  std::vector<BlockState> states_;
  std::map<std::string, std::size_t> rank_;
  std::map<PortRef, std::vector<std::size_t>> fanout_;
  std::priority_queue<QueueItem, std::vector<QueueItem>, LaterFirst> queue_;
  std::uint64_t seq_ = 0;
  Trace trace_;
};

}  // namespace

std::optional<Integer> ProbeResult::scalar() const {
  if (value.empty() || !std::all_of(value.begin(), value.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return std::nullopt;
  }
  return Integer(value);
}

Rational base_frequency(const std::vector<ClockRef>& clocks) {
  if (clocks.empty()) return 1;
  Integer num_lcm = 1;
  Integer den_gcd = 0;
  for (const auto& c : clocks) {
    num_lcm = boost::multiprecision::lcm(num_lcm, numerator_of(c.frequency()));
    den_gcd = boost::multiprecision::gcd(den_gcd, denominator_of(c.frequency()));
  }
  return Rational(num_lcm, den_gcd);
}

Trace run(const Netlist& netlist, const RunOptions& options) {
  if (options.budget < 1) throw Error(ErrorCode::InvalidArgument, "budget must be >= 1");
  return Engine(netlist, options).run();
}

Summary stats(const Trace& trace) {
  Summary summary;
  summary.total_ticks = trace.stats.total_ticks;
  summary.event_count = trace.stats.event_count;
  summary.per_block = trace.stats.block_costs;
  summary.budget_exhausted = trace.stats.budget_exhausted;
  for (const auto& c : trace.stats.block_costs) {
    if (c.kind == "add" && c.linear_model) {
      summary.add_costs.push_back({c.block, *c.linear_model, c.cost, c.cost - *c.linear_model});
    }
  }
  for (const auto& f : trace.stats.overflow_flags) summary.flags.push_back("overflow " + f);
  for (const auto& v : trace.stats.stability_violations) summary.flags.push_back("unstable " + v);
  if (trace.stats.budget_exhausted) summary.flags.push_back("budget exhausted");
  return summary;
}

void write_summary(const Summary& summary, std::ostream& out) {
  out << "total_ticks=" << summary.total_ticks << '\n';
  out << "events=" << summary.event_count << '\n';
  out << "delimiter_overhead=" << summary.delimiter_overhead << '\n';
  for (const auto& c : summary.per_block) out << "cost " << c.block << " (" << c.kind << ")=" << c.cost << '\n';
  for (const auto& a : summary.add_costs) {
    out << "add " << a.block << ": measured=" << a.measured << " linear=" << a.operand_sum
        << " overhead=" << a.overhead << '\n';
  }
  for (const auto& f : summary.flags) out << "flag " << f << '\n';
}

}  // namespace temporal::sim
