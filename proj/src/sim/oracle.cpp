#include "temporal/sim/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <variant>

namespace temporal::sim {
namespace {

using Buckets = std::map<Integer, Integer>;
using Value = std::variant<Integer, Buckets, std::set<Integer>>;
using PortKey = std::pair<std::string, unsigned>;

bool supported(BlockKind kind) {
  switch (kind) {
    case BlockKind::Source:
    case BlockKind::Add:
    case BlockKind::Mul:
    case BlockKind::Min:
    case BlockKind::Max:
    case BlockKind::Mux:
    case BlockKind::Demux:
    case BlockKind::Madd:
    case BlockKind::Convert:
    case BlockKind::Probe: return true;
    default: return false;
  }
}

std::string render(const Value* v) {
  if (v == nullptr) return "?";
  if (const auto* n = std::get_if<Integer>(v)) return n->str();
  std::ostringstream os;
  os << '{';
  bool first = true;
  if (const auto* set = std::get_if<std::set<Integer>>(v)) {
    for (const auto& x : *set) {
      os << (first ? "" : ",") << x;
      first = false;
    }
  } else {
    for (const auto& [pos, amp] : std::get<Buckets>(*v)) {
      os << (first ? "" : ",") << pos << ':' << amp;
      first = false;
    }
  }
  os << '}';
  return os.str();
}

struct Evaluation {
  // Demux ports beyond the number of values carry nothing, and neither does
  // anything downstream of them.
  std::map<PortKey, Value> outputs;
  std::map<std::string, std::vector<const Value*>> inputs;

  const Value* output(const std::string& block, unsigned port = 0) const {
    auto it = outputs.find({block, port});
    return it == outputs.end() ? nullptr : &it->second;
  }
};

Evaluation evaluate(const Netlist& net) {
  if (auto missing = oracle_unsupported(net); !missing.empty()) {
    throw Error(ErrorCode::InvalidArgument, "oracle cannot evaluate block '" + missing.front() + "'");
  }
  Evaluation ev;
  for (const BlockSpec* b : topological_order(net)) {
    std::vector<const Value*> in(net.input_count(*b), nullptr);
    for (const auto& w : net.wires) {
      if (w.dst.block == b->id) in[w.dst.index] = ev.output(w.src.block, w.src.index);
    }
    ev.inputs[b->id] = in;
    if (std::find(in.begin(), in.end(), nullptr) != in.end()) continue;
    auto scalar = [&](std::size_t i) { return std::get<Integer>(*in[i]); };
    auto set_output = [&](Value v, unsigned port = 0) { ev.outputs.emplace(PortKey{b->id, port}, std::move(v)); };
    switch (b->kind) {
      case BlockKind::Source:
        if (auto v = natural_param(*b, "value")) {
          set_output(*v);
        } else {
          Buckets buckets;
          for (const auto& [pos, amp] : parse_buckets(b->params.at("mv"))) buckets[pos.count()] += amp;
          set_output(std::move(buckets));
        }
        break;
      case BlockKind::Add: {
        Integer sum = 0;
        for (std::size_t i = 0; i < in.size(); ++i) sum += scalar(i);
        set_output(sum);
        break;
      }
      case BlockKind::Mul: {
        const auto k = natural_param(*b, "k");
        set_output(scalar(0) * (k ? *k : scalar(1)));
        break;
      }
      case BlockKind::Min:
      case BlockKind::Max: {
        Integer best = scalar(0);
        for (std::size_t i = 1; i < in.size(); ++i) {
          best = b->kind == BlockKind::Min ? std::min(best, scalar(i)) : std::max(best, scalar(i));
        }
        set_output(best);
        break;
      }
      case BlockKind::Mux: {
        std::set<Integer> values;
        for (std::size_t i = 0; i < in.size(); ++i) {
          if (scalar(i) == 0 || !values.insert(scalar(i)).second) {
            throw Error(ErrorCode::InvalidArgument, "mux '" + b->id + "' receives zero or duplicate values");
          }
        }
        set_output(std::move(values));
        break;
      }
      case BlockKind::Demux: {
        unsigned port = 0;
        for (const auto& v : std::get<std::set<Integer>>(*in[0])) set_output(v, port++);
        break;
      }
      case BlockKind::Madd: {
        Integer dot = 0;
        for (const auto* v : in) {
          for (const auto& [pos, amp] : std::get<Buckets>(*v)) dot += pos * amp;
        }
        set_output(dot);
        break;
      }
      case BlockKind::Convert: {
        const WireSpec* w = net.driver_of(PortRef{b->id, PortDirection::In, 0});
        const Rational from = net.clock_of(*net.find_block(w->src.block)).frequency();
        const Rational to = net.clock_of(*b).frequency();
        // floor(v * to / from) with integer arithmetic only.
        const Integer num = scalar(0) * numerator_of(to) * denominator_of(from);
        const Integer den = denominator_of(to) * numerator_of(from);
        set_output(num / den);
        break;
      }
      case BlockKind::Probe:
        set_output(*in[0]);
        break;
      default:
        break;
    }
  }
  return ev;
}

Integer max_delay(const Latency& latency) {
  if (const auto* c = std::get_if<ConstantLatency>(&latency)) return c->delay.count();
  if (const auto* t = std::get_if<LatencyTable>(&latency)) {
    Integer m = 0;
    for (const auto& [at, d] : t->steps) m = std::max(m, d.count());
    return m;
  }
  return std::get<SeededJitter>(latency).high.count();
}

}  // namespace

std::vector<std::string> oracle_unsupported(const Netlist& net) {
  std::vector<std::string> ids;
  for (const auto& b : net.blocks) {
    if (!supported(b.kind)) ids.push_back(b.id);
  }
  return ids;
}

std::vector<ProbeResult> oracle_probe_values(const Netlist& net) {
  const Evaluation ev = evaluate(net);
  std::vector<ProbeResult> out;
  for (const auto& b : net.blocks) {
    if (b.kind == BlockKind::Probe) out.push_back({b.id, render(ev.output(b.id))});
  }
  for (const auto& p : net.probes) {
    const Value* v = p.port.direction == PortDirection::Out ? ev.output(p.port.block, p.port.index)
                                                            : ev.inputs.at(p.port.block).at(p.port.index);
    out.push_back({p.label, render(v)});
  }
  return out;
}

Integer quiescence_bound(const Netlist& net) {
  const Evaluation ev = evaluate(net);
  const Rational base = base_frequency(net.clocks);
  auto period = [&](const BlockSpec& b) { return numerator_of(base / net.clock_of(b).frequency()); };
  std::map<std::string, Integer> finish;
  Integer bound = 0;
  for (const BlockSpec* b : topological_order(net)) {
    const Integer p = period(*b);
    // Longest output interval over all ports; a block with no output never fires.
    Integer span = 0;
    bool fires = false;
    for (auto it = ev.outputs.lower_bound({b->id, 0}); it != ev.outputs.end() && it->first.first == b->id; ++it) {
      fires = true;
      const Value& out = it->second;
      if (const auto* n = std::get_if<Integer>(&out)) span = std::max(span, *n);
      if (const auto* buckets = std::get_if<Buckets>(&out); buckets && !buckets->empty()) {
        span = std::max(span, buckets->rbegin()->first);
      }
      if (const auto* set = std::get_if<std::set<Integer>>(&out); set && !set->empty()) {
        span = std::max(span, *set->rbegin());
      }
    }
    if (b->kind == BlockKind::Madd && fires) {
      // The sweep over the highest position precedes the result interval.
      for (const auto* v : ev.inputs.at(b->id)) {
        const auto& buckets = std::get<Buckets>(*v);
        if (!buckets.empty()) span = std::max(span, std::get<Integer>(*ev.output(b->id)) + buckets.rbegin()->first);
      }
    }
    Integer ready = 0;
    for (const auto& w : net.wires) {
      if (w.dst.block != b->id) continue;
      const BlockSpec& src = *net.find_block(w.src.block);
      if (auto it = finish.find(src.id); it != finish.end()) {
        ready = std::max(ready, it->second + max_delay(w.latency) * period(src));
      }
    }
    const Integer start = b->kind == BlockKind::Source ? Integer(0) : ready + p;
    finish[b->id] = b->kind == BlockKind::Probe ? ready : start + span * p;
    bound = std::max(bound, finish[b->id]);
  }
  return bound + 1;
}

}  // namespace temporal::sim
