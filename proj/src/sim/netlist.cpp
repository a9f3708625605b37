#include "temporal/sim/netlist.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace temporal::sim {
namespace {

constexpr unsigned kUnbounded = std::numeric_limits<unsigned>::max();

struct Token {
  std::string_view text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    const std::size_t begin = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#') ++i;
    tokens.push_back({line.substr(begin, i - begin), begin + 1});
  }
  return tokens;
}

struct Arity {
  unsigned min;
  unsigned max;
};

Arity arity_of(BlockKind kind) {
  switch (kind) {
    case BlockKind::Source: return {0, 0};
    case BlockKind::Add: return {2, kUnbounded};
    case BlockKind::Mul: return {1, 2};
    case BlockKind::Min:
    case BlockKind::Max:
    case BlockKind::Mux:
    case BlockKind::Madd: return {1, kUnbounded};
    case BlockKind::Demux:
    case BlockKind::Accumulator:
    case BlockKind::Convert:
    case BlockKind::Probe: return {1, 1};
  }
  return {0, 0};
}

std::set<std::string> allowed_params(BlockKind kind) {
  switch (kind) {
    case BlockKind::Source: return {"value", "mv", "clock"};
    case BlockKind::Mul: return {"k", "clock"};
    case BlockKind::Accumulator: return {"model", "clock", "depth", "rate", "flux", "noise", "seed"};
    case BlockKind::Probe: return {};
    default: return {"clock"};
  }
}

std::optional<PayloadType> required_input(BlockKind kind) {
  switch (kind) {
    case BlockKind::Demux: return PayloadType::Set;
    case BlockKind::Madd: return PayloadType::MultiValent;
    case BlockKind::Probe: return std::nullopt;
    default: return PayloadType::Scalar;
  }
}

bool has_outputs(BlockKind kind) { return kind != BlockKind::Probe; }

/// Metrology blocks re-measure intervals from any clock; everything else needs a shared reference.
bool crosses_clocks(BlockKind kind) {
  return kind == BlockKind::Convert || kind == BlockKind::Accumulator || kind == BlockKind::Probe;
}

bool is_natural(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

template <class Fn>
bool parses(Fn&& fn) {
  try {
    fn();
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31U);
}

}  // namespace

std::string_view to_string(BlockKind kind) {
  switch (kind) {
    case BlockKind::Source: return "source";
    case BlockKind::Add: return "add";
    case BlockKind::Mul: return "mul";
    case BlockKind::Min: return "min";
    case BlockKind::Max: return "max";
    case BlockKind::Mux: return "mux";
    case BlockKind::Demux: return "demux";
    case BlockKind::Madd: return "madd";
    case BlockKind::Accumulator: return "accumulator";
    case BlockKind::Convert: return "convert";
    case BlockKind::Probe: return "probe";
  }
  return "unknown";
}

std::optional<BlockKind> parse_block_kind(std::string_view text) {
  for (auto kind : {BlockKind::Source, BlockKind::Add, BlockKind::Mul, BlockKind::Min, BlockKind::Max,
                    BlockKind::Mux, BlockKind::Demux, BlockKind::Madd, BlockKind::Accumulator, BlockKind::Convert,
                    BlockKind::Probe}) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

std::string_view to_string(PayloadType type) {
  switch (type) {
    case PayloadType::Scalar: return "scalar";
    case PayloadType::Set: return "set";
    case PayloadType::MultiValent: return "multi-valent";
  }
  return "unknown";
}

std::string PortRef::port_name() const {
  return (direction == PortDirection::In ? "in" : "out") + std::to_string(index);
}

std::optional<PortRef> parse_port_ref(std::string_view text) {
  const auto dot = text.rfind('.');
  if (dot == std::string_view::npos || dot == 0) return std::nullopt;
  PortRef ref;
  ref.block = std::string(text.substr(0, dot));
  std::string_view port = text.substr(dot + 1);
  std::string_view digits;
  if (port.starts_with("out")) {
    ref.direction = PortDirection::Out;
    digits = port.substr(3);
    if (digits.empty()) return ref;
  } else if (port.starts_with("in")) {
    ref.direction = PortDirection::In;
    digits = port.substr(2);
  } else {
    return std::nullopt;
  }
  if (!is_natural(digits) || digits.size() > 6) return std::nullopt;
  ref.index = static_cast<unsigned>(std::stoul(std::string(digits)));
  return ref;
}

NetlistError::NetlistError(ErrorCode code, std::vector<Diagnostic> diagnostics)
    : Error(code,
            [&] {
              std::ostringstream os;
              for (std::size_t i = 0; i < diagnostics.size(); ++i) {
                if (i) os << "; ";
                os << "line " << diagnostics[i].line << ":" << diagnostics[i].column << ": " << diagnostics[i].message;
              }
              return os.str();
            }()),
      diagnostics_(std::move(diagnostics)) {}

const BlockSpec* Netlist::find_block(std::string_view id) const {
  auto it = std::find_if(blocks.begin(), blocks.end(), [&](const auto& b) { return b.id == id; });
  return it == blocks.end() ? nullptr : &*it;
}

const ClockRef& Netlist::find_clock(std::string_view id) const {
  auto it = std::find_if(clocks.begin(), clocks.end(), [&](const auto& c) { return c.id() == id; });
  if (it == clocks.end()) throw Error(ErrorCode::InvalidClock, "unknown clock '" + std::string(id) + "'");
  return *it;
}

const ClockRef& Netlist::clock_of(const BlockSpec& block) const {
  auto it = block.params.find("clock");
  if (it != block.params.end()) return find_clock(it->second);
  if (clocks.empty()) throw Error(ErrorCode::InvalidClock, "netlist declares no clocks");
  return clocks.front();
}

const WireSpec* Netlist::driver_of(const PortRef& input) const {
  auto it = std::find_if(wires.begin(), wires.end(), [&](const auto& w) { return w.dst == input; });
  return it == wires.end() ? nullptr : &*it;
}

unsigned Netlist::input_count(const BlockSpec& block) const {
  unsigned count = 0;
  for (const auto& w : wires) {
    if (w.dst.block == block.id) count = std::max(count, w.dst.index + 1);
  }
  return count;
}

PayloadType output_type(const BlockSpec& block) {
  switch (block.kind) {
    case BlockKind::Source: return block.params.contains("mv") ? PayloadType::MultiValent : PayloadType::Scalar;
    case BlockKind::Mux: return PayloadType::Set;
    default: return PayloadType::Scalar;
  }
}

std::optional<Integer> natural_param(const BlockSpec& block, const std::string& key) {
  auto it = block.params.find(key);
  if (it == block.params.end()) return std::nullopt;
  return parse_natural(it->second);
}

MultiValentTrain::Buckets parse_buckets(std::string_view text) {
  MultiValentTrain::Buckets buckets;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, comma - pos);
    const auto at = item.find('@');
    if (at == std::string_view::npos) {
      throw Error(ErrorCode::ParseError, "multi-valent bucket '" + std::string(item) + "' is not <amplitude>@<position>");
    }
    const Integer amplitude = parse_natural(item.substr(0, at));
    const Integer position = parse_natural(item.substr(at + 1));
    if (amplitude < 1) throw Error(ErrorCode::ParseError, "bucket amplitude must be >= 1");
    buckets[Tick(position)] += amplitude;
    pos = comma + 1;
  }
  return buckets;
}

AccumulatorConfig accumulator_config(const BlockSpec& block, std::uint64_t run_seed) {
  AccumulatorConfig config;
  config.model = parse_accumulator_model(block.params.at("model"));
  if (auto it = block.params.find("depth"); it != block.params.end()) {
    const Integer depth = parse_natural(it->second);
    if (depth < 1 || depth > 4096) throw Error(ErrorCode::InvalidArgument, "depth must be in [1, 4096]");
    config.chain_depth = depth.convert_to<unsigned>();
  }
  if (auto it = block.params.find("rate"); it != block.params.end()) config.rate = parse_rational(it->second);
  if (auto it = block.params.find("flux"); it != block.params.end()) config.flux = parse_rational(it->second);
  const auto noise = block.params.find("noise");
  if (noise != block.params.end() && noise->second == "on") {
    std::uint64_t seed = 0;
    if (auto it = block.params.find("seed"); it != block.params.end()) {
      seed = parse_natural(it->second).convert_to<std::uint64_t>();
    }
    config.noise_seed = mix(run_seed) ^ seed;
  }
  config.validate();
  return config;
}

LatencyTable parse_latency_table(std::string_view text) {
  LatencyTable table;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = std::min(text.find('\n', pos), text.size());
    ++line_no;
    const auto tokens = tokenize(text.substr(pos, nl - pos));
    pos = nl + 1;
    if (tokens.empty()) continue;
    if (tokens.size() != 2 || !is_natural(tokens[0].text) || !is_natural(tokens[1].text)) {
      throw Error(ErrorCode::ParseError,
                  "latency table line " + std::to_string(line_no) + ": expected '<emission-tick> <delay>'");
    }
    const Tick at(parse_natural(tokens[0].text));
    if (table.steps.empty() ? at != Tick(0) : !(table.steps.back().first < at)) {
      throw Error(ErrorCode::ParseError, "latency table line " + std::to_string(line_no) +
                                             ": steps must start at tick 0 and strictly increase");
    }
    table.steps.emplace_back(at, Tick(parse_natural(tokens[1].text)));
  }
  if (table.steps.empty()) throw Error(ErrorCode::ParseError, "latency table has no steps");
  return table;
}

Netlist parse_netlist(std::string_view text, const ParseOptions& options) {
  Netlist net;
  std::vector<Diagnostic> errors;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = std::min(text.find('\n', pos), text.size());
    ++line_no;
    const auto tokens = tokenize(text.substr(pos, nl - pos));
    pos = nl + 1;
    if (tokens.empty()) continue;
    auto fail = [&](const Token& at, std::string message) { errors.push_back({line_no, at.column, std::move(message)}); };
    const std::string_view directive = tokens[0].text;

    if (directive == "clock") {
      if (tokens.size() != 3) {
        fail(tokens[0], "expected 'clock <id> <numerator>[/<denominator>]'");
        continue;
      }
      try {
        net.clocks.emplace_back(std::string(tokens[1].text), parse_rational(tokens[2].text));
      } catch (const Error& e) {
        fail(tokens[2], e.what());
      }
    } else if (directive == "block") {
      if (tokens.size() < 3) {
        fail(tokens[0], "expected 'block <id> <kind> [key=value ...]'");
        continue;
      }
      const auto kind = parse_block_kind(tokens[2].text);
      if (!kind) {
        fail(tokens[2], "unknown block kind '" + std::string(tokens[2].text) + "'");
        continue;
      }
      BlockSpec block{std::string(tokens[1].text), *kind, {}, line_no};
      bool ok = true;
      for (std::size_t i = 3; i < tokens.size(); ++i) {
        const auto eq = tokens[i].text.find('=');
        if (eq == std::string_view::npos || eq == 0 || eq + 1 == tokens[i].text.size()) {
          fail(tokens[i], "expected key=value, got '" + std::string(tokens[i].text) + "'");
          ok = false;
          continue;
        }
        auto [it, inserted] =
            block.params.emplace(std::string(tokens[i].text.substr(0, eq)), std::string(tokens[i].text.substr(eq + 1)));
        if (!inserted) {
          fail(tokens[i], "duplicate parameter '" + it->first + "'");
          ok = false;
        }
      }
      if (ok) net.blocks.push_back(std::move(block));
    } else if (directive == "wire") {
      if (tokens.size() < 3 || tokens.size() > 4) {
        fail(tokens[0], "expected 'wire <src>.<port> <dst>.<port> [latency=<int>|table=<file>|jitter=<lo>:<hi>]'");
        continue;
      }
      const auto src = parse_port_ref(tokens[1].text);
      const auto dst = parse_port_ref(tokens[2].text);
      if (!src) fail(tokens[1], "malformed port reference '" + std::string(tokens[1].text) + "'");
      if (!dst) fail(tokens[2], "malformed port reference '" + std::string(tokens[2].text) + "'");
      if (!src || !dst) continue;
      WireSpec wire{*src, *dst, ConstantLatency{Tick(0)}, line_no};
      if (tokens.size() == 4) {
        const std::string_view opt = tokens[3].text;
        try {
          if (opt.starts_with("latency=")) {
            wire.latency = ConstantLatency{Tick(parse_natural(opt.substr(8)))};
          } else if (opt.starts_with("table=")) {
            const auto path = options.base_dir / std::string(opt.substr(6));
            std::ifstream in(path);
            if (!in) throw Error(ErrorCode::ParseError, "cannot read latency table '" + path.string() + "'");
            std::stringstream buffer;
            buffer << in.rdbuf();
            wire.latency = parse_latency_table(buffer.str());
          } else if (opt.starts_with("jitter=")) {
            const auto body = opt.substr(7);
            const auto colon = body.find(':');
            if (colon == std::string_view::npos) throw Error(ErrorCode::ParseError, "expected jitter=<lo>:<hi>");
            wire.latency =
                SeededJitter{0, Tick(parse_natural(body.substr(0, colon))), Tick(parse_natural(body.substr(colon + 1)))};
          } else {
            throw Error(ErrorCode::ParseError, "unknown wire option '" + std::string(opt) + "'");
          }
          // Link construction checks table and jitter shape.
          Link(wire.latency, ClockRef("check", 1), ClockRef("check", 1));
        } catch (const Error& e) {
          fail(tokens[3], e.what());
          continue;
        }
      }
      net.wires.push_back(std::move(wire));
    } else if (directive == "probe") {
      if (tokens.size() != 2) {
        fail(tokens[0], "expected 'probe <block>.<port>'");
        continue;
      }
      const auto ref = parse_port_ref(tokens[1].text);
      if (!ref) {
        fail(tokens[1], "malformed port reference '" + std::string(tokens[1].text) + "'");
        continue;
      }
      std::string label(tokens[1].text);
      if (label.ends_with(".out")) label.resize(label.size() - 4);
      net.probes.push_back({*ref, std::move(label), line_no});
    } else {
      fail(tokens[0], "unknown directive '" + std::string(directive) + "'");
    }
  }
  if (!errors.empty()) throw NetlistError(ErrorCode::ParseError, std::move(errors));
  if (net.clocks.empty()) net.clocks.emplace_back("main", Rational(1));
  validate(net);
  return net;
}

Netlist load_netlist(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NetlistError(ErrorCode::ParseError, {{0, 0, "cannot read netlist '" + path.string() + "'"}});
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_netlist(buffer.str(), ParseOptions{path.parent_path()});
}

void validate(const Netlist& net) {
  std::vector<Diagnostic> errors;
  auto fail = [&](std::size_t line, std::string message) { errors.push_back({line, 1, std::move(message)}); };

  if (net.blocks.empty()) {
    throw NetlistError(ErrorCode::ValidationError, {{0, 0, "no blocks"}});
  }

  std::set<std::string> clock_ids;
  for (const auto& c : net.clocks) {
    if (!clock_ids.insert(c.id()).second) fail(0, "duplicate clock '" + c.id() + "'");
  }

  std::map<std::string, const BlockSpec*> blocks;
  for (const auto& b : net.blocks) {
    if (!blocks.emplace(b.id, &b).second) {
      fail(b.line, "duplicate block id '" + b.id + "'");
      continue;
    }
    const auto allowed = allowed_params(b.kind);
    for (const auto& [key, value] : b.params) {
      if (!allowed.contains(key)) {
        fail(b.line, "block '" + b.id + "': parameter '" + key + "' does not apply to " + std::string(to_string(b.kind)));
      }
    }
    if (auto it = b.params.find("clock"); it != b.params.end() && !clock_ids.contains(it->second)) {
      fail(b.line, "block '" + b.id + "': unknown clock '" + it->second + "'");
    }
    switch (b.kind) {
      case BlockKind::Source: {
        const bool scalar = b.params.contains("value");
        const bool mv = b.params.contains("mv");
        if (scalar == mv) {
          fail(b.line, "source '" + b.id + "' needs exactly one of value=<n> or mv=<a>@<p>,...");
        } else if (scalar && !parses([&] { parse_natural(b.params.at("value")); })) {
          fail(b.line, "source '" + b.id + "': value must be a non-negative integer");
        } else if (mv && !parses([&] { parse_buckets(b.params.at("mv")); })) {
          fail(b.line, "source '" + b.id + "': mv must be a list of <amplitude>@<position>");
        }
        break;
      }
      case BlockKind::Mul:
        if (auto it = b.params.find("k"); it != b.params.end()) {
          if (!is_natural(it->second) || parse_natural(it->second) < 1) {
            fail(b.line, "mul '" + b.id + "': k must be a positive integer");
          }
        }
        break;
      case BlockKind::Accumulator:
        if (!b.params.contains("model")) {
          fail(b.line, "accumulator '" + b.id + "' needs model=digital|toggle|analog|photon");
        } else {
          try {
            accumulator_config(b, 0);
          } catch (const Error& e) {
            fail(b.line, "accumulator '" + b.id + "': " + e.what());
          }
        }
        break;
      default:
        break;
    }
  }

  auto clock_id = [&](const BlockSpec& b) {
    auto it = b.params.find("clock");
    return it != b.params.end() ? it->second : net.clocks.front().id();
  };

  std::set<PortRef> driven;
  std::map<std::string, unsigned> input_max;
  for (const auto& w : net.wires) {
    const auto src = blocks.find(w.src.block);
    const auto dst = blocks.find(w.dst.block);
    if (src == blocks.end()) fail(w.line, "wire from unknown block '" + w.src.block + "'");
    if (dst == blocks.end()) fail(w.line, "wire to unknown block '" + w.dst.block + "'");
    if (src == blocks.end() || dst == blocks.end()) continue;
    const BlockSpec& s = *src->second;
    const BlockSpec& d = *dst->second;
    if (w.src.direction != PortDirection::Out) {
      fail(w.line, "wire source '" + w.src.str() + "' is not an output port");
      continue;
    }
    if (w.dst.direction != PortDirection::In) {
      fail(w.line, "wire destination '" + w.dst.str() + "' is not an input port");
      continue;
    }
    if (!has_outputs(s.kind) || (w.src.index != 0 && s.kind != BlockKind::Demux)) {
      fail(w.line, "block '" + s.id + "' has no port " + w.src.port_name());
      continue;
    }
    if (w.dst.index >= arity_of(d.kind).max) {
      fail(w.line, "block '" + d.id + "' has no port " + w.dst.port_name());
      continue;
    }
    if (!driven.insert(w.dst).second) {
      fail(w.line, "input " + w.dst.str() + " is driven by more than one wire");
    }
    input_max[d.id] = std::max(input_max[d.id], w.dst.index + 1);
    const PayloadType carried = s.kind == BlockKind::Demux ? PayloadType::Scalar : output_type(s);
    if (auto need = required_input(d.kind); need && *need != carried) {
      fail(w.line, "wire " + w.src.str() + " -> " + w.dst.str() + " carries a " + std::string(to_string(carried)) +
                       " value but " + std::string(to_string(d.kind)) + " expects " + std::string(to_string(*need)));
    }
    if (!crosses_clocks(d.kind) && clock_id(s) != clock_id(d)) {
      fail(w.line, "ClockMismatch: " + w.src.str() + " runs on '" + clock_id(s) + "' but " + d.id + " runs on '" +
                       clock_id(d) + "'; insert a convert block");
    }
  }

  for (const auto& b : net.blocks) {
    const unsigned count = input_max.contains(b.id) ? input_max[b.id] : 0;
    for (unsigned i = 0; i < count; ++i) {
      if (!driven.contains(PortRef{b.id, PortDirection::In, i})) {
        fail(b.line, "block '" + b.id + "': input in" + std::to_string(i) + " is not driven");
      }
    }
    const Arity arity = arity_of(b.kind);
    if (count < arity.min) {
      fail(b.line, std::string(to_string(b.kind)) + " '" + b.id + "' needs at least " + std::to_string(arity.min) +
                       " input(s), has " + std::to_string(count));
    }
    if (b.kind == BlockKind::Mul) {
      if (count == 1 && !b.params.contains("k")) fail(b.line, "mul '" + b.id + "' with one input needs k=<n>");
      if (count == 2 && b.params.contains("k")) fail(b.line, "mul '" + b.id + "' takes either k= or a second input");
    }
  }

  for (const auto& p : net.probes) {
    const auto it = blocks.find(p.port.block);
    if (it == blocks.end()) {
      fail(p.line, "probe on unknown block '" + p.port.block + "'");
      continue;
    }
    const BlockSpec& b = *it->second;
    const bool valid = p.port.direction == PortDirection::In
                           ? driven.contains(p.port)
                           : has_outputs(b.kind) && (p.port.index == 0 || b.kind == BlockKind::Demux);
    if (!valid) fail(p.line, "probe on missing port " + p.port.str());
  }

  // Cycle check over block-level edges (Kahn).
  if (errors.empty()) {
    std::map<std::string, unsigned> indegree;
    std::map<std::string, std::vector<std::string>> succ;
    for (const auto& b : net.blocks) indegree[b.id] = 0;
    for (const auto& w : net.wires) {
      succ[w.src.block].push_back(w.dst.block);
      ++indegree[w.dst.block];
    }
    std::vector<std::string> ready;
    for (const auto& [id, deg] : indegree) {
      if (deg == 0) ready.push_back(id);
    }
    std::size_t visited = 0;
    while (!ready.empty()) {
      const std::string id = ready.back();
      ready.pop_back();
      ++visited;
      for (const auto& next : succ[id]) {
        if (--indegree[next] == 0) ready.push_back(next);
      }
    }
    if (visited != net.blocks.size()) {
      for (const auto& [id, deg] : indegree) {
        if (deg != 0) fail(blocks[id]->line, "block '" + id + "' is part of a cycle; netlists must be feed-forward");
      }
    }
  }

  if (!errors.empty()) {
    std::stable_sort(errors.begin(), errors.end(), [](const auto& a, const auto& b) { return a.line < b.line; });
    throw NetlistError(ErrorCode::ValidationError, std::move(errors));
  }
}

std::vector<const BlockSpec*> topological_order(const Netlist& net) {
  std::map<std::string, unsigned> indegree;
  std::map<std::string, std::set<std::string>> succ;
  for (const auto& b : net.blocks) indegree[b.id] = 0;
  for (const auto& w : net.wires) {
    if (succ[w.src.block].insert(w.dst.block).second) ++indegree[w.dst.block];
  }
  std::set<std::string> ready;
  for (const auto& [id, deg] : indegree) {
    if (deg == 0) ready.insert(id);
  }
  std::vector<const BlockSpec*> order;
  while (!ready.empty()) {
    const std::string id = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(net.find_block(id));
    for (const auto& next : succ[id]) {
      if (--indegree[next] == 0) ready.insert(next);
    }
  }
  return order;
}

}  // namespace temporal::sim
