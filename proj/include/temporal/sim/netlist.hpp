#pragma once

#include "temporal/accumulators.hpp"
#include "temporal/channel.hpp"
#include "temporal/core.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace temporal::sim {

enum class BlockKind { Source, Add, Mul, Min, Max, Mux, Demux, Madd, Accumulator, Convert, Probe };

std::string_view to_string(BlockKind kind);
std::optional<BlockKind> parse_block_kind(std::string_view text);

/// What a port carries: one interval, a multiplexed set, or a multi-valent train.
enum class PayloadType { Scalar, Set, MultiValent };

std::string_view to_string(PayloadType type);

enum class PortDirection { In, Out };

struct PortRef {
  std::string block;
  PortDirection direction = PortDirection::Out;
  unsigned index = 0;

  /// "in<N>" or "out<N>".
  std::string port_name() const;
  std::string str() const { return block + "." + port_name(); }

  friend bool operator==(const PortRef&, const PortRef&) = default;
  friend auto operator<=>(const PortRef&, const PortRef&) = default;
};

/// Parses "<block>.<port>" where port is in<N>, out<N>, or out (same as out0).
std::optional<PortRef> parse_port_ref(std::string_view text);

struct BlockSpec {
  std::string id;
  BlockKind kind = BlockKind::Source;
  std::map<std::string, std::string> params;
  std::size_t line = 0;
};

struct WireSpec {
  PortRef src;
  PortRef dst;
  /// Delays are counted in periods of the driving block's clock. A SeededJitter
  /// seed is mixed with the run seed and the wire's position at run time.
  Latency latency = ConstantLatency{Tick(0)};
  std::size_t line = 0;
};

struct ProbeSpec {
  PortRef port;
  std::string label;  // the port as written, with a trailing ".out" dropped
  std::size_t line = 0;
};

struct Netlist {
  std::vector<ClockRef> clocks;
  std::vector<BlockSpec> blocks;
  std::vector<WireSpec> wires;
  std::vector<ProbeSpec> probes;

  const BlockSpec* find_block(std::string_view id) const;
  const ClockRef& find_clock(std::string_view id) const;
  /// The block's clock= parameter, or the first declared clock.
  const ClockRef& clock_of(const BlockSpec& block) const;
  /// The wire driving an input port, if any.
  const WireSpec* driver_of(const PortRef& input) const;
  /// Number of driven input ports (they are contiguous from in0).
  unsigned input_count(const BlockSpec& block) const;
};

struct Diagnostic {
  std::size_t line = 0;
  std::size_t column = 0;
  std::string message;
};

/// ParseError or ValidationError carrying every problem found, not just the first.
class NetlistError : public Error {
 public:
  NetlistError(ErrorCode code, std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

struct ParseOptions {
  /// Directory that latency table paths are resolved against.
  std::filesystem::path base_dir;
};

/// Parses and validates. Throws NetlistError.
Netlist parse_netlist(std::string_view text, const ParseOptions& options = {});
Netlist load_netlist(const std::filesystem::path& path);

/// Full structural validation; throws NetlistError(ValidationError) listing all violations.
void validate(const Netlist& netlist);

/// Block ids in dependency order (producers before consumers). Assumes a validated netlist.
std::vector<const BlockSpec*> topological_order(const Netlist& netlist);

// Typed accessors for validated blocks.
PayloadType output_type(const BlockSpec& block);
std::optional<Integer> natural_param(const BlockSpec& block, const std::string& key);
MultiValentTrain::Buckets parse_buckets(std::string_view text);  // "a@p,a@p,..."
AccumulatorConfig accumulator_config(const BlockSpec& block, std::uint64_t run_seed);
LatencyTable parse_latency_table(std::string_view text);

}  // namespace temporal::sim
