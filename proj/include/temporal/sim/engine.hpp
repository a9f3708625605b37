#pragma once

#include "temporal/channel.hpp"
#include "temporal/sim/netlist.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace temporal::sim {

/// Per-block overhead, in ticks of the block's own clock, for delimiter handling.
inline constexpr int kDelimiterOverhead = 1;

inline const Integer kDefaultBudget = Integer(100'000'000);

struct RunOptions {
  /// Events after this base tick are not processed; the trace is flagged instead.
  Integer budget = kDefaultBudget;
  /// Any source or computed value above this aborts the run with ValueLimit.
  std::optional<Integer> max_value;
  std::uint64_t seed = 0;
  /// Test hook: rewrites a block's scalar result before it is emitted.
  std::function<Integer(const BlockSpec&, const Integer&)> output_hook;
};

struct TraceEvent {
  Integer tick;  // base ticks
  std::string block;
  std::string port;
  EventRole role = EventRole::Start;
  Integer amplitude = 1;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct BlockCost {
  std::string block;
  std::string kind;
  Integer cost;  // ticks of the block's own clock, from firing to its last output event
  std::optional<Integer> linear_model;  // add blocks: sum of operand values

  friend bool operator==(const BlockCost&, const BlockCost&) = default;
};

struct ProbeResult {
  std::string label;
  std::string value;  // "7", "{5,7}", "{2:3,3:4}", or "?" when nothing completed

  std::optional<Integer> scalar() const;
  friend bool operator==(const ProbeResult&, const ProbeResult&) = default;
  friend std::ostream& operator<<(std::ostream& os, const ProbeResult& r) { return os << r.label << '=' << r.value; }
};

struct TraceStats {
  Integer total_ticks = 0;  // tick of the last processed event
  std::size_t event_count = 0;
  Rational base_frequency = 1;  // base ticks per unit time
  std::vector<BlockCost> block_costs;
  std::vector<std::string> overflow_flags;
  std::vector<std::string> stability_violations;
  bool budget_exhausted = false;

  friend bool operator==(const TraceStats&, const TraceStats&) = default;
};

struct Trace {
  /// Sorted by (tick, block id, port direction, port index, emission order).
  std::vector<TraceEvent> events;
  std::vector<ProbeResult> results;
  TraceStats stats;

  friend bool operator==(const Trace&, const Trace&) = default;
};

/// Deterministic discrete-event execution. Blocks fire when every input has
/// received its end event; no global control clock is involved.
/// Throws Error(SimulationError) when a block rejects its inputs (e.g. duplicate mux values).
Trace run(const Netlist& netlist, const RunOptions& options = {});

struct AddCostReport {
  std::string block;
  Integer operand_sum;
  Integer measured;
  Integer overhead;  // measured - operand_sum
};

struct Summary {
  Integer total_ticks = 0;
  std::size_t event_count = 0;
  Integer delimiter_overhead = kDelimiterOverhead;
  std::vector<BlockCost> per_block;
  std::vector<AddCostReport> add_costs;
  std::vector<std::string> flags;
  bool budget_exhausted = false;
};

Summary stats(const Trace& trace);
void write_summary(const Summary& summary, std::ostream& out);

/// The base time unit: the smallest frequency every clock period divides evenly.
Rational base_frequency(const std::vector<ClockRef>& clocks);

}  // namespace temporal::sim
