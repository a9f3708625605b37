#pragma once

// Plain integer evaluation of a netlist, sharing no code path with the
// event-driven engine. Supports every block kind except accumulators.

#include "temporal/sim/engine.hpp"
#include "temporal/sim/netlist.hpp"

#include <string>
#include <vector>

namespace temporal::sim {

/// Ids of blocks the oracle cannot evaluate (empty when the netlist is supported).
std::vector<std::string> oracle_unsupported(const Netlist& netlist);

/// Expected probe results in the same order and rendering as run().
/// Throws InvalidArgument when the netlist uses unsupported kinds.
std::vector<ProbeResult> oracle_probe_values(const Netlist& netlist);

/// Upper bound on the base tick of the last event of a run; a budget of at
/// least this value guarantees quiescence.
Integer quiescence_bound(const Netlist& netlist);

}  // namespace temporal::sim
