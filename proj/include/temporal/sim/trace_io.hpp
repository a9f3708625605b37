#pragma once

#include "temporal/sim/engine.hpp"

#include <istream>
#include <ostream>

namespace temporal::sim {

/// Header "tick,block,port,role", one row per event, then a footer of
/// "# result <label>=<value>", "# stat ...", and "# flag ..." lines.
/// Pulses with amplitude above 1 are written as role "pulse*<amplitude>".
void write_trace_csv(const Trace& trace, std::ostream& out);

/// Inverse of write_trace_csv. Throws Error(ParseError) with the offending line.
Trace read_trace_csv(std::istream& in);

/// Value-change dump: one integer signal per block port, holding the summed
/// amplitude of the events at each tick and dropping back to 0 on the next tick.
/// Results follow as $comment key=value $end lines.
void write_vcd(const Trace& trace, std::ostream& out);

}  // namespace temporal::sim
