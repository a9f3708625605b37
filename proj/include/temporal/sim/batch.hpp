#pragma once

#include "temporal/sim/engine.hpp"

#include <span>
#include <vector>

namespace temporal::sim {

/// Independent simulations spread over OpenMP threads; result i belongs to netlist i.
std::vector<Trace> run_batch(std::span<const Netlist> netlists, const RunOptions& options = {});

/// Same results, one netlist after another.
std::vector<Trace> run_batch_serial(std::span<const Netlist> netlists, const RunOptions& options = {});

}  // namespace temporal::sim
