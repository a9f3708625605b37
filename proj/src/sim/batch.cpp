#include "temporal/sim/batch.hpp"

#include "temporal/kernels.hpp"

namespace temporal::sim {

std::vector<Trace> run_batch(std::span<const Netlist> netlists, const RunOptions& options) {
  std::vector<Trace> traces(netlists.size());
  kernels::parallel_for(netlists.size(), [&](std::size_t i) { traces[i] = run(netlists[i], options); });
  return traces;
}

std::vector<Trace> run_batch_serial(std::span<const Netlist> netlists, const RunOptions& options) {
  std::vector<Trace> traces;
  traces.reserve(netlists.size());
  for (const auto& n : netlists) traces.push_back(run(n, options));
  return traces;
}

}  // namespace temporal::sim
