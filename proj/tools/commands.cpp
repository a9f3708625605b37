#include "commands.hpp"

#include "temporal/arith.hpp"
#include "temporal/channel.hpp"
#include "temporal/sim/batch.hpp"
#include "temporal/sim/engine.hpp"
#include "temporal/sim/oracle.hpp"
#include "temporal/sim/trace_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

namespace temporal::cli {
namespace {

void report(const Error& e, std::ostream& err) {
  if (const auto* net = dynamic_cast<const sim::NetlistError*>(&e)) {
    err << to_string(e.code()) << '\n';
    for (const auto& d : net->diagnostics()) {
      err << "  line " << d.line << ", column " << d.column << ": " << d.message << '\n';
    }
    return;
  }
  err << e.what() << '\n';
}

template <class Fn>
void write_file(const std::filesystem::path& path, Fn&& fn) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path.string() + "'");
  fn(file);
}

std::string bench_netlist(const BenchCommand& cmd, const Integer& size) {
  std::ostringstream os;
  os << "clock main 1\n";
  if (cmd.op == "add") {
    os << "block a source value=" << size << "\nblock b source value=" << size << "\nblock op add\n"
       << "wire a.out op.in0\nwire b.out op.in1\n";
  } else if (cmd.op == "mul") {
    os << "block a source value=" << size << "\nblock op mul k=" << cmd.k << "\nwire a.out op.in0\n";
  } else if (cmd.op == "madd") {
    os << "block a source mv=" << cmd.amplitude << '@' << size << "\nblock op madd\nwire a.out op.in0\n";
  } else {
    throw Error(ErrorCode::InvalidArgument, "bench op must be add, mul or madd, got '" + cmd.op + "'");
  }
  os << "probe op.out\n";
  return os.str();
}

std::string join(const std::vector<Tick>& pulses) {
  std::string s;
  for (std::size_t i = 0; i < pulses.size(); ++i) s += (i ? " " : "") + to_string(pulses[i]);
  return s;
}

}  // namespace

int cmd_run(const RunCommand& cmd, std::ostream& out, std::ostream& err) {
  try {
    const sim::Netlist net = sim::load_netlist(cmd.netlist);
    sim::RunOptions options;
    if (cmd.budget) options.budget = *cmd.budget;
    options.seed = cmd.seed;
    const sim::Trace trace = sim::run(net, options);
    if (cmd.trace_out) write_file(*cmd.trace_out, [&](std::ostream& f) { sim::write_trace_csv(trace, f); });
    if (cmd.vcd_out) write_file(*cmd.vcd_out, [&](std::ostream& f) { sim::write_vcd(trace, f); });
    for (const auto& r : trace.results) out << "probe " << r.label << '=' << r.value << '\n';
    if (cmd.print_stats) sim::write_summary(sim::stats(trace), out);
    if (trace.stats.budget_exhausted) {
      err << "budget of " << options.budget << " ticks exhausted at tick " << trace.stats.total_ticks << '\n';
      return kExitBudget;
    }
    return kExitOk;
  } catch (const Error& e) {
    report(e, err);
    return kExitError;
  }
}

int cmd_check(const CheckCommand& cmd, std::ostream& out, std::ostream& err) {
  try {
    const sim::Netlist net = sim::load_netlist(cmd.netlist);
    if (const auto missing = sim::oracle_unsupported(net); !missing.empty()) {
      err << "check cannot evaluate accumulator blocks such as '" << missing.front() << "'\n";
      return kExitError;
    }
    sim::RunOptions options;
    options.budget = cmd.budget ? *cmd.budget : sim::quiescence_bound(net);
    options.seed = cmd.seed;
    if (cmd.inject_off_by_one) {
      options.output_hook = [target = *cmd.inject_off_by_one](const sim::BlockSpec& b, const Integer& v) {
        return b.id == target ? v + 1 : v;
      };
    }
    const sim::Trace trace = sim::run(net, options);
    const auto expected = sim::oracle_probe_values(net);
    bool all_match = true;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      const std::string& actual = trace.results.at(i).value;
      if (actual == expected[i].value) {
        out << "match " << expected[i].label << ": " << expected[i].value << " = " << actual << '\n';
      } else {
        all_match = false;
        out << "mismatch " << expected[i].label << ": expected=" << expected[i].value << " actual=" << actual << '\n';
      }
    }
    return all_match ? kExitOk : kExitMismatch;
  } catch (const Error& e) {
    report(e, err);
    return kExitError;
  }
}

int cmd_encode(const EncodeCommand& cmd, std::ostream& out, std::ostream& err) {
  try {
    const ClockRef clock("main", 1);
    std::vector<Integer> values;
    for (const auto& v : cmd.values) values.push_back(parse_natural(v));
    if (cmd.scheme == "unary") {
      for (const auto& v : values) {
        const UnaryTrain t = encode_unary(v, clock);
        out << std::string(t.length.convert_to<std::size_t>(), '1') << '\n';
      }
    } else if (cmd.scheme == "pim") {
      for (const auto& v : values) out << join(encode_pim(v, clock).pulses()) << '\n';
    } else if (cmd.scheme == "hybrid") {
      for (const auto& v : values) {
        const auto digits = encode_hybrid(v, cmd.base, clock);
        for (std::size_t i = 0; i < digits.size(); ++i) {
          out << (i ? "|" : "") << std::string(digits[i].length.convert_to<std::size_t>(), '1');
        }
        out << '\n';
      }
    } else if (cmd.scheme == "mux") {
      out << join(mux(values, clock).to_train().pulses()) << '\n';
    } else if (cmd.scheme == "serial") {
      out << join(serialize_stream(values, DeliveryMode::Serial, clock).pulses()) << '\n';
    } else {
      err << "unknown scheme '" << cmd.scheme << "' (unary|pim|hybrid|mux|serial)\n";
      return kExitError;
    }
    return kExitOk;
  } catch (const Error& e) {
    report(e, err);
    return kExitError;
  }
}

std::vector<BenchRow> bench_rows(const BenchCommand& cmd) {
  std::vector<sim::Netlist> nets;
  for (const auto& size : cmd.sizes) {
    if (size < 1) throw Error(ErrorCode::InvalidArgument, "bench sizes must be positive");
    nets.push_back(sim::parse_netlist(bench_netlist(cmd, size)));
  }
  sim::RunOptions options;
  options.budget = Integer(1) << 256;
  const auto traces = sim::run_batch(nets, options);
  std::vector<BenchRow> rows;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const auto& costs = traces[i].stats.block_costs;
    const auto it = std::find_if(costs.begin(), costs.end(), [](const auto& c) { return c.block == "op"; });
    rows.push_back({cmd.sizes[i], it->cost});
  }
  return rows;
}

int cmd_bench(const BenchCommand& cmd, std::ostream& out, std::ostream& err) {
  try {
    const auto rows = bench_rows(cmd);
    auto emit = [&](std::ostream& os) {
      os << "size,ticks\n";
      for (const auto& r : rows) os << r.size << ',' << r.ticks << '\n';
    };
    if (cmd.out) {
      write_file(*cmd.out, emit);
    } else {
      emit(out);
    }
    return kExitOk;
  } catch (const Error& e) {
    report(e, err);
    return kExitError;
  }
}

int cmd_export(const ExportCommand& cmd, std::ostream& out, std::ostream& err) {
  try {
    std::ifstream in(cmd.trace);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read trace '" + cmd.trace.string() + "'");
    const sim::Trace trace = sim::read_trace_csv(in);
    auto emit = [&](std::ostream& os) {
      if (cmd.format == "vcd") {
        sim::write_vcd(trace, os);
      } else {
        sim::write_trace_csv(trace, os);
      }
    };
    if (cmd.format != "vcd" && cmd.format != "csv") {
      err << "unknown export format '" << cmd.format << "' (csv|vcd)\n";
      return kExitError;
    }
    if (cmd.out) {
      write_file(*cmd.out, emit);
    } else {
      emit(out);
    }
    return kExitOk;
  } catch (const Error& e) {
    report(e, err);
    return kExitError;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Temporal computing simulator: interval-coded arithmetic on a discrete-event engine"};
  app.require_subcommand(1, 1);
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Seed for every stochastic component");

  RunCommand run;
  std::string run_budget;
  auto* run_cmd = app.add_subcommand("run", "Simulate a netlist and print probe values");
  run_cmd->add_option("netlist", run.netlist, "Netlist file")->required();
  run_cmd->add_option("--budget", run_budget, "Maximum simulated base tick");
  run_cmd->add_option("--trace", run.trace_out, "Write the event trace as CSV");
  run_cmd->add_option("--vcd", run.vcd_out, "Write the event trace as a value-change dump");
  run_cmd->add_flag("--stats", run.print_stats, "Print tick-cost statistics");

  CheckCommand check;
  std::string check_budget;
  auto* check_cmd = app.add_subcommand("check", "Compare simulated probes with integer evaluation");
  check_cmd->add_option("netlist", check.netlist, "Netlist file")->required();
  check_cmd->add_option("--budget", check_budget, "Maximum simulated base tick (default: quiescence bound)");
  check_cmd->add_option("--inject-off-by-one", check.inject_off_by_one)->group("");

  EncodeCommand encode;
  auto* encode_cmd = app.add_subcommand("encode", "Print temporal encodings of integers");
  encode_cmd->add_option("scheme", encode.scheme, "unary | pim | hybrid | mux | serial")->required();
  encode_cmd->add_option("values", encode.values, "Non-negative integers")->required();
  encode_cmd->add_option("--base", encode.base, "Digit base for the hybrid scheme");

  BenchCommand bench;
  std::vector<std::string> bench_sizes;
  std::string bench_k = "1";
  std::string bench_amplitude = "1";
  auto* bench_cmd = app.add_subcommand("bench", "Simulated tick cost over a size sweep, as CSV");
  bench_cmd->add_option("op", bench.op, "add | mul | madd")->required();
  bench_cmd->add_option("--sizes", bench_sizes, "Operand sizes")->required()->delimiter(',');
  bench_cmd->add_option("--out", bench.out, "CSV output file (default: stdout)");
  bench_cmd->add_option("--k", bench_k, "Dilation factor for mul");
  bench_cmd->add_option("--amplitude", bench_amplitude, "Bucket amplitude for madd");

  ExportCommand exp;
  auto* export_cmd = app.add_subcommand("export", "Convert a CSV trace");
  export_cmd->add_option("trace", exp.trace, "Trace CSV written by run --trace")->required();
  export_cmd->add_option("--format", exp.format, "csv | vcd")->required();
  export_cmd->add_option("--out", exp.out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitError;
  }

  try {
    if (*run_cmd) {
      run.seed = seed;
      if (!run_budget.empty()) run.budget = parse_natural(run_budget);
      return cmd_run(run, out, err);
    }
    if (*check_cmd) {
      check.seed = seed;
      if (!check_budget.empty()) check.budget = parse_natural(check_budget);
      return cmd_check(check, out, err);
    }
    if (*encode_cmd) return cmd_encode(encode, out, err);
    if (*bench_cmd) {
      for (const auto& s : bench_sizes) bench.sizes.push_back(parse_natural(s));
      bench.k = parse_natural(bench_k);
      bench.amplitude = parse_natural(bench_amplitude);
      return cmd_bench(bench, out, err);
    }
    return cmd_export(exp, out, err);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace temporal::cli
