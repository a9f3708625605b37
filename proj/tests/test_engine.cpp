#include "temporal/sim/batch.hpp"
#include "temporal/sim/engine.hpp"
#include "temporal/sim/oracle.hpp"
#include "temporal/sim/trace_io.hpp"

#include "random_netlist.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

using namespace temporal;
using namespace temporal::sim;

namespace {

const std::filesystem::path kGolden = GOLDEN_DIR;

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string csv_of(const Trace& t) {
  std::ostringstream out;
  write_trace_csv(t, out);
  return out.str();
}

std::string adder(long long a, long long b, long long latency = 0) {
  return "block a source value=" + std::to_string(a) + "\nblock b source value=" + std::to_string(b) +
         "\nblock sum add\nwire a.out sum.in0 latency=" + std::to_string(latency) +
         "\nwire b.out sum.in1\nprobe sum.out\n";
}

std::string result_of(const Trace& t, std::string_view label) {
  for (const auto& r : t.results) {
    if (r.label == label) return r.value;
  }
  return "<missing>";
}

}  // namespace

TEST(Engine, GoldenNetlistResults) {
  EXPECT_EQ(result_of(run(load_netlist(kGolden / "add.net")), "sum"), "7");
  EXPECT_EQ(result_of(run(load_netlist(kGolden / "mul.net")), "prod"), "15");
  const auto plex = run(load_netlist(kGolden / "plex.net"));
  EXPECT_EQ(result_of(plex, "ch"), "{5,7}");
  EXPECT_EQ(result_of(plex, "split.out0"), "5");
  EXPECT_EQ(result_of(plex, "split.out1"), "7");
  EXPECT_EQ(result_of(run(load_netlist(kGolden / "madd.net")), "dot"), "18");
}

TEST(Engine, GoldenTraceMatchesFile) {
  const auto trace = run(load_netlist(kGolden / "add.net"));
  EXPECT_EQ(csv_of(trace), slurp(kGolden / "add.trace.csv"));
}

TEST(Engine, MultiClockConvertAndToggle) {
  const auto trace = run(load_netlist(kGolden / "clocks.net"));
  EXPECT_EQ(result_of(trace, "fx"), "15");
  EXPECT_EQ(result_of(trace, "count"), "7");
  EXPECT_FALSE(trace.stats.overflow_flags.empty());
  EXPECT_EQ(trace.stats.base_frequency, 3);
}

TEST(Engine, UnstableLinkIsFlaggedAndDistorts) {
  const auto trace = run(load_netlist(kGolden / "unstable.net"));
  EXPECT_EQ(result_of(trace, "y"), "10");
  ASSERT_EQ(trace.stats.stability_violations.size(), 1u);
  EXPECT_NE(trace.stats.stability_violations[0].find("+3"), std::string::npos);
}

TEST(Engine, ConstantLatencyDoesNotChangeValues) {
  for (long long latency : {0, 1, 5, 40}) {
    EXPECT_EQ(result_of(run(parse_netlist(adder(3, 4, latency))), "sum"), "7");
  }
}

TEST(Engine, BudgetExhaustionIsFlagged) {
  RunOptions opts;
  opts.budget = 3;
  const auto trace = run(parse_netlist(adder(500, 500)), opts);
  EXPECT_TRUE(trace.stats.budget_exhausted);
  EXPECT_EQ(result_of(trace, "sum"), "?");
}

TEST(Engine, ValueLimit) {
  RunOptions opts;
  opts.max_value = 100;
  EXPECT_THROW(run(parse_netlist(adder(500, 1)), opts), Error);
}

TEST(Engine, DuplicateMuxValuesFailTheRun) {
  const std::string text =
      "block a source value=4\nblock b source value=4\nblock m mux\n"
      "wire a.out m.in0\nwire b.out m.in1\nprobe m.out\n";
  try {
    run(parse_netlist(text));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SimulationError);
  }
}

TEST(Engine, EventsAreTotallyOrdered) {
  const auto trace = run(load_netlist(kGolden / "plex.net"));
  for (std::size_t i = 1; i < trace.events.size(); ++i) {
    ASSERT_LE(trace.events[i - 1].tick, trace.events[i].tick);
  }
  EXPECT_EQ(trace.stats.event_count, trace.events.size());
  EXPECT_EQ(trace.stats.total_ticks, trace.events.back().tick);
}

TEST(Engine, AddCostIsLinearWithSlopeTwo) {
  // Least-squares fit of cost against n for a + b with a = b = n.
  std::vector<double> xs, ys;
  for (long long n : {1, 10, 50, 100, 500, 1000}) {
    const auto trace = run(parse_netlist(adder(n, n)));
    const auto s = stats(trace);
    ASSERT_EQ(s.add_costs.size(), 1u);
    EXPECT_EQ(s.add_costs[0].operand_sum, 2 * n);
    EXPECT_EQ(s.add_costs[0].overhead, kDelimiterOverhead);
    xs.push_back(static_cast<double>(n));
    ys.push_back(s.add_costs[0].measured.convert_to<double>());
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(ys.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) sxy += (xs[i] - mx) * (ys[i] - my), sxx += (xs[i] - mx) * (xs[i] - mx);
  const double slope = sxy / sxx;
  EXPECT_NEAR(slope, 2.0, 1e-9);
  EXPECT_NEAR(my - slope * mx, 1.0, 1e-9);
}

TEST(Engine, SummaryPrintsOverhead) {
  std::ostringstream out;
  write_summary(stats(run(parse_netlist(adder(3, 4)))), out);
  EXPECT_NE(out.str().find("overhead"), std::string::npos);
}

TEST(Engine, BaseFrequencyIsCommonMultiple) {
  EXPECT_EQ(base_frequency({ClockRef("a", 2), ClockRef("b", 3)}), 6);
  EXPECT_EQ(base_frequency({ClockRef("a", Rational(1, 2)), ClockRef("b", Rational(1, 3))}), 1);
  EXPECT_EQ(base_frequency({ClockRef("a", Rational(3, 2))}), Rational(3, 2));
}

TEST(Engine, RandomNetlistsMatchOracle) {
  std::mt19937_64 rng(501);
  for (int trial = 0; trial < 200; ++trial) {
    const std::string text = temporal::testing::random_netlist(rng);
    const Netlist net = parse_netlist(text);
    ASSERT_TRUE(oracle_unsupported(net).empty()) << text;
    RunOptions opts;
    opts.budget = quiescence_bound(net);
    const auto trace = run(net, opts);
    ASSERT_FALSE(trace.stats.budget_exhausted) << text;
    ASSERT_EQ(trace.results, oracle_probe_values(net)) << text;
    ASSERT_LE(trace.stats.total_ticks, opts.budget) << text;
  }
}

TEST(Engine, RandomMultiClockNetlistsMatchOracle) {
  std::mt19937_64 rng(502);
  temporal::testing::RandomNetlistShape shape;
  shape.multi_clock = true;
  for (int trial = 0; trial < 100; ++trial) {
    const std::string text = temporal::testing::random_netlist(rng, shape);
    const Netlist net = parse_netlist(text);
    RunOptions opts;
    opts.budget = quiescence_bound(net);
    ASSERT_EQ(run(net, opts).results, oracle_probe_values(net)) << text;
  }
}

TEST(Engine, DeterministicAcrossRunsAndBatches) {
  std::mt19937_64 rng(503);
  std::vector<Netlist> nets;
  for (int i = 0; i < 40; ++i) nets.push_back(parse_netlist(temporal::testing::random_netlist(rng)));
  const auto parallel = run_batch(nets);
  const auto serial = run_batch_serial(nets);
  ASSERT_EQ(parallel.size(), nets.size());
  for (std::size_t i = 0; i < nets.size(); ++i) {
    EXPECT_EQ(csv_of(parallel[i]), csv_of(serial[i]));
    EXPECT_EQ(csv_of(run(nets[i])), csv_of(serial[i]));
  }
}

TEST(Engine, JitterIsSeedDeterministic) {
  const std::string text =
      "block x source value=9\nblock y convert\nwire x.out y.in0 jitter=1:6\nprobe y.out\n";
  const auto net = parse_netlist(text);
  RunOptions a, b;
  a.seed = b.seed = 1234;
  EXPECT_EQ(csv_of(run(net, a)), csv_of(run(net, b)));
}

TEST(TraceIo, CsvRoundTrip) {
  for (const char* name : {"add.net", "plex.net", "madd.net", "clocks.net", "unstable.net"}) {
    const auto trace = run(load_netlist(kGolden / name));
    std::istringstream in(csv_of(trace));
    const auto back = read_trace_csv(in);
    EXPECT_EQ(back, trace) << name;
  }
}

TEST(TraceIo, RejectsGarbage) {
  std::istringstream in("tick,block,port,role\nnot,a,row\n");
  try {
    read_trace_csv(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
  }
}

TEST(TraceIo, VcdHasHeaderAndResults) {
  std::ostringstream out;
  write_vcd(run(load_netlist(kGolden / "add.net")), out);
  const std::string vcd = out.str();
  EXPECT_NE(vcd.find("$enddefinitions"), std::string::npos);
  EXPECT_NE(vcd.find("sum=7"), std::string::npos);
}

TEST(Oracle, DemuxPortsBeyondTheValuesStayEmpty) {
  const std::string text =
      "block a source value=9\nblock b source value=2\nblock m mux\nblock d demux\nblock s add\n"
      "wire a.out m.in0\nwire b.out m.in1\nwire m.out d.in0\nwire d.out1 s.in0\nwire d.out2 s.in1\n"
      "probe d.out0\nprobe d.out2\nprobe s.out\n";
  const auto net = parse_netlist(text);
  const auto expected = oracle_probe_values(net);
  ASSERT_EQ(expected.size(), 3u);
  EXPECT_EQ(expected[0].value, "2");
  EXPECT_EQ(expected[1].value, "?");
  EXPECT_EQ(expected[2].value, "?");
  RunOptions opts;
  opts.budget = quiescence_bound(net);
  EXPECT_EQ(run(net, opts).results, expected);
}

TEST(Oracle, RejectsAccumulators) {
  const auto net = load_netlist(kGolden / "clocks.net");
  EXPECT_FALSE(oracle_unsupported(net).empty());
  EXPECT_THROW(oracle_probe_values(net), Error);
}
