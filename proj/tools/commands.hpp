#pragma once

#include "temporal/numeric.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace temporal::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitBudget = 2;
inline constexpr int kExitMismatch = 3;

struct RunCommand {
  std::filesystem::path netlist;
  std::optional<Integer> budget;
  std::optional<std::filesystem::path> trace_out;
  std::optional<std::filesystem::path> vcd_out;
  bool print_stats = false;
  std::uint64_t seed = 0;
};

struct CheckCommand {
  std::filesystem::path netlist;
  std::optional<Integer> budget;
  /// Test hook: adds 1 to the named block's output.
  std::optional<std::string> inject_off_by_one;
  std::uint64_t seed = 0;
};

struct EncodeCommand {
  std::string scheme;  // unary | pim | hybrid | mux | serial
  std::vector<std::string> values;
  unsigned base = 10;
};

struct BenchCommand {
  std::string op;  // add | mul | madd
  std::vector<Integer> sizes;
  std::optional<std::filesystem::path> out;
  Integer k = 1;
  Integer amplitude = 1;
};

struct ExportCommand {
  std::filesystem::path trace;
  std::string format;  // csv | vcd
  std::optional<std::filesystem::path> out;
};

struct BenchRow {
  Integer size;
  Integer ticks;
};

int cmd_run(const RunCommand& cmd, std::ostream& out, std::ostream& err);
int cmd_check(const CheckCommand& cmd, std::ostream& out, std::ostream& err);
int cmd_encode(const EncodeCommand& cmd, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchCommand& cmd, std::ostream& out, std::ostream& err);
int cmd_export(const ExportCommand& cmd, std::ostream& out, std::ostream& err);

/// Simulated tick cost of the benchmarked block for each size, in size order.
std::vector<BenchRow> bench_rows(const BenchCommand& cmd);

/// Parses argv and dispatches; returns the process exit code.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace temporal::cli
