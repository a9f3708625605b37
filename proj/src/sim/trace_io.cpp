#include "temporal/sim/trace_io.hpp"

#include <map>
#include <sstream>
#include <string>

namespace temporal::sim {
namespace {

std::string role_text(const TraceEvent& e) {
  std::string text(to_string(e.role));
  if (e.amplitude != 1) text += "*" + e.amplitude.str();
  return text;
}

[[noreturn]] void bad_line(std::size_t line_no, const std::string& why) {
  throw Error(ErrorCode::ParseError, "trace line " + std::to_string(line_no) + ": " + why);
}

EventRole parse_role(std::string_view text, std::size_t line_no) {
  if (text == "start") return EventRole::Start;
  if (text == "pulse") return EventRole::Pulse;
  if (text == "end") return EventRole::End;
  bad_line(line_no, "unknown role '" + std::string(text) + "'");
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream is(line);
  while (std::getline(is, part, sep)) parts.push_back(part);
  if (!line.empty() && line.back() == sep) parts.emplace_back();
  return parts;
}

std::string vcd_identifier(std::size_t index) {
  std::string id;
  do {
    id.push_back(static_cast<char>('!' + index % 94));
    index /= 94;
  } while (index != 0);
  return id;
}

std::string binary(const Integer& v) {
  if (v == 0) return "0";
  std::string bits;
  for (Integer x = v; x != 0; x >>= 1) bits.push_back(boost::multiprecision::bit_test(x, 0) ? '1' : '0');
  return {bits.rbegin(), bits.rend()};
}

}  // namespace

void write_trace_csv(const Trace& trace, std::ostream& out) {
  out << "tick,block,port,role\n";
  for (const auto& e : trace.events) {
    out << e.tick << ',' << e.block << ',' << e.port << ',' << role_text(e) << '\n';
  }
  for (const auto& r : trace.results) out << "# result " << r.label << '=' << r.value << '\n';
  const auto& s = trace.stats;
  out << "# stat total_ticks=" << s.total_ticks << '\n';
  out << "# stat events=" << s.event_count << '\n';
  out << "# stat base_frequency=" << temporal::to_string(s.base_frequency) << '\n';
  for (const auto& c : s.block_costs) {
    out << "# stat cost " << c.block << ' ' << c.kind << '=' << c.cost;
    if (c.linear_model) out << " linear=" << *c.linear_model;
    out << '\n';
  }
  for (const auto& f : s.overflow_flags) out << "# flag overflow " << f << '\n';
  for (const auto& v : s.stability_violations) out << "# flag unstable " << v << '\n';
  if (s.budget_exhausted) out << "# flag budget_exhausted\n";
}

Trace read_trace_csv(std::istream& in) {
  Trace trace;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line) || line != "tick,block,port,role") {
    bad_line(1, "expected header 'tick,block,port,role'");
  }
  ++line_no;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.starts_with("# result ")) {
      const std::string body = line.substr(9);
      const auto eq = body.rfind('=');
      if (eq == std::string::npos) bad_line(line_no, "result without '='");
      trace.results.push_back({body.substr(0, eq), body.substr(eq + 1)});
    } else if (line.starts_with("# stat cost ")) {
      std::istringstream is(line.substr(12));
      std::string block, kind_cost, linear;
      is >> block >> kind_cost >> linear;
      const auto eq = kind_cost.find('=');
      if (block.empty() || eq == std::string::npos) bad_line(line_no, "malformed cost line");
      BlockCost cost{block, kind_cost.substr(0, eq), parse_natural(kind_cost.substr(eq + 1)), std::nullopt};
      if (linear.starts_with("linear=")) cost.linear_model = parse_natural(linear.substr(7));
      trace.stats.block_costs.push_back(std::move(cost));
    } else if (line.starts_with("# stat ")) {
      const std::string body = line.substr(7);
      const auto eq = body.find('=');
      if (eq == std::string::npos) bad_line(line_no, "stat without '='");
      const std::string key = body.substr(0, eq);
      const std::string value = body.substr(eq + 1);
      if (key == "total_ticks") {
        trace.stats.total_ticks = parse_natural(value);
      } else if (key == "events") {
        trace.stats.event_count = parse_natural(value).convert_to<std::size_t>();
      } else if (key == "base_frequency") {
        trace.stats.base_frequency = parse_rational(value);
      } else {
        bad_line(line_no, "unknown stat '" + key + "'");
      }
    } else if (line.starts_with("# flag overflow ")) {
      trace.stats.overflow_flags.push_back(line.substr(16));
    } else if (line.starts_with("# flag unstable ")) {
      trace.stats.stability_violations.push_back(line.substr(16));
    } else if (line == "# flag budget_exhausted") {
      trace.stats.budget_exhausted = true;
    } else {
      const auto fields = split(line, ',');
      if (fields.size() != 4) bad_line(line_no, "expected 4 comma-separated fields");
      TraceEvent e;
      try {
        e.tick = parse_natural(fields[0]);
        const auto star = fields[3].find('*');
        e.role = parse_role(std::string_view(fields[3]).substr(0, star), line_no);
        if (star != std::string::npos) e.amplitude = parse_natural(fields[3].substr(star + 1));
      } catch (const Error& err) {
        bad_line(line_no, err.what());
      }
      e.block = fields[1];
      e.port = fields[2];
      trace.events.push_back(std::move(e));
    }
  }
  return trace;
}

void write_vcd(const Trace& trace, std::ostream& out) {
  std::map<std::pair<std::string, std::string>, std::string> ids;
  for (const auto& e : trace.events) ids.emplace(std::make_pair(e.block, e.port), "");
  std::size_t next = 0;
  for (auto& [key, id] : ids) id = vcd_identifier(next++);

  std::map<Integer, std::map<std::string, Integer>> changes;
  for (const auto& e : trace.events) changes[e.tick][ids.at({e.block, e.port})] += e.amplitude;
  std::map<Integer, std::map<std::string, Integer>> resets;
  for (const auto& [tick, values] : changes) {
    const auto following = changes.find(tick + 1);
    for (const auto& [id, v] : values) {
      if (following == changes.end() || !following->second.contains(id)) resets[tick + 1][id] = 0;
    }
  }
  for (auto& [tick, values] : resets) {
    auto& slot = changes[tick];
    for (const auto& [id, v] : values) slot.emplace(id, v);
  }

  out << "$version temporal-sim $end\n";
  out << "$comment one time unit is one base tick; base_frequency=" << temporal::to_string(trace.stats.base_frequency)
      << " $end\n";
  out << "$timescale 1 ns $end\n";
  out << "$scope module netlist $end\n";
  for (const auto& [key, id] : ids) {
    out << "$var integer 64 " << id << ' ' << key.first << '.' << key.second << " $end\n";
  }
  out << "$upscope $end\n";
  out << "$enddefinitions $end\n";
  out << "$dumpvars\n";
  for (const auto& [key, id] : ids) out << "b0 " << id << '\n';
  out << "$end\n";
  for (const auto& [tick, values] : changes) {
    out << '#' << tick << '\n';
    for (const auto& [id, v] : values) out << 'b' << binary(v) << ' ' << id << '\n';
  }
  for (const auto& r : trace.results) out << "$comment " << r.label << '=' << r.value << " $end\n";
}

}  // namespace temporal::sim
