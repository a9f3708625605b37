#include "temporal/kernels.hpp"

namespace temporal {

namespace kernels {

std::vector<Integer> madd_batch(std::span<const MultiValentTrain> trains) {
  std::vector<Integer> out(trains.size());
  parallel_for(trains.size(), [&](std::size_t i) { out[i] = madd(trains[i]); });
  return out;
}

std::vector<BinaryWord> toggle_batch(std::span<const Integer> pulse_counts, unsigned depth) {
  std::vector<BinaryWord> out(pulse_counts.size());
  parallel_for(pulse_counts.size(), [&](std::size_t i) { out[i] = toggle_chain(pulse_counts[i], depth); });
  return out;
}

std::vector<Integer> measure_batch(std::span<const IntervalValue> intervals, const ClockRef& ref) {
  std::vector<Integer> out(intervals.size());
  parallel_for(intervals.size(), [&](std::size_t i) { out[i] = measure_interval(intervals[i], ref); });
  return out;
}

std::vector<Integer> accumulate_batch(const AccumulatorConfig& config, std::span<const IntervalValue> intervals,
                                      const ClockRef& ref) {
  std::vector<Integer> out(intervals.size());
  parallel_for(intervals.size(), [&](std::size_t i) { out[i] = accumulate(config, intervals[i], ref).value; });
  return out;
}

std::vector<Integer> convert_batch(std::span<const Integer> values, const ClockRef& from, const ClockRef& to) {
  std::vector<Integer> out(values.size());
  parallel_for(values.size(), [&](std::size_t i) { out[i] = convert_reference(values[i], from, to); });
  return out;
}

}  // namespace kernels

namespace serial {

Integer madd_tickwise(const MultiValentTrain& train) {
  if (train.empty()) return 0;
  Integer running = 0;
  Integer accumulator = 0;
  for (Integer t = madd_sweep_ticks(train); t >= 1; --t) {
    running += train.amplitude(Tick(t));
    accumulator += running;
  }
  return accumulator;
}

BinaryWord toggle_pulsewise(const Integer& pulse_count, unsigned depth) {
  BinaryWord word;
  word.bits.assign(depth, 0);
  for (Integer n = 0; n < pulse_count; ++n) {
    for (unsigned stage = 0; stage < depth; ++stage) {
      word.bits[stage] ^= 1U;
      if (word.bits[stage] == 1) break;  // rising edge: no pulse forwarded
    }
  }
  return word;
}

std::vector<Integer> madd_batch(std::span<const MultiValentTrain> trains) {
  std::vector<Integer> out;
  out.reserve(trains.size());
  for (const auto& t : trains) out.push_back(madd_tickwise(t));
  return out;
}

std::vector<BinaryWord> toggle_batch(std::span<const Integer> pulse_counts, unsigned depth) {
  std::vector<BinaryWord> out;
  out.reserve(pulse_counts.size());
  for (const auto& n : pulse_counts) out.push_back(toggle_pulsewise(n, depth));
  return out;
}

std::vector<Integer> measure_batch(std::span<const IntervalValue> intervals, const ClockRef& ref) {
  std::vector<Integer> out;
  out.reserve(intervals.size());
  for (const auto& iv : intervals) out.push_back(measure_interval(iv, ref));
  return out;
}

std::vector<Integer> accumulate_batch(const AccumulatorConfig& config, std::span<const IntervalValue> intervals,
                                      const ClockRef& ref) {
  std::vector<Integer> out;
  out.reserve(intervals.size());
  for (const auto& iv : intervals) out.push_back(accumulate(config, iv, ref).value);
  return out;
}

std::vector<Integer> convert_batch(std::span<const Integer> values, const ClockRef& from, const ClockRef& to) {
  std::vector<Integer> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(convert_reference(v, from, to));
  return out;
}

}  // namespace serial

}  // namespace temporal
