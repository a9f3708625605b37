#include "temporal/accumulators.hpp"

#include <random>

namespace temporal {

std::string_view to_string(AccumulatorModel model) {
  switch (model) {
    case AccumulatorModel::DigitalCounter: return "digital";
    case AccumulatorModel::ToggleChain: return "toggle";
    case AccumulatorModel::AnalogIntegrator: return "analog";
    case AccumulatorModel::PhotonCounter: return "photon";
  }
  return "unknown";
}

AccumulatorModel parse_accumulator_model(std::string_view text) {
  if (text == "digital") return AccumulatorModel::DigitalCounter;
  if (text == "toggle") return AccumulatorModel::ToggleChain;
  if (text == "analog") return AccumulatorModel::AnalogIntegrator;
  if (text == "photon") return AccumulatorModel::PhotonCounter;
  throw Error(ErrorCode::InvalidArgument,
              "unknown accumulator model '" + std::string(text) + "' (digital|toggle|analog|photon)");
}

void AccumulatorConfig::validate() const {
  if (chain_depth < 1) throw Error(ErrorCode::InvalidArgument, "chain_depth must be >= 1");
  if (rate <= 0) throw Error(ErrorCode::InvalidArgument, "rate must be > 0");
  if (flux <= 0) throw Error(ErrorCode::InvalidArgument, "flux must be > 0");
}

Integer BinaryWord::value() const {
  Integer v = 0;
  for (auto it = bits.rbegin(); it != bits.rend(); ++it) {
    v <<= 1;
    v += *it;
  }
  return v;
}

Integer accumulate_digital(const IntervalValue& iv, const ClockRef& ref) {
  // Interval length and reference period as integers over a shared time unit:
  //   length = L * d_iv / n_iv,  period = d_ref / n_ref.
  const Integer length_units =
      iv.value() * denominator_of(iv.clock().frequency()) * numerator_of(ref.frequency());
  const Integer period_units = numerator_of(iv.clock().frequency()) * denominator_of(ref.frequency());
  return length_units / period_units;
}

BinaryWord toggle_chain(const Integer& pulse_count, unsigned depth) {
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "toggle chain depth must be >= 1");
  if (pulse_count < 0) throw Error(ErrorCode::InvalidArgument, "pulse count must be non-negative");
  BinaryWord word;
  word.bits.reserve(depth);
  Integer stage_input = pulse_count;
  for (unsigned stage = 0; stage < depth; ++stage) {
    // A latch starting low ends high after an odd number of input pulses and
    // forwards one pulse per completed high-low cycle.
    word.bits.push_back(boost::multiprecision::bit_test(stage_input, 0) ? 1 : 0);
    stage_input >>= 1;
  }
  return word;
}

bool toggle_chain_overflows(const Integer& pulse_count, unsigned depth) {
  return (pulse_count >> depth) != 0;
}

AnalogCharge accumulate_analog(const IntervalValue& iv, const ClockRef& ref, const Rational& rate) {
  if (rate <= 0) throw Error(ErrorCode::InvalidArgument, "charging rate must be > 0");
  Rational charge = rate * Rational(measure_interval(iv, ref));
  Integer value = floor_of(charge);
  return AnalogCharge{std::move(charge), std::move(value)};
}

Integer accumulate_photonic(const IntervalValue& iv, const ClockRef& ref, const Rational& flux,
                            std::optional<std::uint64_t> noise_seed) {
  if (flux <= 0) throw Error(ErrorCode::InvalidArgument, "photon flux must be > 0");
  const Rational mean = flux * Rational(measure_interval(iv, ref));
  if (!noise_seed) return floor_of(mean);
  if (mean == 0) return 0;
  std::mt19937_64 generator(*noise_seed);
  std::poisson_distribution<long long> photons(mean.convert_to<double>());
  return Integer(photons(generator));
}

Integer convert_reference(const Integer& value, const ClockRef& from, const ClockRef& to) {
  if (value < 0) throw Error(ErrorCode::InvalidArgument, "value must be non-negative");
  if (from.frequency() == to.frequency()) return value;
  return floor_of(Rational(value) * ratio(from, to));
}

AccumulatorReading accumulate(const AccumulatorConfig& config, const IntervalValue& iv, const ClockRef& ref) {
  config.validate();
  switch (config.model) {
    case AccumulatorModel::DigitalCounter:
      return {accumulate_digital(iv, ref), false};
    case AccumulatorModel::ToggleChain: {
      const Integer pulses = accumulate_digital(iv, ref);
      return {toggle_chain(pulses, config.chain_depth).value(), toggle_chain_overflows(pulses, config.chain_depth)};
    }
    case AccumulatorModel::AnalogIntegrator:
      return {accumulate_analog(iv, ref, config.rate).value, false};
    case AccumulatorModel::PhotonCounter:
      return {accumulate_photonic(iv, ref, config.flux, config.noise_seed), false};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown accumulator model");
}

}  // namespace temporal
