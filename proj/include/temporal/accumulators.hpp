#pragma once

#include "temporal/core.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace temporal {

enum class AccumulatorModel { DigitalCounter, ToggleChain, AnalogIntegrator, PhotonCounter };

std::string_view to_string(AccumulatorModel model);
AccumulatorModel parse_accumulator_model(std::string_view text);

struct AccumulatorConfig {
  AccumulatorModel model = AccumulatorModel::DigitalCounter;
  unsigned chain_depth = 1;
  Rational rate = 1;
  Rational flux = 1;
  std::optional<std::uint64_t> noise_seed;

  /// Throws InvalidArgument on depth 0 or non-positive rate/flux.
  void validate() const;
};

/// Bits least-significant first.
struct BinaryWord {
  std::vector<std::uint8_t> bits;

  std::size_t width() const noexcept { return bits.size(); }
  Integer value() const;

  friend bool operator==(const BinaryWord&, const BinaryWord&) = default;
};

struct AnalogCharge {
  Rational charge;
  Integer value;  // floor(charge)
};

/// Counts whole reference periods elapsed between the start and end events.
Integer accumulate_digital(const IntervalValue& iv, const ClockRef& ref);

/// Cascade of divide-by-2 latches fed with pulse_count pulses. Wraps mod 2^depth.
BinaryWord toggle_chain(const Integer& pulse_count, unsigned depth);

/// True when pulse_count does not fit in the chain (the word has wrapped).
bool toggle_chain_overflows(const Integer& pulse_count, unsigned depth);

AnalogCharge accumulate_analog(const IntervalValue& iv, const ClockRef& ref, const Rational& rate);

/// Noiseless: floor(flux * measured). With a seed: Poisson draw with that mean.
Integer accumulate_photonic(const IntervalValue& iv, const ClockRef& ref, const Rational& flux,
                            std::optional<std::uint64_t> noise_seed = std::nullopt);

/// floor(value * to.frequency / from.frequency).
Integer convert_reference(const Integer& value, const ClockRef& from, const ClockRef& to);

struct AccumulatorReading {
  Integer value;
  bool overflow = false;
};

/// Dispatches on config.model.
AccumulatorReading accumulate(const AccumulatorConfig& config, const IntervalValue& iv, const ClockRef& ref);

}  // namespace temporal
