#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "gravidec/kernels.hpp"
#include "gravidec/matter.hpp"
#include "gravidec/units.hpp"

namespace gravidec {

/// Validity diagnostics; empty when the input needed to evaluate them was
/// not supplied.
struct RateFlags {
  std::optional<bool> high_T_ok;  ///< k_B T / (hbar rate) >= 10
  std::optional<bool> markov_ok;  ///< 1 / rate >= Markov time
  std::optional<bool> compton_ok;
};

struct RateResult {
  double rate = 0.0;       ///< s^-1
  double delta_E = 0.0;    ///< J
  double T = 0.0;          ///< K
  std::optional<double> markov_time;  ///< s
  RateFlags flags;
  double coherence_time = 0.0;  ///< s; +inf when rate == 0
};

/// Optional context used to fill the Markov and Compton flags.
struct RateContext {
  std::optional<double> markov_time_s;
  std::optional<bool> compton_ok;
};

/// Gamma = (k_B T / hbar) (dE / E_P)^2. Rejects T < 0.
RateResult decoherence_rate(double delta_E_J, double temperature_K,
                            const PhysicalConstants& constants = PhysicalConstants::codata2018(),
                            const RateContext& context = {});

/// The order-of-magnitude estimate that precedes the derivation; its
/// numerical factor turns out to be exactly one, so it equals decoherence_rate.
double dimensional_estimate(double delta_E_J, double temperature_K,
                            const PhysicalConstants& constants = PhysicalConstants::codata2018());

/// Decay constant (T / 2pi) (kappa/4)^2 (E_a - E_b)^2 of the interference
/// term of a two-ball superposition, evaluated in natural units and returned
/// in s^-1. Needs T > 0; validity failures are reported in the flags.
RateResult rate_from_balls(const BallSuperposition& sup, double temperature_K, const KernelParams& params,
                           const NaturalUnits& units = NaturalUnits::gev());

struct Scenario {
  std::string_view name;
  double delta_E_eV;
  double T_K;
  double paper_order;  ///< s^-1, order-of-magnitude claim
};

/// atom_1eV, gram_avogadro, kilogram: N atoms each with a 1 eV gap, all
/// jointly excited, against a 1 K graviton background.
std::span<const Scenario> scenario_presets();

struct ScenarioResult {
  Scenario scenario;
  RateResult result;
  bool within_order;  ///< |log10(rate / paper_order)| <= 1
};

/// Throws std::invalid_argument for an unknown name.
ScenarioResult scenario(std::string_view name,
                        const PhysicalConstants& constants = PhysicalConstants::codata2018());

}  // namespace gravidec
