#include "gravidec/decoherence.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gravidec {

namespace {

constexpr std::array<Scenario, 3> kScenarios{{
    {"atom_1eV", 1.0, 1.0, 1e-45},
    {"gram_avogadro", kAvogadro, 1.0, 1e2},
    {"kilogram", kAvogadro * 1e3, 1.0, 1e8},
}};

void fill_derived(RateResult& r, const PhysicalConstants& k, const RateContext& context) {
  r.coherence_time = r.rate > 0.0 ? 1.0 / r.rate : std::numeric_limits<double>::infinity();
  if (r.T > 0.0) {
    // k_B T t >> hbar at t = 1 / rate, with a factor 10 margin.
    r.flags.high_T_ok = r.rate == 0.0 || k.k_B * r.T / (k.hbar * r.rate) >= 10.0;
  } else {
    r.flags.high_T_ok = false;
  }
  r.markov_time = context.markov_time_s;
  if (context.markov_time_s) r.flags.markov_ok = r.coherence_time >= *context.markov_time_s;
  r.flags.compton_ok = context.compton_ok;
}

}  // namespace

RateResult decoherence_rate(double delta_E_J, double temperature_K, const PhysicalConstants& constants,
                            const RateContext& context) {
  constants.validate();
  if (!std::isfinite(delta_E_J)) throw std::invalid_argument("energy gap must be finite");
  const double ratio = delta_E_J / planck_energy(constants);
  RateResult r;
  r.rate = thermal_rate_scale(temperature_K, constants) * ratio * ratio;
  r.delta_E = delta_E_J;
  r.T = temperature_K;
  fill_derived(r, constants, context);
  return r;
}

double dimensional_estimate(double delta_E_J, double temperature_K, const PhysicalConstants& constants) {
  return decoherence_rate(delta_E_J, temperature_K, constants).rate;
}

RateResult rate_from_balls(const BallSuperposition& sup, double temperature_K, const KernelParams& params,
                           const NaturalUnits& units) {
  params.validate();
  if (!(temperature_K > 0.0)) throw std::invalid_argument("rate from balls needs T > 0");
  const double delta_E = rest_energy(sup.a()) - rest_energy(sup.b());
  const double T = units.temperature_from_si(temperature_K);
  const double k4 = params.kappa / 4.0;
  const double rate = T / (2.0 * std::numbers::pi) * k4 * k4 * delta_E * delta_E;

  RateResult r;
  r.rate = units.rate_to_si(rate);
  r.delta_E = units.energy_to_si(delta_E);
  r.T = temperature_K;
  fill_derived(r, units.constants(),
               {markov_time_si(sup, units), sup.a().compton_ok() && sup.b().compton_ok()});
  return r;
}

std::span<const Scenario> scenario_presets() { return kScenarios; }

ScenarioResult scenario(std::string_view name, const PhysicalConstants& constants) {
  for (const Scenario& s : kScenarios) {
    if (s.name != name) continue;
    ScenarioResult out{s, decoherence_rate(s.delta_E_eV * constants.eV, s.T_K, constants), false};
    out.within_order = std::abs(std::log10(out.result.rate / s.paper_order)) <= 1.0;
    return out;
  }
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

}  // namespace gravidec
