#include "gravidec/bath.hpp"

#include <cmath>
#include <stdexcept>

namespace gravidec {

OhmicBath::OhmicBath(double coupling, double omega0, std::optional<double> cutoff)
    : coupling_(coupling), omega0_(omega0), cutoff_(cutoff) {
  if (!(coupling >= 0.0) || !std::isfinite(coupling)) {
    throw std::invalid_argument("bath coupling C must be finite and >= 0");
  }
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
    throw std::invalid_argument("reference frequency omega0 must be > 0");
  }
  if (cutoff && !(*cutoff > 0.0)) {
    throw std::invalid_argument("cutoff frequency must be > 0");
  }
}

double spectral_density(const OhmicBath& bath, double omega) {
  if (!(omega >= 0.0)) throw std::invalid_argument("spectral density needs omega >= 0");
  double j = bath.coupling() * omega / (bath.omega0() * bath.omega0());
  if (bath.cutoff()) j *= std::exp(-omega / *bath.cutoff());
  return j;
}

double bose_occupation_reduced(double x) {
  if (!(x > 0.0)) throw std::domain_error("Bose occupation diverges at hbar w / k_B T = 0");
  return 1.0 / std::expm1(x);
}

double thermal_factor_reduced(double x) {
  if (!(x > 0.0)) throw std::domain_error("coth(x/2) diverges at x = 0");
  return 1.0 + 2.0 / std::expm1(x);
}

double bose_occupation(double omega, double temperature_K, const PhysicalConstants& constants) {
  if (!(omega >= 0.0)) throw std::invalid_argument("Bose occupation needs omega >= 0");
  if (!(temperature_K >= 0.0)) throw std::invalid_argument("temperature must be non-negative");
  if (temperature_K == 0.0) return 0.0;
  if (omega == 0.0) {
    throw std::domain_error("Bose occupation diverges at omega = 0 for T > 0");
  }
  return bose_occupation_reduced(constants.hbar * omega / (constants.k_B * temperature_K));
}

}  // namespace gravidec
