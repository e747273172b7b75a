#pragma once

#include <optional>

#include "gravidec/units.hpp"

namespace gravidec {

/// Ohmic bath j(w) = J(w) / (hbar w0)^2 = C w / w0^2, optionally damped by
/// exp(-w / w_c).
class OhmicBath {
 public:
  OhmicBath(double coupling, double omega0, std::optional<double> cutoff = std::nullopt);

  double coupling() const { return coupling_; }
  double omega0() const { return omega0_; }
  const std::optional<double>& cutoff() const { return cutoff_; }

 private:
  double coupling_;
  double omega0_;
  std::optional<double> cutoff_;
};

/// Dimensionless j(w). Rejects w < 0.
double spectral_density(const OhmicBath& bath, double omega);

/// Bose-Einstein occupation 1 / (exp(hbar w / k_B T) - 1).
///
/// Returns 0 at T = 0. Throws std::domain_error for w = 0 at T > 0 (the
/// occupation diverges; integrate across w -> 0 analytically instead) and
/// std::invalid_argument for negative arguments.
double bose_occupation(double omega, double temperature_K,
                       const PhysicalConstants& constants = PhysicalConstants::codata2018());

/// Same, with x = hbar w / k_B T already formed. x must be > 0.
double bose_occupation_reduced(double x);

/// coth(x / 2) = 1 + 2 n, stable for small and large x > 0.
double thermal_factor_reduced(double x);

}  // namespace gravidec
