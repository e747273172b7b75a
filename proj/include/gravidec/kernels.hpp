#pragma once

#include <cstddef>
#include <string_view>

#include "gravidec/units.hpp"

namespace gravidec {

/// Parameters of the graviton noise and dissipation kernels, in natural
/// units (hbar = c = k_B = 1).
struct KernelParams {
  double kappa = 4.0;          ///< sqrt(32 pi G)
  double temperature = 0.0;    ///< energy
  double epsilon = 1e-3;       ///< UV regulator, length
  double tol = 1e-10;          ///< absolute tolerance, relative once |value| > 1
  std::size_t n_terms = 1u << 22;  ///< cap on explicit thermal-series terms

  void validate() const;

  /// kappa from G in the given natural units; T and epsilon converted from SI.
  static KernelParams from_constants(const NaturalUnits& units, double temperature_K, double epsilon_m,
                                     double tol = 1e-10);
};

enum class KernelMethod { closed_form, series, quadrature };

std::string_view to_string(KernelMethod method);

struct KernelValue {
  double value = 0.0;
  double err_estimate = 0.0;
  KernelMethod method = KernelMethod::closed_form;
  /// Only meaningful for time-integrated values: false when t_max is too
  /// short for the long-time, high-temperature limit.
  bool limit_regime = true;
};

/// Vacuum ("1") and thermal ("2 n(k)") parts of a kernel evaluation.
struct KernelParts {
  KernelValue vacuum;
  KernelValue thermal;
  KernelValue total;
};

/// N(r, t) = (kappa/4)^2 int d^3k/(2pi)^3 e^{ik.r} cos(kt) [1 + 2 n(k)] / k,
/// regulated by e^{-epsilon k}. r >= 0; r = 0 is the limiting value.
/// Throws ConvergenceError if the thermal series misses its tolerance.
KernelValue noise_kernel(double r, double t, const KernelParams& params);
KernelParts noise_kernel_parts(double r, double t, const KernelParams& params);

/// D(r, t) = (kappa/4)^2 int d^3k/(2pi)^3 e^{ik.r} sin(kt) / k, regulated by
/// e^{-epsilon k}. r > 0.
KernelValue dissipation_kernel(double r, double t, const KernelParams& params);

/// int_0^{t_max} N(r, tau) dtau. Tends to (kappa/4)^2 T / (2 pi) for
/// T t_max >> 1 and t_max >> r; `limit_regime` reports whether
/// t_max >= 100 max(r, 1/T).
KernelValue time_integrated_noise(double r, double t_max, const KernelParams& params);
KernelParts time_integrated_noise_parts(double r, double t_max, const KernelParams& params);

/// (kappa/4)^2 T / (2 pi): the long-time value of time_integrated_noise.
double markov_noise_limit(const KernelParams& params);

}  // namespace gravidec
