#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gravidec/bath.hpp"
#include "gravidec/units.hpp"

namespace gravidec {

/// Default Fock truncation: levels 0..16.
inline constexpr std::size_t kDefaultMaxLevel = 16;

/// Population above which the top two retained levels flag a truncation risk.
inline constexpr double kTailMassThreshold = 1e-8;

/// Prefactor `a` in the finite-time dephasing exponent
///   Lambda(t) = a (dn)^2 int_0^inf dw j(w) (w0/w)^2 coth(hbar w / 2 k_B T) (1 - cos w t).
/// Pinned against the time-local generator: with the bath normalisation
/// J / (hbar w0)^2 = pi sum_i lambda_i^2 delta(w - w_i), the generator's bath
/// correlation carries 1/pi, and the long-time rate becomes C k_B T / hbar (dn)^2
/// with unit prefactor. tests/test_dephasing.cpp locks this value.
inline constexpr double kDephasingConvention = 0.31830988618379067154;  // 1 / pi

/// Truncated number-basis density matrix.
class FockDensityMatrix {
 public:
  using Matrix = Eigen::MatrixXcd;

  struct Diagnostics {
    double hermiticity_error;  ///< max |rho_ij - conj(rho_ji)|
    double trace_error;        ///< |Tr rho - 1|
    double min_eigenvalue;
  };

  /// Validates hermiticity and trace to `tol` and positivity to -1e-10.
  explicit FockDensityMatrix(Matrix entries, double tol = 1e-12);

  /// Skips validation; for propagators that preserve the invariants.
  static FockDensityMatrix unchecked(Matrix entries);

  /// |psi><psi| for psi = sum_k c_k |n_k>, normalised. Levels must be < dim.
  static FockDensityMatrix from_superposition(
      const std::vector<std::pair<std::size_t, std::complex<double>>>& terms,
      std::size_t dim = kDefaultMaxLevel + 1);
  static FockDensityMatrix from_populations(std::span<const double> populations);
  static FockDensityMatrix maximally_mixed(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  std::size_t max_level() const { return dim() - 1; }
  const Matrix& entries() const { return entries_; }
  std::complex<double> operator()(std::size_t n, std::size_t ntilde) const { return entries_(n, ntilde); }

  Diagnostics diagnostics() const;

  /// Sum of populations in the two highest retained levels.
  double tail_mass() const;
  bool truncation_risk() const { return tail_mass() > kTailMassThreshold; }

 private:
  struct NoCheck {};
  FockDensityMatrix(Matrix entries, NoCheck) : entries_(std::move(entries)) {}
  Matrix entries_;
};

/// Tr(rho^2).
double purity(const FockDensityMatrix& rho);

/// System oscillator coupled through its number operator to an Ohmic bath.
class DephasingRun {
 public:
  /// The system frequency defaults to the bath's reference frequency.
  DephasingRun(OhmicBath bath, double temperature_K, std::vector<double> t_grid,
               const PhysicalConstants& constants = PhysicalConstants::codata2018());
  DephasingRun(OhmicBath bath, double temperature_K, double omega0, std::vector<double> t_grid,
               const PhysicalConstants& constants = PhysicalConstants::codata2018());

  const OhmicBath& bath() const { return bath_; }
  double temperature_K() const { return temperature_; }
  double omega0() const { return omega0_; }
  const std::vector<double>& t_grid() const { return t_grid_; }
  const PhysicalConstants& constants() const { return constants_; }

  /// k_B T >= 10 hbar w0.
  bool high_temperature() const;
  /// k_B T / hbar.
  double thermal_rate() const;
  /// C (k_B T / hbar) (dn)^2, the Markovian decay rate of rho_{n, n+dn}.
  double markov_rate(long delta_n) const;

  /// Exponential cutoff used for finite-time quantities: the bath's own
  /// cutoff, or 2 pi k_B T / hbar when the bath has none. Throws
  /// std::invalid_argument for a cutoff-free bath at T = 0.
  double regulator_cutoff() const;

  /// Coefficients of the time-local generator
  ///   d rho_{n m} / dt = -[gamma(t) (n - m)^2 + i phi(t) (n^2 - m^2)] rho_{n m}
  /// in the interaction picture.
  double generator_decay(double t) const;
  double generator_shift(double t) const;

 private:
  OhmicBath bath_;
  double temperature_;
  double omega0_;
  std::vector<double> t_grid_;
  PhysicalConstants constants_;
};

/// Markovian dephasing: multiplies rho_{n m} by
/// exp(-C (k_B T / hbar) (n - m)^2 t - i w0 (n - m) t). Diagonals are untouched.
FockDensityMatrix analytic_propagate(const FockDensityMatrix& rho0, const DephasingRun& run, double t);

/// Finite-time exponent Lambda(t) of |rho_{n, n + dn}(t)| / |rho_{n, n + dn}(0)|,
/// computed by quadrature with the run's regulator cutoff. Throws
/// ConvergenceError if the tolerance 1e-10 max(1, Lambda) is not met.
double exact_dephasing_exponent(const DephasingRun& run, long delta_n, double t);

struct Trajectory {
  std::vector<double> times;
  std::vector<FockDensityMatrix> states;
  std::vector<std::string> warnings;
};

struct IntegratorOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  std::size_t max_steps_per_interval = 200000;
};

/// Thrown when the adaptive integrator cannot reach its tolerance.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integrates the time-local generator over the run's time grid with an
/// adaptive Dormand-Prince stepper.
Trajectory numeric_propagate(const FockDensityMatrix& rho0, const DephasingRun& run,
                             const IntegratorOptions& options = {});

/// Least-squares decay rate of `magnitude` over the last decade of `times`
/// (t >= t_max / 10). Needs at least two usable points with magnitude > 0.
double fit_decay_rate(std::span<const double> times, std::span<const double> magnitude);

/// Evenly spaced grid of `steps` intervals on [0, t_max] (steps + 1 points).
std::vector<double> uniform_grid(double t_max, std::size_t steps);

}  // namespace gravidec
