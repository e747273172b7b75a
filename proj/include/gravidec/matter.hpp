#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "gravidec/units.hpp"

namespace gravidec {

using Vec3 = std::array<double, 3>;

/// Minimum R m for the rest-energy-dominated, non-relativistic regime.
inline constexpr double kComptonRatio = 100.0;

/// Static Gaussian field profile phi0 exp(-|r - r0|^2 / 2R^2) of a scalar
/// field with mass m. Natural units: lengths and 1/m share one unit.
class GaussianBall {
 public:
  GaussianBall(double phi0, Vec3 r0, double radius, double mass);

  double phi0() const { return phi0_; }
  const Vec3& center() const { return r0_; }
  double radius() const { return radius_; }
  double mass() const { return mass_; }

  /// R m >= 100, i.e. R well above the reduced Compton wavelength.
  bool compton_ok() const { return radius_ * mass_ >= kComptonRatio; }

  GaussianBall translated(const Vec3& shift) const;

 private:
  double phi0_;
  Vec3 r0_;
  double radius_;
  double mass_;
};

/// Two balls of the same field species.
class BallSuperposition {
 public:
  BallSuperposition(GaussianBall a, GaussianBall b);

  const GaussianBall& a() const { return a_; }
  const GaussianBall& b() const { return b_; }

 private:
  GaussianBall a_;
  GaussianBall b_;
};

double field_expectation(const GaussianBall& ball, const Vec3& r);

/// Expectation of the conjugate momentum field; the balls are stationary.
inline double field_rate_expectation(const GaussianBall&, const Vec3&) { return 0.0; }

/// alpha(k) = phi0 R^3 sqrt(w_m(k) / 2) exp(-i k.r0 - (kR)^2 / 2), w_m = sqrt(m^2 + k^2).
std::complex<double> coherent_amplitude(const GaussianBall& ball, const Vec3& k);

/// T00 ~ m^2 <phi>^2 / 2.
double energy_density(const GaussianBall& ball, const Vec3& r);

/// int d^3r m^2 <phi>^2 / 2 = m^2 phi0^2 pi^{3/2} R^3 / 2.
double rest_energy(const GaussianBall& ball);

/// rest_energy in joules for balls expressed in `units`.
double rest_energy_si(const GaussianBall& ball, const NaturalUnits& units);

/// The same integral by nested adaptive quadrature over r0 +- 10R.
double rest_energy_quadrature(const GaussianBall& ball, double rel_tol = 1e-12);

/// Throws std::runtime_error if closed form and quadrature differ by more
/// than 1e-8 relative; returns the closed form.
double checked_rest_energy(const GaussianBall& ball);

/// 10 max(|r0_a - r0_b|, R_a, R_b), in the balls' length unit (c = 1).
double markov_time(const BallSuperposition& sup);
double markov_time_si(const BallSuperposition& sup, const NaturalUnits& units);

/// Field configuration sampled on a uniform Cartesian grid.
struct FieldGrid {
  Vec3 origin{};                  ///< position of sample (0, 0, 0)
  double spacing = 1.0;
  std::array<std::size_t, 3> shape{};
  std::vector<double> values;     ///< x fastest, then y, then z

  std::size_t size() const { return shape[0] * shape[1] * shape[2]; }
  Vec3 position(std::size_t i, std::size_t j, std::size_t k) const;
  double& at(std::size_t i, std::size_t j, std::size_t k) { return values[(k * shape[1] + j) * shape[0] + i]; }
  double at(std::size_t i, std::size_t j, std::size_t k) const {
    return values[(k * shape[1] + j) * shape[0] + i];
  }

  /// Grid of `half_width` on each side of `center` with the given spacing,
  /// zero-filled.
  static FieldGrid centered(const Vec3& center, double half_width, double spacing);
  /// Samples the ball's expectation profile on this grid's points.
  static FieldGrid sample(const GaussianBall& ball, const FieldGrid& layout);
};

/// -(m/2) int d^3r (phi(r) - <phi(r)>)^2 over the grid (log of the Gaussian
/// field-coordinate wavefunctional, up to normalisation). Requires the grid
/// to extend 6R beyond r0 on every side with spacing <= R/8, and R m >= 100.
double coordinate_wavefunctional_exponent(const GaussianBall& ball, const FieldGrid& config);

}  // namespace gravidec
