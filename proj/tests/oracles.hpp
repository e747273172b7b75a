#pragma once

// Brute-force reference values built on Boost.Math quadrature. They share no
// code with the library and trade speed for directness.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

struct Value {
  double value = 0.0;
  double error = 0.0;
};

// int_0^upper f(x) dx summed over chunks of width `width`; each chunk is
// adaptive Gauss-Kronrod 61.
inline Value chunked(const std::function<double(double)>& f, double width, double upper) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  Value out;
  for (double a = 0.0; a < upper; a += width) {
    const double b = std::min(a + width, upper);
    double err = 0.0;
    out.value += GK::integrate(f, a, b, 8, 1e-13, &err);
    out.error += err;
  }
  out.error += 1e-15 * std::abs(out.value);
  return out;
}

inline double thermal_factor(double k, double T) {
  if (T == 0.0) return 1.0;
  return 1.0 + 2.0 / std::expm1(k / T);
}

inline double kernel_prefactor(double kappa) {
  return (kappa / 4.0) * (kappa / 4.0) / (2.0 * std::numbers::pi * std::numbers::pi);
}

// Upper wavenumber where e^{-eps k} drops below 1e-19 of its start.
inline double k_max(double eps) { return 44.0 / eps; }

inline double chunk_width(double r, double t, double eps) {
  return std::min({std::numbers::pi / (r + std::abs(t) + 1e-300), 0.5 / eps, 1.0});
}

// N(r, t) by radial quadrature: pref/r int e^{-eps k} sin(kr) cos(kt) (1 + 2n(k)) dk.
inline Value noise(double r, double t, double T, double eps, double kappa) {
  const double pref = kernel_prefactor(kappa);
  auto f = [&](double k) {
    const double radial = r > 0.0 ? std::sin(k * r) / r : k;
    return std::exp(-eps * k) * radial * std::cos(k * t) * thermal_factor(k, T);
  };
  Value v = chunked(f, chunk_width(r, t, eps), k_max(eps));
  return {pref * v.value, pref * v.error};
}

// D(r, t): pref/r int e^{-eps k} sin(kr) sin(kt) dk.
inline Value dissipation(double r, double t, double eps, double kappa) {
  const double pref = kernel_prefactor(kappa);
  auto f = [&](double k) { return std::exp(-eps * k) * std::sin(k * r) / r * std::sin(k * t); };
  Value v = chunked(f, chunk_width(r, t, eps), k_max(eps));
  return {pref * v.value, pref * v.error};
}

// int_0^{t_max} N(r, tau) dtau = pref/r int e^{-eps k} sin(kr) sin(k t_max) / k (1 + 2n) dk.
inline Value integrated_noise(double r, double t_max, double T, double eps, double kappa) {
  const double pref = kernel_prefactor(kappa);
  auto f = [&](double k) {
    const double s = k == 0.0 ? t_max : std::sin(k * t_max) / k;
    return std::exp(-eps * k) * std::sin(k * r) / r * s * thermal_factor(k, T);
  };
  Value v = chunked(f, chunk_width(r, t_max, eps), k_max(eps));
  return {pref * v.value, pref * v.error};
}

// (C/pi) dn^2 int_0^inf e^{-w/wc} coth(w / 2 theta) 2 sin^2(w t / 2) / w dw,
// theta = k_B T / hbar in rad/s.
inline Value dephasing_exponent(double C, double theta, double omega_c, long dn, double t) {
  auto f = [&](double w) {
    if (w == 0.0) return 0.0;
    const double s = std::sin(0.5 * w * t);
    const double coth = 1.0 + 2.0 / std::expm1(w / theta);
    return std::exp(-w / omega_c) * coth * 2.0 * s * s / w;
  };
  const double width = std::min(std::numbers::pi / t, 0.5 * omega_c);
  Value v = chunked(f, width, 46.0 * omega_c);
  const double scale = C / std::numbers::pi * static_cast<double>(dn * dn);
  return {scale * v.value, scale * v.error};
}

// int d^3r (1/2) m^2 phi0^2 exp(-|r - r0|^2 / R^2), nested over a 20R cube.
inline double ball_rest_energy(double phi0, double R, double m, double x0, double y0, double z0) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double h = 10.0 * R;
  auto density = [&](double x, double y, double z) {
    const double d2 = (x - x0) * (x - x0) + (y - y0) * (y - y0) + (z - z0) * (z - z0);
    return 0.5 * m * m * phi0 * phi0 * std::exp(-d2 / (R * R));
  };
  auto over_z = [&](double x, double y) {
    return GK::integrate([&](double z) { return density(x, y, z); }, z0 - h, z0 + h, 10, 1e-13);
  };
  auto over_y = [&](double x) {
    return GK::integrate([&](double y) { return over_z(x, y); }, y0 - h, y0 + h, 10, 1e-13);
  };
  return GK::integrate(over_y, x0 - h, x0 + h, 10, 1e-13);
}

}  // namespace oracle
