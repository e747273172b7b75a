#include "gravidec/kernels.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "gravidec/errors.hpp"
#include "gravidec/special_functions.hpp"

namespace gravidec {

namespace {

using cd = std::complex<double>;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// (kappa/4)^2 / (2 pi^2): angular reduction of d^3k / (2pi)^3.
double radial_prefactor(const KernelParams& p) {
  const double k4 = p.kappa / 4.0;
  return k4 * k4 / (2.0 * std::numbers::pi * std::numbers::pi);
}

// (1/r) int_0^inf dk e^{-a k} sin(k r) e^{i k t}-pieces, as 1/((a - i(t+r))(a - i(t-r))).
// Real part: cos(kt) kernel; imaginary part: sin(kt) kernel. Finite at r = 0.
cd radial_transform(double a, double r, double t) {
  const cd plus{a, -(t + r)};
  const cd minus{a, -(t - r)};
  return 1.0 / (plus * minus);
}

// int_0^{t_max} Re[radial_transform(a, r, tau)] dtau. The lower limit drops out
// of the real part, leaving Re[-i L(w) / B] at tau = t_max with
// B = a - i(t_max - r) and w = -2 i r / B.
double radial_transform_time_integral(double a, double r, double t_max) {
  const cd upper{a, -(t_max - r)};
  const cd w = cd{0.0, -2.0 * r} / upper;
  const cd lower{a, r};
  const cd w0 = cd{0.0, -2.0 * r} / lower;
  const cd value = cd{0.0, -1.0} * special::log1p_ratio(w) / upper -
                   cd{0.0, -1.0} * special::log1p_ratio(w0) / lower;
  return value.real();
}

struct SeriesResult {
  double value;
  double error;
  std::size_t terms;
};

// Sum_{n >= 1} term(epsilon + n / T). Terms decay like n^-2 once n exceeds
// T * scale, so partial sums at N = M, 2M, 4M, ... are extrapolated to
// N -> inf (Richardson in 1/N).
template <class Term>
SeriesResult thermal_series(const Term& term, double temperature, double epsilon, double scale,
                            double target, std::size_t n_terms) {
  const double beta = 1.0 / temperature;
  const double start = std::max(32.0, std::ceil(2.0 * temperature * scale));
  if (start > static_cast<double>(n_terms)) {
    throw ConvergenceError("thermal series needs more than n_terms = " + std::to_string(n_terms) +
                               " terms to reach its asymptotic regime",
                           0.0, std::numeric_limits<double>::infinity());
  }
  auto block = static_cast<std::size_t>(start);

  constexpr int kLevels = 14;
  std::array<std::array<double, kLevels>, kLevels> table{};
  double partial = 0.0;
  double magnitude = 0.0;
  std::size_t n = 0;
  double best = 0.0;
  double best_err = std::numeric_limits<double>::infinity();

  for (int level = 0; level < kLevels; ++level) {
    const std::size_t upto = block << level;
    if (upto > n_terms) break;
    for (; n < upto; ++n) {
      const double v = term(epsilon + static_cast<double>(n + 1) * beta);
      partial += v;
      magnitude += std::abs(v);
    }
    table[level][0] = partial;
    for (int j = 1; j <= level; ++j) {
      const double factor = std::ldexp(1.0, j) - 1.0;
      table[level][j] = table[level][j - 1] + (table[level][j - 1] - table[level - 1][j - 1]) / factor;
    }
    if (level >= 2) {
      const double estimate = table[level][level];
      const double err = std::abs(estimate - table[level - 1][level - 1]) + 4.0 * kEps * magnitude;
      if (err < best_err) {
        best = estimate;
        best_err = err;
      }
      if (err <= target) return {estimate, err, n};
    }
  }
  throw ConvergenceError("thermal series did not converge within n_terms = " + std::to_string(n_terms), best,
                         best_err);
}

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

bool within(double err, double value, double tol) { return err <= tol * std::max(1.0, std::abs(value)); }

KernelValue finish(double value, double err, KernelMethod method, const KernelParams& p) {
  if (!within(err, value, p.tol)) {
    throw ConvergenceError("kernel evaluation missed its tolerance", value, err);
  }
  return {value, err, method, true};
}

}  // namespace

void KernelParams::validate() const {
  require(std::isfinite(kappa) && kappa > 0.0, "kappa must be positive");
  require(std::isfinite(temperature) && temperature >= 0.0, "temperature must be non-negative");
  require(std::isfinite(epsilon) && epsilon > 0.0, "regulator epsilon must be positive");
  require(std::isfinite(tol) && tol > 0.0, "tolerance must be positive");
  require(n_terms >= 1, "n_terms must be at least 1");
}

KernelParams KernelParams::from_constants(const NaturalUnits& units, double temperature_K, double epsilon_m,
                                          double tol) {
  KernelParams p;
  p.kappa = units.kappa();
  p.temperature = units.temperature_from_si(temperature_K);
  p.epsilon = units.length_from_si(epsilon_m);
  p.tol = tol;
  p.validate();
  return p;
}

std::string_view to_string(KernelMethod method) {
  switch (method) {
    case KernelMethod::closed_form: return "closed_form";
    case KernelMethod::series: return "series";
    case KernelMethod::quadrature: return "quadrature";
  }
  return "?";
}

KernelParts noise_kernel_parts(double r, double t, const KernelParams& p) {
  p.validate();
  require(std::isfinite(r) && r >= 0.0, "noise kernel needs r >= 0");
  require(std::isfinite(t), "noise kernel needs finite t");
  const double pref = radial_prefactor(p);

  KernelParts parts;
  const double vac = pref * radial_transform(p.epsilon, r, t).real();
  parts.vacuum = {vac, 8.0 * kEps * std::abs(vac), KernelMethod::closed_form, true};

  if (p.temperature > 0.0) {
    const double scale = std::abs(t) + r + p.epsilon;
    const double target = 0.1 * p.tol * std::max(1.0, std::abs(vac)) / (2.0 * pref);
    const SeriesResult s = thermal_series([&](double a) { return radial_transform(a, r, t).real(); },
                                          p.temperature, p.epsilon, scale, target, p.n_terms);
    parts.thermal = {2.0 * pref * s.value, 2.0 * pref * s.error, KernelMethod::series, true};
  } else {
    parts.thermal = {0.0, 0.0, KernelMethod::closed_form, true};
  }
  const double total = parts.vacuum.value + parts.thermal.value;
  parts.total = finish(total, parts.vacuum.err_estimate + parts.thermal.err_estimate, parts.thermal.method, p);
  return parts;
}

KernelValue noise_kernel(double r, double t, const KernelParams& params) {
  return noise_kernel_parts(r, t, params).total;
}

KernelValue dissipation_kernel(double r, double t, const KernelParams& p) {
  p.validate();
  require(std::isfinite(r) && r > 0.0, "dissipation kernel needs r > 0");
  require(std::isfinite(t), "dissipation kernel needs finite t");
  if (t == 0.0) return {0.0, 0.0, KernelMethod::closed_form, true};
  const double value = radial_prefactor(p) * radial_transform(p.epsilon, r, t).imag();
  return finish(value, 8.0 * kEps * std::abs(value), KernelMethod::closed_form, p);
}

KernelParts time_integrated_noise_parts(double r, double t_max, const KernelParams& p) {
  p.validate();
  require(std::isfinite(r) && r > 0.0, "time-integrated noise needs r > 0");
  require(std::isfinite(t_max) && t_max >= 0.0, "time-integrated noise needs t_max >= 0");
  const bool limit = p.temperature > 0.0 && t_max >= 100.0 * std::max(r, 1.0 / p.temperature);

  KernelParts parts;
  if (t_max == 0.0) {
    parts.vacuum = parts.thermal = parts.total = {0.0, 0.0, KernelMethod::closed_form, limit};
    return parts;
  }
  const double pref = radial_prefactor(p);
  const double vac = pref * radial_transform_time_integral(p.epsilon, r, t_max);
  parts.vacuum = {vac, 16.0 * kEps * (std::abs(vac) + pref * t_max / (p.epsilon * p.epsilon + r * r)),
                  KernelMethod::closed_form, limit};

  if (p.temperature > 0.0) {
    const double scale = t_max + r + p.epsilon;
    const double guess = std::max(std::abs(vac), markov_noise_limit(p));
    const double target = 0.1 * p.tol * std::max(1.0, guess) / (2.0 * pref);
    const SeriesResult s =
        thermal_series([&](double a) { return radial_transform_time_integral(a, r, t_max); }, p.temperature,
                       p.epsilon, scale, target, p.n_terms);
    parts.thermal = {2.0 * pref * s.value, 2.0 * pref * s.error, KernelMethod::series, limit};
  } else {
    parts.thermal = {0.0, 0.0, KernelMethod::closed_form, limit};
  }
  const double total = parts.vacuum.value + parts.thermal.value;
  parts.total = finish(total, parts.vacuum.err_estimate + parts.thermal.err_estimate, parts.thermal.method, p);
  parts.total.limit_regime = limit;
  return parts;
}

KernelValue time_integrated_noise(double r, double t_max, const KernelParams& params) {
  return time_integrated_noise_parts(r, t_max, params).total;
}

double markov_noise_limit(const KernelParams& p) {
  const double k4 = p.kappa / 4.0;
  return k4 * k4 * p.temperature / (2.0 * std::numbers::pi);
}

}  // namespace gravidec
