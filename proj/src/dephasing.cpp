#include "gravidec/dephasing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>

#include "gravidec/errors.hpp"
#include "gravidec/quadrature.hpp"
#include "gravidec/special_functions.hpp"

namespace gravidec {

namespace {

using cd = std::complex<double>;

void require_square(const FockDensityMatrix::Matrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw std::invalid_argument("density matrix must be square and non-empty");
  }
}

}  // namespace

FockDensityMatrix::FockDensityMatrix(Matrix entries, double tol) : entries_(std::move(entries)) {
  require_square(entries_);
  const Diagnostics d = diagnostics();
  if (d.hermiticity_error > tol) throw std::invalid_argument("density matrix is not Hermitian");
  if (d.trace_error > tol) throw std::invalid_argument("density matrix does not have unit trace");
  if (d.min_eigenvalue < -1e-10) throw std::invalid_argument("density matrix is not positive semidefinite");
}

FockDensityMatrix FockDensityMatrix::unchecked(Matrix entries) {
  require_square(entries);
  return FockDensityMatrix(std::move(entries), NoCheck{});
}

FockDensityMatrix FockDensityMatrix::from_superposition(
    const std::vector<std::pair<std::size_t, std::complex<double>>>& terms, std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("Fock dimension must be positive");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  for (const auto& [level, amplitude] : terms) {
    if (level >= dim) {
      throw std::invalid_argument("Fock level " + std::to_string(level) + " exceeds truncation " +
                                  std::to_string(dim - 1));
    }
    psi(static_cast<Eigen::Index>(level)) += amplitude;
  }
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("superposition has zero norm");
  psi /= norm;
  return FockDensityMatrix(psi * psi.adjoint());
}

FockDensityMatrix FockDensityMatrix::from_populations(std::span<const double> populations) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(populations.size()),
                          static_cast<Eigen::Index>(populations.size()));
  for (std::size_t i = 0; i < populations.size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = populations[i];
  }
  return FockDensityMatrix(std::move(m));
}

FockDensityMatrix FockDensityMatrix::maximally_mixed(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("Fock dimension must be positive");
  const auto n = static_cast<Eigen::Index>(dim);
  return FockDensityMatrix(Matrix::Identity(n, n) / static_cast<double>(dim));
}

FockDensityMatrix::Diagnostics FockDensityMatrix::diagnostics() const {
  Diagnostics d{};
  d.hermiticity_error = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  d.trace_error = std::abs(entries_.trace() - cd{1.0, 0.0});
  const Matrix herm = 0.5 * (entries_ + entries_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = solver.eigenvalues().minCoeff();
  return d;
}

double FockDensityMatrix::tail_mass() const {
  const auto n = entries_.rows();
  double mass = 0.0;
  for (auto i = std::max<Eigen::Index>(0, n - 2); i < n; ++i) mass += entries_(i, i).real();
  return mass;
}

double purity(const FockDensityMatrix& rho) { return rho.entries().cwiseAbs2().sum(); }

DephasingRun::DephasingRun(OhmicBath bath, double temperature_K, std::vector<double> t_grid,
                           const PhysicalConstants& constants)
    : DephasingRun(bath, temperature_K, bath.omega0(), std::move(t_grid), constants) {}

DephasingRun::DephasingRun(OhmicBath bath, double temperature_K, double omega0, std::vector<double> t_grid,
                           const PhysicalConstants& constants)
    : bath_(std::move(bath)),
      temperature_(temperature_K),
      omega0_(omega0),
      t_grid_(std::move(t_grid)),
      constants_(constants) {
  constants_.validate();
  if (!(temperature_K >= 0.0)) throw std::invalid_argument("temperature must be non-negative");
  if (!(omega0 > 0.0)) throw std::invalid_argument("system frequency must be positive");
  for (std::size_t i = 0; i < t_grid_.size(); ++i) {
    if (!(t_grid_[i] >= 0.0) || (i > 0 && !(t_grid_[i] > t_grid_[i - 1]))) {
      throw std::invalid_argument("time grid must be non-negative and strictly increasing");
    }
  }
}

bool DephasingRun::high_temperature() const {
  return constants_.k_B * temperature_ >= 10.0 * constants_.hbar * omega0_;
}

double DephasingRun::thermal_rate() const { return thermal_rate_scale(temperature_, constants_); }

double DephasingRun::markov_rate(long delta_n) const {
  const double dn = static_cast<double>(delta_n);
  return bath_.coupling() * thermal_rate() * dn * dn;
}

double DephasingRun::regulator_cutoff() const {
  if (bath_.cutoff()) return *bath_.cutoff();
  if (temperature_ == 0.0) {
    throw std::invalid_argument("a cutoff-free bath at T = 0 has no finite-time dephasing exponent");
  }
  return 2.0 * std::numbers::pi * thermal_rate();
}

double DephasingRun::generator_decay(double t) const {
  if (t <= 0.0) return 0.0;
  const double wc = regulator_cutoff();
  const double a = 1.0 / wc;
  // int_0^inf dw e^{-w/wc} sin(w t) = t / (a^2 + t^2)
  double integral = t / (a * a + t * t);
  if (temperature_ > 0.0) {
    // 2 sum_k t / ((a + k b)^2 + t^2) = -(2/b) Im psi(1 + (a - i t) / b)
    const double b = 1.0 / thermal_rate();
    integral += -(2.0 / b) * special::digamma(cd{1.0 + a / b, -t / b}).imag();
  }
  return bath_.coupling() / std::numbers::pi * integral;
}

double DephasingRun::generator_shift(double t) const {
  if (t <= 0.0) return 0.0;
  const double wc = regulator_cutoff();
  const double x = wc * t;
  return -bath_.coupling() / std::numbers::pi * wc * x * x / (1.0 + x * x);
}

FockDensityMatrix analytic_propagate(const FockDensityMatrix& rho0, const DephasingRun& run, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("propagation time must be non-negative");
  FockDensityMatrix::Matrix m = rho0.entries();
  const double rate = run.bath().coupling() * run.thermal_rate();
  const auto dim = m.rows();
  for (Eigen::Index n = 0; n < dim; ++n) {
    for (Eigen::Index k = 0; k < dim; ++k) {
      if (n == k) continue;
      const double dn = static_cast<double>(n - k);
      m(n, k) *= std::exp(cd{-rate * dn * dn * t, -run.omega0() * dn * t});
    }
  }
  return FockDensityMatrix::unchecked(std::move(m));
}

double exact_dephasing_exponent(const DephasingRun& run, long delta_n, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("time must be non-negative");
  if (t == 0.0 || delta_n == 0 || run.bath().coupling() == 0.0) return 0.0;

  const double coupling = run.bath().coupling();
  const double damping = 1.0 / (run.regulator_cutoff() * t);  // cutoff in x = w t
  const double thermal_scale =
      run.temperature_K() > 0.0 ? 1.0 / (run.thermal_rate() * t) : 0.0;  // hbar w / k_B T = s x

  // j(w) (w0/w)^2 coth(...) dw  ->  C e^{-u x} coth(s x / 2) / x dx
  const auto envelope = [=](double x) {
    const double thermal = thermal_scale > 0.0 ? 1.0 + 2.0 / std::expm1(thermal_scale * x) : 1.0;
    return coupling * std::exp(-damping * x) * thermal / x;
  };

  const double dn = static_cast<double>(delta_n);
  const double prefactor = kDephasingConvention * dn * dn;
  // Target on the bare integral; the relative part covers Lambda > 1.
  const double abs_tol = 1e-10 / prefactor;
  const double rel_tol = 1e-10;

  const double split = 2.5 * std::numbers::pi;  // first zero of cos beyond one period
  const quad::QuadResult head = quad::integrate_adaptive(
      [&](double x) {
        const double s = std::sin(0.5 * x);
        return envelope(x) * 2.0 * s * s;
      },
      0.0, split, 0.1 * abs_tol, 0.1 * rel_tol, 4000);

  const double upper = split + 60.0 / damping;
  const quad::QuadResult smooth =
      quad::integrate_adaptive(envelope, split, upper, 0.1 * abs_tol, 0.1 * rel_tol, 20000);
  const quad::QuadResult wave = quad::integrate_oscillatory_tail(envelope, quad::Oscillation::cosine, split,
                                                                 0.1 * abs_tol);

  const double integral = head.value + smooth.value - wave.value;
  const double error = head.error + smooth.error + wave.error;
  const double lambda = prefactor * integral;
  const double lambda_err = prefactor * error;
  if (lambda_err > 1e-10 * std::max(1.0, std::abs(lambda))) {
    throw ConvergenceError("dephasing exponent quadrature did not converge", lambda, lambda_err);
  }
  return lambda;
}

Trajectory numeric_propagate(const FockDensityMatrix& rho0, const DephasingRun& run,
                             const IntegratorOptions& options) {
  namespace odeint = boost::numeric::odeint;
  using State = std::vector<cd>;

  if (run.t_grid().empty()) throw std::invalid_argument("time grid must be non-empty");

  Trajectory out;
  if (rho0.truncation_risk()) {
    out.warnings.push_back("initial state has population " + std::to_string(rho0.tail_mass()) +
                           " in the top two Fock levels; truncation may bias results");
  }

  const auto dim = static_cast<Eigen::Index>(rho0.dim());
  State state(static_cast<std::size_t>(dim * dim));
  std::vector<double> dn2(state.size());
  std::vector<double> dsq(state.size());
  for (Eigen::Index n = 0; n < dim; ++n) {
    for (Eigen::Index k = 0; k < dim; ++k) {
      const auto idx = static_cast<std::size_t>(n * dim + k);
      state[idx] = rho0(static_cast<std::size_t>(n), static_cast<std::size_t>(k));
      dn2[idx] = static_cast<double>((n - k) * (n - k));
      dsq[idx] = static_cast<double>(n * n - k * k);
    }
  }

  const bool dephases = run.bath().coupling() > 0.0;
  if (dephases) run.regulator_cutoff();  // rejects a cutoff-free bath at T = 0
  const auto generator = [&](const State& x, State& dxdt, double t) {
    if (!dephases) {
      std::fill(dxdt.begin(), dxdt.end(), cd{0.0, 0.0});
      return;
    }
    const double gamma = run.generator_decay(t);
    const double phi = run.generator_shift(t);
    for (std::size_t i = 0; i < x.size(); ++i) dxdt[i] = -cd{gamma * dn2[i], phi * dsq[i]} * x[i];
  };

  const auto to_schrodinger = [&](const State& x, double t) {
    FockDensityMatrix::Matrix m(dim, dim);
    for (Eigen::Index n = 0; n < dim; ++n) {
      for (Eigen::Index k = 0; k < dim; ++k) {
        const cd v = x[static_cast<std::size_t>(n * dim + k)];
        m(n, k) = (n == k) ? v : v * std::exp(cd{0.0, -run.omega0() * static_cast<double>(n - k) * t});
      }
    }
    return FockDensityMatrix::unchecked(std::move(m));
  };

  std::vector<double> times;
  if (run.t_grid().front() > 0.0) times.push_back(0.0);
  times.insert(times.end(), run.t_grid().begin(), run.t_grid().end());

  auto stepper = odeint::make_controlled(options.abs_tol, options.rel_tol, odeint::runge_kutta_dopri5<State>());
  const double first_gap = times.size() > 1 ? times[1] - times[0] : 1.0;
  const double dt0 = 1e-3 * first_gap;
  const bool prepended = run.t_grid().front() > 0.0;
  std::size_t seen = 0;
  try {
    odeint::integrate_times(
        stepper, generator, state, times.begin(), times.end(), dt0,
        [&](const State& x, double t) {
          if (!(prepended && seen == 0)) {
            out.times.push_back(t);
            out.states.push_back(to_schrodinger(x, t));
          }
          ++seen;
        },
        odeint::max_step_checker(static_cast<int>(options.max_steps_per_interval)));
  } catch (const std::exception& e) {
    throw IntegrationError(std::string("time integration failed: ") + e.what());
  }

  if (rho0.dim() > 1) {
    const auto& last = out.states.back();
    double edge = 0.0;
    for (Eigen::Index k = 0; k < dim; ++k) edge = std::max(edge, std::abs(last.entries()(dim - 1, k)));
    if (edge > kTailMassThreshold) {
      out.warnings.push_back("coherences involving the highest Fock level are non-negligible (" +
                             std::to_string(edge) + ")");
    }
  }
  return out;
}

double fit_decay_rate(std::span<const double> times, std::span<const double> magnitude) {
  if (times.size() != magnitude.size() || times.empty()) {
    throw std::invalid_argument("fit needs matching, non-empty series");
  }
  const double t_max = *std::max_element(times.begin(), times.end());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0.1 * t_max || !(magnitude[i] > 0.0)) continue;
    const double y = std::log(magnitude[i]);
    sx += times[i];
    sy += y;
    sxx += times[i] * times[i];
    sxy += times[i] * y;
    ++count;
  }
  if (count < 2) throw std::invalid_argument("fit needs at least two positive samples in the last decade");
  const double n = static_cast<double>(count);
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("degenerate time samples in fit");
  return -(n * sxy - sx * sy) / denom;
}

std::vector<double> uniform_grid(double t_max, std::size_t steps) {
  if (!(t_max > 0.0) || steps == 0) throw std::invalid_argument("grid needs t_max > 0 and steps >= 1");
  std::vector<double> grid(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) grid[i] = t_max * static_cast<double>(i) / static_cast<double>(steps);
  return grid;
}

}  // namespace gravidec
