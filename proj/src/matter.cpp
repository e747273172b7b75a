#include "gravidec/matter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "gravidec/quadrature.hpp"

namespace gravidec {

namespace {

double distance_squared(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  const double dz = a[2] - b[2];
  return dx * dx + dy * dy + dz * dz;
}

}  // namespace

GaussianBall::GaussianBall(double phi0, Vec3 r0, double radius, double mass)
    : phi0_(phi0), r0_(r0), radius_(radius), mass_(mass) {
  if (!(phi0 > 0.0) || !std::isfinite(phi0)) throw std::invalid_argument("ball amplitude phi0 must be > 0");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw std::invalid_argument("ball radius must be > 0");
  if (!(mass > 0.0) || !std::isfinite(mass)) throw std::invalid_argument("field mass must be > 0");
  for (double x : r0) {
    if (!std::isfinite(x)) throw std::invalid_argument("ball center must be finite");
  }
}

GaussianBall GaussianBall::translated(const Vec3& shift) const {
  return GaussianBall(phi0_, {r0_[0] + shift[0], r0_[1] + shift[1], r0_[2] + shift[2]}, radius_, mass_);
}

BallSuperposition::BallSuperposition(GaussianBall a, GaussianBall b) : a_(a), b_(b) {
  if (a.mass() != b.mass()) throw std::invalid_argument("superposed balls must share the field mass");
}

double field_expectation(const GaussianBall& ball, const Vec3& r) {
  const double R = ball.radius();
  return ball.phi0() * std::exp(-distance_squared(r, ball.center()) / (2.0 * R * R));
}

std::complex<double> coherent_amplitude(const GaussianBall& ball, const Vec3& k) {
  const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
  const double R = ball.radius();
  const double omega = std::sqrt(ball.mass() * ball.mass() + k2);
  const double phase = -(k[0] * ball.center()[0] + k[1] * ball.center()[1] + k[2] * ball.center()[2]);
  const double modulus = ball.phi0() * R * R * R * std::sqrt(0.5 * omega) * std::exp(-0.5 * k2 * R * R);
  return std::polar(modulus, phase);
}

double energy_density(const GaussianBall& ball, const Vec3& r) {
  const double phi = field_expectation(ball, r);
  return 0.5 * ball.mass() * ball.mass() * phi * phi;
}

double rest_energy(const GaussianBall& ball) {
  const double m = ball.mass();
  const double R = ball.radius();
  return 0.5 * m * m * ball.phi0() * ball.phi0() * std::pow(std::numbers::pi, 1.5) * R * R * R;
}

double rest_energy_si(const GaussianBall& ball, const NaturalUnits& units) {
  return units.energy_to_si(rest_energy(ball));
}

double rest_energy_quadrature(const GaussianBall& ball, double rel_tol) {
  const Vec3& c = ball.center();
  const double half = 10.0 * ball.radius();
  const double abs_floor = 1e-300;
  const auto over_x = [&](double y, double z) {
    return quad::integrate_adaptive([&](double x) { return energy_density(ball, {x, y, z}); }, c[0] - half,
                                    c[0] + half, abs_floor, 0.1 * rel_tol)
        .value;
  };
  const auto over_xy = [&](double z) {
    return quad::integrate_adaptive([&](double y) { return over_x(y, z); }, c[1] - half, c[1] + half, abs_floor,
                                    0.3 * rel_tol)
        .value;
  };
  return quad::integrate_adaptive(over_xy, c[2] - half, c[2] + half, abs_floor, rel_tol).value;
}

double checked_rest_energy(const GaussianBall& ball) {
  const double closed = rest_energy(ball);
  const double numeric = rest_energy_quadrature(ball);
  if (std::abs(closed - numeric) > 1e-8 * std::abs(closed)) {
    throw std::runtime_error("rest energy closed form disagrees with quadrature: " + std::to_string(closed) +
                             " vs " + std::to_string(numeric));
  }
  return closed;
}

double markov_time(const BallSuperposition& sup) {
  constexpr double kSafetyFactor = 10.0;
  const double separation = std::sqrt(distance_squared(sup.a().center(), sup.b().center()));
  return kSafetyFactor * std::max({separation, sup.a().radius(), sup.b().radius()});
}

double markov_time_si(const BallSuperposition& sup, const NaturalUnits& units) {
  return units.time_to_si(markov_time(sup));
}

Vec3 FieldGrid::position(std::size_t i, std::size_t j, std::size_t k) const {
  return {origin[0] + spacing * static_cast<double>(i), origin[1] + spacing * static_cast<double>(j),
          origin[2] + spacing * static_cast<double>(k)};
}

FieldGrid FieldGrid::centered(const Vec3& center, double half_width, double spacing) {
  if (!(spacing > 0.0) || !(half_width > 0.0)) throw std::invalid_argument("grid needs positive extent and spacing");
  FieldGrid g;
  const auto cells = static_cast<std::size_t>(std::ceil(half_width / spacing));
  const std::size_t n = 2 * cells + 1;
  g.shape = {n, n, n};
  g.spacing = spacing;
  const double offset = spacing * static_cast<double>(cells);
  g.origin = {center[0] - offset, center[1] - offset, center[2] - offset};
  g.values.assign(g.size(), 0.0);
  return g;
}

FieldGrid FieldGrid::sample(const GaussianBall& ball, const FieldGrid& layout) {
  FieldGrid g = layout;
  g.values.resize(g.size());
  for (std::size_t k = 0; k < g.shape[2]; ++k)
    for (std::size_t j = 0; j < g.shape[1]; ++j)
      for (std::size_t i = 0; i < g.shape[0]; ++i) g.at(i, j, k) = field_expectation(ball, g.position(i, j, k));
  return g;
}

double coordinate_wavefunctional_exponent(const GaussianBall& ball, const FieldGrid& config) {
  if (!ball.compton_ok()) {
    throw std::invalid_argument("coordinate-basis form needs R m >= 100 (R = " + std::to_string(ball.radius()) +
                                ", m = " + std::to_string(ball.mass()) + ")");
  }
  if (config.values.size() != config.size() || config.size() == 0) {
    throw std::invalid_argument("field grid values do not match its shape");
  }
  const double R = ball.radius();
  if (config.spacing > R / 8.0) throw std::invalid_argument("grid spacing must be <= R/8");
  for (int axis = 0; axis < 3; ++axis) {
    const double lo = config.origin[axis];
    const double hi = lo + config.spacing * static_cast<double>(config.shape[axis] - 1);
    const double c = ball.center()[axis];
    // Small slack for grids built by stepping from the centre.
    const double need = 6.0 * R * (1.0 - 1e-12);
    if (c - lo < need || hi - c < need) {
      throw std::invalid_argument("field grid must extend at least 6R beyond the ball center on every side");
    }
  }

  double sum = 0.0;
  for (std::size_t k = 0; k < config.shape[2]; ++k)
    for (std::size_t j = 0; j < config.shape[1]; ++j)
      for (std::size_t i = 0; i < config.shape[0]; ++i) {
        const double diff = config.at(i, j, k) - field_expectation(ball, config.position(i, j, k));
        sum += diff * diff;
      }
  const double h = config.spacing;
  return -0.5 * ball.mass() * sum * h * h * h;
}

}  // namespace gravidec
