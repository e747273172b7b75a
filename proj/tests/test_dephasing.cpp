#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "gravidec/dephasing.hpp"
#include "gravidec/errors.hpp"
#include "oracles.hpp"

using namespace gravidec;
using cd = std::complex<double>;

namespace {

const PhysicalConstants kCodata = PhysicalConstants::codata2018();

// Temperature with k_B T / hbar = theta.
double temperature_for(double theta) { return theta * kCodata.hbar / kCodata.k_B; }

FockDensityMatrix equal_superposition(std::size_t a, std::size_t b, std::size_t dim = kDefaultMaxLevel + 1) {
  return FockDensityMatrix::from_superposition({{a, cd(1.0)}, {b, cd(1.0)}}, dim);
}

DephasingRun high_t_run(double C, double theta, std::vector<double> grid = {0.0}) {
  return DephasingRun(OhmicBath(C, 1e9), temperature_for(theta), std::move(grid));
}

FockDensityMatrix random_state(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> g;
  FockDensityMatrix::Matrix a(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) a(i, j) = cd(g(rng), g(rng));
  FockDensityMatrix::Matrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return FockDensityMatrix(rho);
}

}  // namespace

TEST(FockDensityMatrix, ValidatesInvariants) {
  FockDensityMatrix::Matrix m = FockDensityMatrix::Matrix::Zero(2, 2);
  m(0, 0) = 0.5;
  m(1, 1) = 0.5;
  EXPECT_NO_THROW(FockDensityMatrix{m});
  m(0, 1) = 0.1;
  EXPECT_THROW(FockDensityMatrix{m}, std::invalid_argument);  // not Hermitian
  m(1, 0) = 0.1;
  m(0, 0) = 0.6;
  EXPECT_THROW(FockDensityMatrix{m}, std::invalid_argument);  // trace 1.1
  m(0, 0) = 1.5;
  m(1, 1) = -0.5;
  EXPECT_THROW(FockDensityMatrix{m}, std::invalid_argument);  // negative eigenvalue
}

TEST(FockDensityMatrix, SuperpositionIsNormalisedAndPure) {
  const auto rho = equal_superposition(0, 2);
  EXPECT_EQ(rho.dim(), 17u);
  EXPECT_NEAR(rho(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(rho(0, 2).real(), 0.5, 1e-15);
  EXPECT_NEAR(purity(rho), 1.0, 1e-14);
  EXPECT_THROW(FockDensityMatrix::from_superposition({{17, cd(1.0)}}), std::invalid_argument);
}

TEST(FockDensityMatrix, TailMass) {
  EXPECT_FALSE(equal_superposition(0, 2).truncation_risk());
  const auto rho = equal_superposition(0, 16);
  EXPECT_NEAR(rho.tail_mass(), 0.5, 1e-15);
  EXPECT_TRUE(rho.truncation_risk());
}

TEST(Purity, ReferenceValues) {
  EXPECT_NEAR(purity(equal_superposition(1, 3)), 1.0, 1e-14);
  for (std::size_t d : {1u, 2u, 5u, 17u}) {
    EXPECT_NEAR(purity(FockDensityMatrix::maximally_mixed(d)), 1.0 / static_cast<double>(d), 1e-15);
  }
  const auto run = high_t_run(1e-3, 1e12);
  const auto dephased = analytic_propagate(equal_superposition(0, 2), run, 1e-6);
  EXPECT_NEAR(purity(dephased), 0.5, 1e-12);
}

TEST(DephasingRun, RejectsBadGrids) {
  const OhmicBath bath(1e-3, 1e9);
  EXPECT_THROW(DephasingRun(bath, 1.0, std::vector<double>{0.0, 1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(DephasingRun(bath, 1.0, std::vector<double>{-1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(DephasingRun(bath, -1.0, std::vector<double>{0.0}), std::invalid_argument);
}

TEST(DephasingRun, HighTemperatureFlag) {
  const OhmicBath bath(1e-3, 1e9);
  EXPECT_TRUE(DephasingRun(bath, temperature_for(1e10), {0.0}).high_temperature());
  EXPECT_FALSE(DephasingRun(bath, temperature_for(9.99e9), {0.0}).high_temperature());
}

TEST(AnalyticPropagate, PinnedExampleExpMinusFour) {
  const auto run = high_t_run(1e-3, 1e12);
  const auto rho0 = equal_superposition(0, 2);
  const auto rho = analytic_propagate(rho0, run, 1e-9);
  EXPECT_NEAR(std::abs(rho(0, 2)) / std::abs(rho0(0, 2)), 0.018316, 5e-7);
  EXPECT_NEAR(std::abs(rho(0, 2)) / std::abs(rho0(0, 2)), std::exp(-4.0), 1e-15);
}

TEST(AnalyticPropagate, TimeZeroIsIdentityAndNegativeRejected) {
  std::mt19937_64 rng(1);
  const auto rho0 = random_state(rng, 6);
  const auto run = high_t_run(0.01, 1e12);
  EXPECT_EQ(analytic_propagate(rho0, run, 0.0).entries(), rho0.entries());
  EXPECT_THROW(analytic_propagate(rho0, run, -1e-12), std::invalid_argument);
}

TEST(AnalyticPropagate, DiagonalsExactlyUnchanged) {
  std::mt19937_64 rng(2);
  const auto run = high_t_run(0.02, 3e12);
  for (int i = 0; i < 20; ++i) {
    const auto rho0 = random_state(rng, 5 + i % 7);
    const auto rho = analytic_propagate(rho0, run, 1e-12 * (i + 1));
    for (std::size_t n = 0; n < rho0.dim(); ++n) EXPECT_EQ(rho(n, n), rho0(n, n));
  }
}

TEST(AnalyticPropagate, ExponentScalesLinearlyAndQuadratically) {
  auto exponent = [](double C, double theta, double t, std::size_t dn) {
    const auto run = high_t_run(C, theta);
    const auto start = equal_superposition(0, dn);
    const auto rho = analytic_propagate(start, run, t);
    return -std::log(std::abs(rho(0, dn)) / std::abs(start(0, dn)));
  };
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.2, 1.0);
  for (int i = 0; i < 25; ++i) {
    const double C = 1e-3 * u(rng), theta = 1e12 * u(rng), t = 1e-10 * u(rng);
    const std::size_t dn = 1 + i % 3;
    const double base = exponent(C, theta, t, dn);
    EXPECT_NEAR(exponent(2 * C, theta, t, dn) / base, 2.0, 1e-12);
    EXPECT_NEAR(exponent(C, 2 * theta, t, dn) / base, 2.0, 1e-12);
    EXPECT_NEAR(exponent(C, theta, 2 * t, dn) / base, 2.0, 1e-12);
    EXPECT_NEAR(exponent(C, theta, t, 2 * dn) / base, 4.0, 1e-12);
  }
}

TEST(AnalyticPropagate, Semigroup) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 2e-10);
  const auto run = high_t_run(5e-3, 2e12);
  for (int i = 0; i < 20; ++i) {
    const auto rho0 = random_state(rng, 8);
    const double t1 = u(rng), t2 = u(rng);
    const auto direct = analytic_propagate(rho0, run, t1 + t2);
    const auto stepped = analytic_propagate(analytic_propagate(rho0, run, t1), run, t2);
    EXPECT_LT((direct.entries() - stepped.entries()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(DephasingConvention, LockedValue) {
  EXPECT_DOUBLE_EQ(kDephasingConvention, 1.0 / std::numbers::pi);
}

TEST(ExactExponent, TrivialCases) {
  const auto run = high_t_run(1e-3, 1e12);
  EXPECT_EQ(exact_dephasing_exponent(run, 2, 0.0), 0.0);
  EXPECT_EQ(exact_dephasing_exponent(run, 0, 1e-9), 0.0);
  EXPECT_THROW(exact_dephasing_exponent(run, 1, -1.0), std::invalid_argument);
}

TEST(ExactExponent, MatchesBruteForceQuadrature) {
  const double theta = 1e12;
  const auto run = high_t_run(1e-3, theta);
  for (double t : {1e-14, 3e-13, 2e-12, 5e-11, 1e-9}) {
    for (long dn : {1L, 2L}) {
      const double value = exact_dephasing_exponent(run, dn, t);
      const auto ref = oracle::dephasing_exponent(1e-3, theta, 2.0 * std::numbers::pi * theta, dn, t);
      EXPECT_NEAR(value, ref.value, 1e-10 * std::max(1.0, ref.value) + ref.error) << "t=" << t << " dn=" << dn;
    }
  }
}

TEST(ExactExponent, MatchesBruteForceWithBathCutoff) {
  const double theta = 5e11;
  const DephasingRun run(OhmicBath(2e-3, 1e9, 3e12), temperature_for(theta), {0.0});
  for (double t : {1e-13, 4e-12, 1e-10}) {
    const double value = exact_dephasing_exponent(run, 3, t);
    const auto ref = oracle::dephasing_exponent(2e-3, theta, 3e12, 3, t);
    EXPECT_NEAR(value, ref.value, 1e-10 * std::max(1.0, ref.value) + ref.error) << "t=" << t;
  }
}

TEST(ExactExponent, MonotoneInTime) {
  const auto run = high_t_run(1e-3, 1e12);
  double previous = 0.0;
  for (double t = 1e-15; t < 1e-9; t *= 1.6) {
    const double value = exact_dephasing_exponent(run, 1, t);
    EXPECT_GE(value, previous) << "t=" << t;
    previous = value;
  }
}

TEST(ExactExponent, LongTimeLinearity) {
  const double theta = 1e12;
  const auto run = high_t_run(1e-3, theta);
  for (double t : {100.0 / theta, 1e3 / theta, 1e4 / theta}) {
    const double ratio = exact_dephasing_exponent(run, 2, 2 * t) / exact_dephasing_exponent(run, 2, t);
    EXPECT_NEAR(ratio, 2.0, 0.02) << "t=" << t;
  }
}

TEST(ExactExponent, LongTimeSlopeProportionalToMarkovRate) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.3, 3.0);
  for (int i = 0; i < 8; ++i) {
    const double C = 1e-3 * u(rng), theta = 1e12 * u(rng);
    const long dn = 1 + i % 3;
    const auto run = high_t_run(C, theta);
    const double t = 2e3 / theta;
    const double slope = (exact_dephasing_exponent(run, dn, 2 * t) - exact_dephasing_exponent(run, dn, t)) / t;
    EXPECT_NEAR(slope / run.markov_rate(dn), 1.0, 0.01);
  }
}

TEST(Generator, DecayIntegratesToExactExponent) {
  // Lambda(t) / dn^2 is the time integral of the generator's decay coefficient.
  const double theta = 1e12;
  const auto run = high_t_run(1e-3, theta);
  for (double t : {1e-13, 1e-12, 2e-11}) {
    auto gamma = [&](double s) { return run.generator_decay(s); };
    const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(gamma, 0.0, t, 15, 1e-13);
    EXPECT_NEAR(integral, exact_dephasing_exponent(run, 1, t), 1e-9 * std::max(1.0, integral));
  }
  EXPECT_NEAR(run.generator_decay(1e-8) / run.markov_rate(1), 1.0, 1e-3);
  EXPECT_EQ(run.generator_decay(0.0), 0.0);
}

TEST(Generator, CutoffFreeBathAtZeroTemperatureRejected) {
  const DephasingRun run(OhmicBath(1e-3, 1e9), 0.0, {0.0, 1e-12});
  EXPECT_THROW(run.regulator_cutoff(), std::invalid_argument);
  EXPECT_THROW(numeric_propagate(equal_superposition(0, 1), run), std::invalid_argument);
}

TEST(NumericPropagate, DiagonalStateIsStationary) {
  const std::vector<double> pops{0.4, 0.3, 0.2, 0.1};
  const auto rho0 = FockDensityMatrix::from_populations(pops);
  const auto traj = numeric_propagate(rho0, high_t_run(1e-3, 1e12, uniform_grid(1e-9, 20)));
  ASSERT_EQ(traj.states.size(), 21u);
  for (const auto& rho : traj.states) {
    EXPECT_LT((rho.entries() - rho0.entries()).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(NumericPropagate, ConservesPopulationsTraceHermiticity) {
  std::mt19937_64 rng(6);
  const auto rho0 = random_state(rng, 6);
  const auto traj = numeric_propagate(rho0, high_t_run(1e-3, 1e12, uniform_grid(2e-10, 50)));
  for (const auto& rho : traj.states) {
    const auto d = rho.diagnostics();
    EXPECT_LT(d.trace_error, 1e-10);
    EXPECT_LT(d.hermiticity_error, 1e-10);
    for (std::size_t n = 0; n < rho.dim(); ++n) EXPECT_NEAR(rho(n, n).real(), rho0(n, n).real(), 1e-10);
  }
}

TEST(NumericPropagate, TwoLevelFitMatchesMarkovRate) {
  const double theta = 1e12;
  const auto run = high_t_run(1e-3, theta, uniform_grid(1e-9, 400));
  const auto rho0 = FockDensityMatrix::from_superposition({{0, cd(1.0)}, {1, cd(1.0)}}, 2);
  const auto traj = numeric_propagate(rho0, run);
  std::vector<double> mag;
  for (const auto& rho : traj.states) mag.push_back(std::abs(rho(0, 1)));
  const double fitted = fit_decay_rate(traj.times, mag);
  EXPECT_NEAR(fitted / run.markov_rate(1), 1.0, 0.02);
}

TEST(NumericPropagate, ModulusMatchesExactExponent) {
  // Pins the convention constant: both routes to Lambda(t) must agree.
  const double theta = 1e12;
  const auto grid = std::vector<double>{0.0, 1e-13, 1e-12, 1e-11, 1e-10, 5e-10};
  const auto run = high_t_run(1e-3, theta, grid);
  const auto rho0 = equal_superposition(0, 2);
  const auto traj = numeric_propagate(rho0, run);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double numeric = -std::log(std::abs(traj.states[i](0, 2)) / std::abs(rho0(0, 2)));
    const double exact = exact_dephasing_exponent(run, 2, grid[i]);
    EXPECT_NEAR(numeric, exact, 1e-6 * std::max(1.0, exact)) << "t=" << grid[i];
  }
}

TEST(NumericPropagate, WarnsOnTruncationRisk) {
  const auto traj = numeric_propagate(equal_superposition(0, 16), high_t_run(1e-3, 1e12, uniform_grid(1e-12, 2)));
  EXPECT_FALSE(traj.warnings.empty());
  const auto clean = numeric_propagate(equal_superposition(0, 2), high_t_run(1e-3, 1e12, uniform_grid(1e-12, 2)));
  EXPECT_TRUE(clean.warnings.empty());
}

TEST(NumericPropagate, OutputFollowsGridStartingAfterZero) {
  const auto rho0 = equal_superposition(0, 1);
  const auto traj = numeric_propagate(rho0, high_t_run(1e-3, 1e12, {1e-12, 2e-12}));
  ASSERT_EQ(traj.times.size(), 2u);
  EXPECT_EQ(traj.times[0], 1e-12);
  EXPECT_LT(std::abs(traj.states[0](0, 1)), std::abs(rho0(0, 1)));
}

TEST(NumericPropagate, RejectsEmptyGrid) {
  const DephasingRun run(OhmicBath(1e-3, 1e9), 1.0, std::vector<double>{});
  EXPECT_THROW(numeric_propagate(equal_superposition(0, 1), run), std::invalid_argument);
}

TEST(FitDecayRate, RecoversExponential) {
  const auto t = uniform_grid(10.0, 100);
  std::vector<double> m;
  for (double x : t) m.push_back(3.0 * std::exp(-0.7 * x));
  EXPECT_NEAR(fit_decay_rate(t, m), 0.7, 1e-12);
  EXPECT_THROW(fit_decay_rate(std::vector<double>{1.0}, std::vector<double>{1.0}), std::invalid_argument);
}
