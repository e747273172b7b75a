#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "gravidec/decoherence.hpp"

using namespace gravidec;

namespace {

const PhysicalConstants kCodata = PhysicalConstants::codata2018();
constexpr double kEv = 1.602176634e-19;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

struct PairFactory {
  NaturalUnits units = NaturalUnits::gev();
  std::mt19937_64 rng;
  explicit PairFactory(std::uint64_t seed) : rng(seed) {}

  // Radius in GeV^-1 around 1e3, mass so that R m is in [100, 1e4].
  GaussianBall ball(double mass, const Vec3& centre) {
    std::uniform_real_distribution<double> lphi(-8.0, -4.0), lr(2.5, 3.5);
    const double R = std::pow(10.0, lr(rng));
    return GaussianBall(std::pow(10.0, lphi(rng)), centre, std::max(R, 100.0 / mass), mass);
  }
  Vec3 centre() {
    std::uniform_real_distribution<double> u(-1e5, 1e5);
    return {u(rng), u(rng), u(rng)};
  }
};

}  // namespace

TEST(DecoherenceRate, ReferenceValues) {
  const auto atom = decoherence_rate(kEv, 1.0);
  EXPECT_LT(rel(atom.rate, 8.783223975185228e-46), 1e-12);
  EXPECT_NEAR(atom.rate, 8.78e-46, 0.005 * 8.78e-46);
  const auto gram = decoherence_rate(6.02214076e23 * kEv, 1.0);
  EXPECT_LT(rel(gram.rate, 318.53397580819825), 1e-12);
  EXPECT_NEAR(gram.rate, 3.19e2, 0.005 * 3.19e2);
}

TEST(DecoherenceRate, PlanckGapGivesThermalRate) {
  const auto r = decoherence_rate(planck_energy(kCodata), 1.0);
  EXPECT_LT(rel(r.rate, 1.3092033920720642e11), 1e-14);
}

TEST(DecoherenceRate, ZeroCases) {
  const auto zero_gap = decoherence_rate(0.0, 300.0);
  EXPECT_EQ(zero_gap.rate, 0.0);
  EXPECT_EQ(zero_gap.coherence_time, std::numeric_limits<double>::infinity());
  EXPECT_EQ(decoherence_rate(1.0, 0.0).rate, 0.0);
  EXPECT_THROW(decoherence_rate(1.0, -1.0), std::invalid_argument);
  EXPECT_THROW(decoherence_rate(NAN, 1.0), std::invalid_argument);
}

TEST(DecoherenceRate, RateZeroExactlyWhenGapOrTemperatureZero) {
  std::mt19937_64 rng(81);
  std::uniform_real_distribution<double> le(-25.0, 5.0), lt(-3.0, 4.0);
  for (int i = 0; i < 200; ++i) {
    const double dE = std::pow(10.0, le(rng)), T = std::pow(10.0, lt(rng));
    EXPECT_GT(decoherence_rate(dE, T).rate, 0.0);
    EXPECT_EQ(decoherence_rate(-dE, T).rate, decoherence_rate(dE, T).rate);
  }
}

TEST(DecoherenceRate, ExactScaling) {
  std::mt19937_64 rng(82);
  std::uniform_real_distribution<double> le(-25.0, 5.0), lt(-3.0, 4.0);
  for (int i = 0; i < 100; ++i) {
    const double dE = std::pow(10.0, le(rng)), T = std::pow(10.0, lt(rng));
    const double base = decoherence_rate(dE, T).rate;
    EXPECT_DOUBLE_EQ(decoherence_rate(dE, 2.0 * T).rate / base, 2.0);
    EXPECT_DOUBLE_EQ(decoherence_rate(2.0 * dE, T).rate / base, 4.0);
    EXPECT_DOUBLE_EQ(decoherence_rate(dE, T).coherence_time * base, 1.0);
  }
}

TEST(DecoherenceRate, Flags) {
  const auto plain = decoherence_rate(kEv, 1.0);
  EXPECT_TRUE(plain.flags.high_T_ok.value());
  EXPECT_FALSE(plain.flags.markov_ok.has_value());
  EXPECT_FALSE(plain.flags.compton_ok.has_value());
  EXPECT_FALSE(decoherence_rate(kEv, 0.0).flags.high_T_ok.value());
  // Gap above the Planck energy: 1/rate shorter than hbar / k_B T.
  EXPECT_FALSE(decoherence_rate(10.0 * planck_energy(kCodata), 1.0).flags.high_T_ok.value());

  const auto ctx = decoherence_rate(kEv * 6.02214076e26, 1.0, kCodata, {1.0, true});
  EXPECT_FALSE(ctx.flags.markov_ok.value());  // coherence time ~3e-9 s < 1 s
  EXPECT_TRUE(ctx.flags.compton_ok.value());
  EXPECT_EQ(ctx.markov_time.value(), 1.0);
}

TEST(DimensionalEstimate, AliasOfRate) {
  for (double dE : {kEv, 6.02214076e23 * kEv, 0.0, planck_energy(kCodata)}) {
    EXPECT_EQ(dimensional_estimate(dE, 1.0), decoherence_rate(dE, 1.0).rate);
  }
  EXPECT_DOUBLE_EQ(dimensional_estimate(kEv, 2.0), 2.0 * dimensional_estimate(kEv, 1.0));
}

TEST(Scenarios, PresetsReproduceOrders) {
  const double expected[] = {8.78e-46, 3.19e2, 3.19e8};
  const char* names[] = {"atom_1eV", "gram_avogadro", "kilogram"};
  ASSERT_EQ(scenario_presets().size(), 3u);
  for (int i = 0; i < 3; ++i) {
    const auto s = scenario(names[i]);
    EXPECT_EQ(s.scenario.name, names[i]);
    EXPECT_EQ(s.scenario.T_K, 1.0);
    EXPECT_NEAR(s.result.rate, expected[i], 0.005 * expected[i]) << names[i];
    EXPECT_TRUE(s.within_order) << names[i];
    EXPECT_LE(std::abs(std::log10(s.result.rate) - std::log10(s.scenario.paper_order)), 1.0);
  }
  EXPECT_LT(rel(scenario("kilogram").result.rate, 1e6 * scenario("gram_avogadro").result.rate), 1e-14);
  EXPECT_THROW(scenario("proton"), std::invalid_argument);
}

TEST(RateFromBalls, MatchesClosedFormOnRandomPairs) {
  PairFactory f(91);
  const double T = 1.0;
  const KernelParams p = KernelParams::from_constants(f.units, T, 1e-15);
  for (int i = 0; i < 10; ++i) {
    const double m = std::pow(10.0, std::uniform_real_distribution<double>(-1.0, 1.0)(f.rng));
    const BallSuperposition sup(f.ball(m, f.centre()), f.ball(m, f.centre()));
    const auto r = rate_from_balls(sup, T, p, f.units);
    const double dE = f.units.energy_to_si(rest_energy(sup.a()) - rest_energy(sup.b()));
    const auto closed = decoherence_rate(std::abs(dE), T);
    EXPECT_LT(rel(r.rate, closed.rate), 1e-12);
    EXPECT_LT(rel(r.delta_E, dE), 1e-15);
    EXPECT_TRUE(r.flags.compton_ok.value());
    EXPECT_TRUE(r.markov_time.has_value());
  }
}

TEST(RateFromBalls, EqualEnergyBallsDoNotDecohere) {
  PairFactory f(92);
  const KernelParams p = KernelParams::from_constants(f.units, 1.0, 1e-15);
  for (int i = 0; i < 5; ++i) {
    const GaussianBall a = f.ball(2.0, f.centre());
    const GaussianBall b = a.translated(f.centre());
    const auto r = rate_from_balls(BallSuperposition(a, b), 1.0, p, f.units);
    EXPECT_EQ(r.rate, 0.0);
    EXPECT_EQ(r.coherence_time, std::numeric_limits<double>::infinity());
  }
}

TEST(RateFromBalls, DoubledAmplitudeQuadraticChain) {
  const NaturalUnits units = NaturalUnits::gev();
  const KernelParams p = KernelParams::from_constants(units, 1.0, 1e-15);
  const GaussianBall a(1e-6, {0, 0, 0}, 1e3, 1.0);
  const GaussianBall b(2e-6, {0, 0, 0}, 1e3, 1.0);
  const GaussianBall ref(1e-30, {0, 0, 0}, 1e3, 1.0);  // effectively empty reference
  EXPECT_NEAR(rest_energy(b) / rest_energy(a), 4.0, 1e-14);
  const double ra = rate_from_balls(BallSuperposition(a, ref), 1.0, p, units).rate;
  const double rb = rate_from_balls(BallSuperposition(b, ref), 1.0, p, units).rate;
  EXPECT_NEAR(rb / ra, 16.0, 1e-10);
}

TEST(RateFromBalls, TranslationInvariant) {
  PairFactory f(93);
  const KernelParams p = KernelParams::from_constants(f.units, 1.0, 1e-15);
  const BallSuperposition sup(f.ball(1.0, f.centre()), f.ball(1.0, f.centre()));
  const double base = rate_from_balls(sup, 1.0, p, f.units).rate;
  for (int i = 0; i < 3; ++i) {
    const BallSuperposition moved(sup.a().translated(f.centre()), sup.b().translated(f.centre()));
    EXPECT_LT(rel(rate_from_balls(moved, 1.0, p, f.units).rate, base), 1e-12);
  }
}

TEST(RateFromBalls, DependsOnlyOnEnergyGap) {
  const NaturalUnits units = NaturalUnits::gev();
  const KernelParams p = KernelParams::from_constants(units, 2.0, 1e-15);
  const double m = 1.0;
  // Same rest energies from different (phi0, R): phi0^2 R^3 fixed.
  const GaussianBall a1(1e-6, {0, 0, 0}, 1e3, m), b1(2e-6, {0, 0, 0}, 1e3, m);
  const double s = 1.7;
  const GaussianBall a2(1e-6 / std::pow(s, 1.5), {5, 0, 0}, 1e3 * s, m);
  const GaussianBall b2(2e-6 / std::pow(s, 1.5), {0, 9, 0}, 1e3 * s, m);
  const double r1 = rate_from_balls(BallSuperposition(a1, b1), 2.0, p, units).rate;
  const double r2 = rate_from_balls(BallSuperposition(a2, b2), 2.0, p, units).rate;
  EXPECT_LT(rel(r2, r1), 1e-12);
}

TEST(RateFromBalls, FlagsAndErrors) {
  const NaturalUnits units = NaturalUnits::gev();
  const KernelParams p = KernelParams::from_constants(units, 1.0, 1e-15);
  const GaussianBall small(1e-3, {0, 0, 0}, 1.0, 1.0), other(2e-3, {0, 0, 0}, 1.0, 1.0);
  const auto r = rate_from_balls(BallSuperposition(small, other), 1.0, p, units);
  EXPECT_FALSE(r.flags.compton_ok.value());
  EXPECT_THROW(rate_from_balls(BallSuperposition(small, other), 0.0, p, units), std::invalid_argument);
}
