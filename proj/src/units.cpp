#include "gravidec/units.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gravidec {

PhysicalConstants PhysicalConstants::codata2018() {
  PhysicalConstants k{};
  k.hbar = 1.054571817e-34;  // CODATA 2018, h / 2pi with h exact
  k.c = 299792458.0;         // exact (SI definition)
  k.G = 6.67430e-11;         // CODATA 2018 recommended, rel. unc. 2.2e-5
  k.k_B = 1.380649e-23;      // exact (SI definition)
  k.eV = 1.602176634e-19;    // exact (SI definition of e)
  return k;
}

void PhysicalConstants::validate() const {
  const auto check = [](double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw std::invalid_argument(std::string("physical constant ") + name +
                                  " must be finite and positive");
    }
  };
  check(hbar, "hbar");
  check(c, "c");
  check(G, "G");
  check(k_B, "k_B");
  check(eV, "eV");
}

double PhysicalConstants::kappa() const { return std::sqrt(32.0 * std::numbers::pi * G); }

double planck_energy(const PhysicalConstants& k) {
  const double c2 = k.c * k.c;
  return std::sqrt(k.hbar * c2 * c2 * k.c / k.G);
}

double thermal_rate_scale(double temperature_K, const PhysicalConstants& k) {
  if (!(temperature_K >= 0.0)) {
    throw std::invalid_argument("temperature must be non-negative");
  }
  return k.k_B * temperature_K / k.hbar;
}

EnergyUnit parse_energy_unit(std::string_view token) {
  if (token == "J") return EnergyUnit::joule;
  if (token == "eV") return EnergyUnit::electron_volt;
  if (token == "GeV") return EnergyUnit::giga_electron_volt;
  if (token == "kg") return EnergyUnit::kilogram;
  if (token == "atoms") return EnergyUnit::atom_count;
  throw std::invalid_argument("unknown energy unit '" + std::string(token) + "'");
}

std::string_view to_string(EnergyUnit unit) {
  switch (unit) {
    case EnergyUnit::joule: return "J";
    case EnergyUnit::electron_volt: return "eV";
    case EnergyUnit::giga_electron_volt: return "GeV";
    case EnergyUnit::kilogram: return "kg";
    case EnergyUnit::atom_count: return "atoms";
  }
  return "?";
}

double joules_per(EnergyUnit unit, const PhysicalConstants& k) {
  switch (unit) {
    case EnergyUnit::joule: return 1.0;
    case EnergyUnit::electron_volt: return k.eV;
    case EnergyUnit::giga_electron_volt: return 1.0e9 * k.eV;
    case EnergyUnit::kilogram: return k.c * k.c;
    case EnergyUnit::atom_count: return k.eV;
  }
  throw std::invalid_argument("unknown energy unit");
}

double convert_energy(double value, EnergyUnit from, EnergyUnit to, const PhysicalConstants& k) {
  if (from == to) return value;
  return value * joules_per(from, k) / joules_per(to, k);
}

UnitMode parse_unit_mode(std::string_view token) {
  if (token == "SI" || token == "si") return UnitMode::si;
  if (token == "natural") return UnitMode::natural;
  throw std::invalid_argument("unknown unit mode '" + std::string(token) + "'");
}

std::string_view to_string(UnitMode mode) { return mode == UnitMode::si ? "SI" : "natural"; }

NaturalUnits::NaturalUnits() : NaturalUnits(1.0e9 * PhysicalConstants::codata2018().eV) {}

NaturalUnits::NaturalUnits(double energy_unit_J, const PhysicalConstants& constants)
    : constants_(constants), energy_unit_(energy_unit_J) {
  constants_.validate();
  if (!std::isfinite(energy_unit_J) || energy_unit_J <= 0.0) {
    throw std::invalid_argument("natural energy unit must be positive");
  }
}

NaturalUnits NaturalUnits::gev(const PhysicalConstants& constants) {
  return NaturalUnits(1.0e9 * constants.eV, constants);
}

double NaturalUnits::length_unit_m() const { return constants_.hbar * constants_.c / energy_unit_; }
double NaturalUnits::time_unit_s() const { return constants_.hbar / energy_unit_; }
double NaturalUnits::temperature_unit_K() const { return energy_unit_ / constants_.k_B; }

double NaturalUnits::gravitational_constant() const {
  const double ratio = energy_unit_ / gravidec::planck_energy(constants_);
  return ratio * ratio;
}

double NaturalUnits::kappa() const {
  return std::sqrt(32.0 * std::numbers::pi * gravitational_constant());
}

double NaturalUnits::planck_energy() const {
  return gravidec::planck_energy(constants_) / energy_unit_;
}

PhysicalConstants rescale(const PhysicalConstants& k, const UnitScale& s) {
  if (!(s.length_m > 0.0 && s.time_s > 0.0 && s.mass_kg > 0.0 && s.temperature_K > 0.0)) {
    throw std::invalid_argument("unit scale factors must be positive");
  }
  const double energy = s.energy_J();
  PhysicalConstants out{};
  out.hbar = k.hbar / (energy * s.time_s);
  out.c = k.c * s.time_s / s.length_m;
  out.G = k.G * s.mass_kg * s.time_s * s.time_s / (s.length_m * s.length_m * s.length_m);
  out.k_B = k.k_B * s.temperature_K / energy;
  out.eV = k.eV / energy;
  return out;
}

}  // namespace gravidec
