#pragma once

#include <string>
#include <string_view>

namespace gravidec {

/// SI values of the constants every other module draws on.
///
/// Construct through `codata2018()` or aggregate-initialise and call
/// `validate()`; every public operation assumes a validated instance.
struct PhysicalConstants {
  double hbar;  ///< J s
  double c;     ///< m / s
  double G;     ///< m^3 kg^-1 s^-2
  double k_B;   ///< J / K
  double eV;    ///< J

  static PhysicalConstants codata2018();

  /// Throws std::invalid_argument unless every field is finite and > 0.
  void validate() const;

  /// sqrt(32 pi G), in SI.
  double kappa() const;
};

/// Avogadro constant, exact since the 2019 SI redefinition.
inline constexpr double kAvogadro = 6.02214076e23;

/// sqrt(hbar c^5 / G), joules.
double planck_energy(const PhysicalConstants& constants);

/// k_B T / hbar, s^-1. Rejects T < 0.
double thermal_rate_scale(double temperature_K, const PhysicalConstants& constants);

enum class EnergyUnit {
  joule,
  electron_volt,
  giga_electron_volt,
  kilogram,    ///< rest mass, converted through E = m c^2
  atom_count,  ///< number of atoms each carrying a 1 eV gap
};

/// Accepts "J", "eV", "GeV", "kg", "atoms". Throws std::invalid_argument
/// naming the token otherwise.
EnergyUnit parse_energy_unit(std::string_view token);
std::string_view to_string(EnergyUnit unit);

/// Joules per one `unit`.
double joules_per(EnergyUnit unit, const PhysicalConstants& constants);

double convert_energy(double value, EnergyUnit from, EnergyUnit to,
                      const PhysicalConstants& constants = PhysicalConstants::codata2018());

enum class UnitMode { si, natural };

UnitMode parse_unit_mode(std::string_view token);
std::string_view to_string(UnitMode mode);

/// hbar = c = k_B = 1 with one remaining energy scale.
///
/// Energies are measured in `energy_unit_J`; lengths in hbar c / E_unit;
/// times in hbar / E_unit; temperatures in E_unit / k_B. The Newton constant
/// becomes (E_unit / E_P)^2.
class NaturalUnits {
 public:
  /// One GeV energy unit with CODATA constants.
  NaturalUnits();
  explicit NaturalUnits(double energy_unit_J,
                        const PhysicalConstants& constants = PhysicalConstants::codata2018());

  static NaturalUnits gev(const PhysicalConstants& constants = PhysicalConstants::codata2018());

  const PhysicalConstants& constants() const { return constants_; }
  double energy_unit_J() const { return energy_unit_; }
  double length_unit_m() const;
  double time_unit_s() const;
  double temperature_unit_K() const;

  double energy_from_si(double joules) const { return joules / energy_unit_; }
  double energy_to_si(double e) const { return e * energy_unit_; }
  double length_from_si(double metres) const { return metres / length_unit_m(); }
  double length_to_si(double l) const { return l * length_unit_m(); }
  double time_from_si(double seconds) const { return seconds / time_unit_s(); }
  double time_to_si(double t) const { return t * time_unit_s(); }
  double temperature_from_si(double kelvin) const { return kelvin / temperature_unit_K(); }
  double temperature_to_si(double T) const { return T * temperature_unit_K(); }
  double rate_from_si(double per_second) const { return per_second * time_unit_s(); }
  double rate_to_si(double rate) const { return rate / time_unit_s(); }

  /// G in units of E_unit^-2.
  double gravitational_constant() const;
  /// sqrt(32 pi G) in units of E_unit^-1.
  double kappa() const;
  double planck_energy() const;

 private:
  PhysicalConstants constants_;
  double energy_unit_;
};

/// Base units of an alternative unit system, expressed in SI.
struct UnitScale {
  double length_m = 1.0;
  double time_s = 1.0;
  double mass_kg = 1.0;
  double temperature_K = 1.0;

  double energy_J() const { return mass_kg * length_m * length_m / (time_s * time_s); }
};

/// Re-expresses the constants in the unit system `scale`.
PhysicalConstants rescale(const PhysicalConstants& constants, const UnitScale& scale);

}  // namespace gravidec
