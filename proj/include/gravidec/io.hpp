#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gravidec/decoherence.hpp"
#include "gravidec/dephasing.hpp"
#include "gravidec/kernels.hpp"
#include "gravidec/matter.hpp"

namespace gravidec {

inline constexpr std::string_view kVersion = "1.0.0";

/// 17 significant digits, '.' decimal; "inf"/"-inf"/"nan" for non-finite.
std::string format_machine(double value);
/// 4 significant digits for tables.
std::string format_table(double value);

nlohmann::json to_json(const RateResult& result);
RateResult rate_result_from_json(const nlohmann::json& j);

/// Writes `# key=value` metadata lines.
void write_csv_comments(std::ostream& os, const std::vector<std::string>& lines);

/// Columns t, n, ntilde, re, im, abs for every pair n <= ntilde drawn from
/// `levels`.
void write_evolution_header(std::ostream& os);
void write_evolution_rows(std::ostream& os, const std::vector<double>& times,
                          const std::vector<FockDensityMatrix>& states, const std::vector<std::size_t>& levels);

struct KernelSample {
  double r;
  double t;
  KernelValue value;
};

/// Columns r, t, value, err, method.
void write_kernel_csv(std::ostream& os, const std::vector<KernelSample>& samples);

/// Columns x, y, z, phi, t00 over every point of `layout`.
void write_ball_profile_csv(std::ostream& os, const GaussianBall& ball, const FieldGrid& layout);

/// A number immediately followed by a unit, e.g. "1eV", "2.5e-3J", "3GeV".
struct EnergyValue {
  double value;
  EnergyUnit unit;
  double joules(const PhysicalConstants& constants = PhysicalConstants::codata2018()) const {
    return convert_energy(value, unit, EnergyUnit::joule, constants);
  }
};
EnergyValue parse_energy(std::string_view token);

/// "n:re[:im],..." -> (level, amplitude) pairs.
std::vector<std::pair<std::size_t, std::complex<double>>> parse_state_spec(std::string_view spec);

/// Inclusive linear range start:stop:count.
struct Axis {
  double start;
  double stop;
  std::size_t count;
  std::vector<double> points() const;
};

/// "r=a:b:n,t=a:b:n"; either axis may be omitted.
struct GridSpec {
  std::optional<Axis> r;
  std::optional<Axis> t;
};
GridSpec parse_grid_spec(std::string_view spec);

/// Comma-separated list of exactly `count` numbers.
std::vector<double> parse_number_list(std::string_view text, std::size_t count);

}  // namespace gravidec
