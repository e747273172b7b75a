// gravidec: batch frontend for the graviton-bath decoherence library.
//
// Data goes to stdout (or --out), diagnostics to stderr. Exit codes:
// 0 success, 2 usage or parse error, 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gravidec/bath.hpp"
#include "gravidec/decoherence.hpp"
#include "gravidec/dephasing.hpp"
#include "gravidec/errors.hpp"
#include "gravidec/io.hpp"
#include "gravidec/kernels.hpp"
#include "gravidec/matter.hpp"
#include "gravidec/units.hpp"

using namespace gravidec;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

// Reads a JSON object as CLI11 config items. Nested objects map to
// subcommands: {"rate": {"temp": 1}} sets `rate --temp 1`.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    json j = json::object();
    for (const CLI::Option* opt : app->get_options()) {
      if (!opt->get_configurable() || opt->get_lnames().empty()) continue;
      const auto& results = opt->results();
      if (!results.empty()) {
        j[opt->get_lnames().front()] = results.size() == 1 ? json(results.front()) : json(results);
      } else if (default_also && !opt->get_default_str().empty()) {
        j[opt->get_lnames().front()] = opt->get_default_str();
      }
    }
    return j.dump(2) + "\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json j;
    try {
      j = json::parse(input);
    } catch (const json::parse_error& e) {
      throw CLI::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConfigError("config must be a JSON object");
    std::vector<CLI::ConfigItem> items;
    flatten(j, {}, items);
    return items;
  }

 private:
  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  static void flatten(const json& j, const std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& out) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object()) {
        auto next = parents;
        next.push_back(key);
        flatten(value, next, out);
        continue;
      }
      if (value.is_null()) continue;
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(value));
      }
      out.push_back(std::move(item));
    }
  }
};

struct Global {
  std::string output = "table";
  std::string out_path;
  std::string unit_mode = "SI";
  double tol = 1e-10;
  double ode_rtol = 1e-10;
  std::size_t ode_max_steps = 200000;
  std::string command_line;
};

std::string flag(const std::optional<bool>& v) { return v ? (*v ? "true" : "false") : ""; }
std::string flag_table(const std::optional<bool>& v) { return v ? (*v ? "true" : "false") : "n/a"; }

std::string join(const std::vector<std::string>& cells, char sep = ',') {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += sep;
    out += cells[i];
  }
  return out;
}

// Left-aligned text table with two spaces between columns.
void write_table(std::ostream& os, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    width.resize(std::max(width.size(), row.size()), 0);
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
    }
    os << line << '\n';
  }
}

std::vector<std::string> metadata(const Global& g) {
  return {"gravidec_version=" + std::string(kVersion), "command=" + g.command_line,
          "unit_mode=" + std::string(to_string(parse_unit_mode(g.unit_mode))), "tol=" + format_machine(g.tol),
          "ode_rtol=" + format_machine(g.ode_rtol), "ode_max_steps=" + std::to_string(g.ode_max_steps)};
}

json json_number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

bool natural_mode(const Global& g) { return parse_unit_mode(g.unit_mode) == UnitMode::natural; }

// ---- rate ---------------------------------------------------------------

struct RateArgs {
  std::string delta_e;
  double temp = 0.0;
};

void run_rate(const Global& g, const RateArgs& a, std::ostream& os) {
  const NaturalUnits units = NaturalUnits::gev();
  const bool natural = natural_mode(g);
  const EnergyValue energy = parse_energy(a.delta_e);
  if (!(a.temp >= 0.0)) throw std::invalid_argument("invalid temperature '" + format_machine(a.temp) + "'");
  const double T_K = natural ? units.temperature_to_si(a.temp) : a.temp;
  const RateResult r = decoherence_rate(energy.joules(units.constants()), T_K, units.constants());

  if (g.output == "json") {
    json j = to_json(r);
    if (natural) {
      j["natural_GeV"] = {{"rate", units.rate_from_si(r.rate)},
                          {"delta_E", units.energy_from_si(r.delta_E)},
                          {"T", units.temperature_from_si(r.T)},
                          {"coherence_time", json_number(units.time_from_si(r.coherence_time))}};
    }
    os << j.dump(2) << '\n';
    return;
  }

  std::vector<std::string> names, values;
  if (natural) {
    names = {"rate_GeV", "delta_E_GeV", "T_GeV", "coherence_time_per_GeV"};
    values = {format_machine(units.rate_from_si(r.rate)), format_machine(units.energy_from_si(r.delta_E)),
              format_machine(units.temperature_from_si(r.T)), format_machine(units.time_from_si(r.coherence_time))};
  } else {
    names = {"rate_per_s", "delta_E_J", "T_K", "coherence_time_s"};
    values = {format_machine(r.rate), format_machine(r.delta_E), format_machine(r.T), format_machine(r.coherence_time)};
  }
  names.insert(names.end(), {"markov_time_s", "high_T_ok", "markov_ok", "compton_ok"});
  values.insert(values.end(), {r.markov_time ? format_machine(*r.markov_time) : "", flag(r.flags.high_T_ok),
                               flag(r.flags.markov_ok), flag(r.flags.compton_ok)});

  if (g.output == "csv") {
    auto meta = metadata(g);
    meta.push_back("delta_e=" + a.delta_e);
    write_csv_comments(os, meta);
    os << join(names) << '\n' << join(values) << '\n';
    return;
  }
  std::vector<std::vector<std::string>> rows{{"quantity", "value"}};
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::string v = values[i];
    if (i < 4) v = format_table(std::stod(values[i]));
    if (v.empty()) v = "n/a";
    rows.push_back({names[i], v});
  }
  write_table(os, rows);
}

// ---- scenario -----------------------------------------------------------

json scenario_json(const ScenarioResult& s) {
  return {{"name", std::string(s.scenario.name)},
          {"delta_E_eV", s.scenario.delta_E_eV},
          {"delta_E_J", s.result.delta_E},
          {"T_K", s.result.T},
          {"rate_per_s", s.result.rate},
          {"coherence_time_s", json_number(s.result.coherence_time)},
          {"paper_order", s.scenario.paper_order},
          {"within_order", s.within_order}};
}

void run_scenario(const Global& g, const std::string& name, std::ostream& os) {
  std::vector<ScenarioResult> results;
  if (name == "all") {
    for (const Scenario& s : scenario_presets()) results.push_back(scenario(s.name));
  } else {
    results.push_back(scenario(name));
  }

  if (g.output == "json") {
    if (results.size() == 1) {
      os << scenario_json(results.front()).dump(2) << '\n';
    } else {
      json arr = json::array();
      for (const auto& s : results) arr.push_back(scenario_json(s));
      os << arr.dump(2) << '\n';
    }
    return;
  }

  const NaturalUnits units = NaturalUnits::gev();
  const bool natural = natural_mode(g);
  const bool csv = g.output == "csv";
  auto num = [&](double v) { return csv ? format_machine(v) : format_table(v); };
  std::vector<std::vector<std::string>> rows;
  rows.push_back(natural ? std::vector<std::string>{"name", "delta_E_GeV", "T_GeV", "rate_GeV", "paper_order",
                                                    "within_order"}
                         : std::vector<std::string>{"name", "delta_E_J", "T_K", "rate_per_s", "paper_order",
                                                    "within_order"});
  for (const auto& s : results) {
    const double dE = natural ? units.energy_from_si(s.result.delta_E) : s.result.delta_E;
    const double T = natural ? units.temperature_from_si(s.result.T) : s.result.T;
    const double rate = natural ? units.rate_from_si(s.result.rate) : s.result.rate;
    rows.push_back({std::string(s.scenario.name), num(dE), num(T), num(rate), num(s.scenario.paper_order),
                    s.within_order ? "true" : "false"});
  }
  if (csv) {
    write_csv_comments(os, metadata(g));
    for (const auto& row : rows) os << join(row) << '\n';
  } else {
    write_table(os, rows);
  }
}

// ---- evolve -------------------------------------------------------------

struct EvolveArgs {
  std::size_t nmax = kDefaultMaxLevel;
  double coupling = 1e-3;
  std::optional<double> temp;
  std::optional<double> thermal_rate;
  double omega0 = 1e9;
  double tmax = 0.0;
  std::size_t steps = 200;
  std::string state = "0:1,2:1";
  std::string levels;
  std::optional<double> cutoff;
  std::string method = "both";
};

struct PairFit {
  std::size_t n, ntilde;
  double markov;
  std::optional<double> analytic, numeric;
};

std::optional<double> try_fit(const std::vector<double>& times, const std::vector<FockDensityMatrix>& states,
                              std::size_t n, std::size_t m) {
  std::vector<double> mag;
  for (const auto& s : states) mag.push_back(std::abs(s(n, m)));
  try {
    return fit_decay_rate(times, mag);
  } catch (const std::invalid_argument&) {
    return std::nullopt;  // magnitude vanished: nothing to fit
  }
}

void run_evolve(const Global& g, const EvolveArgs& a, std::ostream& os) {
  const PhysicalConstants constants = PhysicalConstants::codata2018();
  if (a.temp.has_value() == a.thermal_rate.has_value()) {
    throw std::invalid_argument("give exactly one of --temp or --thermal-rate");
  }
  const double T_K = a.temp ? *a.temp : *a.thermal_rate * constants.hbar / constants.k_B;
  const bool do_analytic = a.method != "numeric";
  const bool do_numeric = a.method != "analytic";

  const auto terms = parse_state_spec(a.state);
  for (const auto& [n, c] : terms) {
    if (n > a.nmax) throw std::invalid_argument("state level " + std::to_string(n) + " exceeds --nmax");
  }
  std::vector<std::size_t> levels;
  if (a.levels.empty()) {
    for (const auto& t : terms) levels.push_back(t.first);
  } else {
    std::stringstream ss(a.levels);
    for (std::string tok; std::getline(ss, tok, ',');) {
      std::size_t pos = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(tok, &pos);
      } catch (const std::exception&) {
        pos = std::string::npos;
      }
      if (pos != tok.size() || tok.empty() || tok[0] == '-') throw std::invalid_argument("invalid level '" + tok + "'");
      if (v > a.nmax) throw std::invalid_argument("level " + tok + " exceeds --nmax");
      levels.push_back(v);
    }
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  const FockDensityMatrix rho0 = FockDensityMatrix::from_superposition(terms, a.nmax + 1);
  if (rho0.truncation_risk()) std::cerr << "warning: initial state populates the top two retained levels\n";

  const DephasingRun run(OhmicBath(a.coupling, a.omega0, a.cutoff), T_K, uniform_grid(a.tmax, a.steps), constants);
  if (!run.high_temperature()) std::cerr << "warning: k_B T < 10 hbar omega0; Markovian rates are not reliable\n";

  const auto& times = run.t_grid();
  std::vector<FockDensityMatrix> analytic, numeric;
  if (do_analytic) {
    for (double t : times) analytic.push_back(analytic_propagate(rho0, run, t));
  }
  if (do_numeric) {
    IntegratorOptions opts;
    opts.rel_tol = g.ode_rtol;
    opts.max_steps_per_interval = g.ode_max_steps;
    Trajectory traj = numeric_propagate(rho0, run, opts);
    for (const auto& w : traj.warnings) std::cerr << "warning: " << w << '\n';
    numeric = std::move(traj.states);
  }

  std::vector<PairFit> fits;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    for (std::size_t k = i + 1; k < levels.size(); ++k) {
      PairFit f{levels[i], levels[k], run.markov_rate(static_cast<long>(levels[k] - levels[i])), {}, {}};
      if (do_analytic) f.analytic = try_fit(times, analytic, f.n, f.ntilde);
      if (do_numeric) f.numeric = try_fit(times, numeric, f.n, f.ntilde);
      fits.push_back(f);
    }
  }
  auto opt_machine = [](const std::optional<double>& v) { return v ? format_machine(*v) : std::string("n/a"); };

  if (g.output == "csv") {
    auto meta = metadata(g);
    meta.push_back("state=" + a.state);
    meta.push_back("C=" + format_machine(a.coupling) + " T_K=" + format_machine(T_K) +
                   " omega0=" + format_machine(a.omega0) + " nmax=" + std::to_string(a.nmax));
    write_csv_comments(os, meta);
    write_evolution_header(os);
    if (do_analytic) {
      os << "# method=analytic\n";
      write_evolution_rows(os, times, analytic, levels);
    }
    if (do_numeric) {
      os << "# method=numeric\n";
      write_evolution_rows(os, times, numeric, levels);
    }
    std::string line = "# fit decay_rate_per_s";
    for (const auto& f : fits) {
      line += " n=" + std::to_string(f.n) + ",ntilde=" + std::to_string(f.ntilde) + ",markov=" +
              format_machine(f.markov) + ",analytic=" + opt_machine(f.analytic) + ",numeric=" + opt_machine(f.numeric) +
              ";";
    }
    if (fits.empty()) line += " none";
    os << line << '\n';
    return;
  }

  if (g.output == "json") {
    json j;
    j["parameters"] = {{"C", a.coupling},   {"T_K", T_K},       {"omega0", a.omega0}, {"tmax", a.tmax},
                       {"steps", a.steps}, {"nmax", a.nmax},   {"state", a.state}};
    j["times"] = times;
    j["series"] = json::array();
    auto add = [&](const char* method, const std::vector<FockDensityMatrix>& states) {
      for (std::size_t i = 0; i < levels.size(); ++i) {
        for (std::size_t k = i; k < levels.size(); ++k) {
          std::vector<double> re, im, ab;
          for (const auto& s : states) {
            const auto v = s(levels[i], levels[k]);
            re.push_back(v.real());
            im.push_back(v.imag());
            ab.push_back(std::abs(v));
          }
          j["series"].push_back(
              {{"method", method}, {"n", levels[i]}, {"ntilde", levels[k]}, {"re", re}, {"im", im}, {"abs", ab}});
        }
      }
    };
    if (do_analytic) add("analytic", analytic);
    if (do_numeric) add("numeric", numeric);
    j["fits"] = json::array();
    for (const auto& f : fits) {
      j["fits"].push_back({{"n", f.n},
                           {"ntilde", f.ntilde},
                           {"markov_rate_per_s", f.markov},
                           {"analytic_rate_per_s", f.analytic ? json(*f.analytic) : json(nullptr)},
                           {"numeric_rate_per_s", f.numeric ? json(*f.numeric) : json(nullptr)}});
    }
    os << j.dump(2) << '\n';
    return;
  }

  auto opt_table = [](const std::optional<double>& v) { return v ? format_table(*v) : std::string("n/a"); };
  std::vector<std::vector<std::string>> rows{
      {"n", "ntilde", "abs_t0", "abs_final_analytic", "abs_final_numeric", "markov_rate", "fit_analytic", "fit_numeric"}};
  for (const auto& f : fits) {
    rows.push_back({std::to_string(f.n), std::to_string(f.ntilde), format_table(std::abs(rho0(f.n, f.ntilde))),
                    do_analytic ? format_table(std::abs(analytic.back()(f.n, f.ntilde))) : "n/a",
                    do_numeric ? format_table(std::abs(numeric.back()(f.n, f.ntilde))) : "n/a", format_table(f.markov),
                    opt_table(f.analytic), opt_table(f.numeric)});
  }
  write_table(os, rows);
}

// ---- kernel -------------------------------------------------------------

struct KernelArgs {
  std::string which = "N";
  double r = 1.0;
  double t = 0.0;
  double temp = 0.0;
  double epsilon = 1e-3;
  double kappa = 4.0;
  std::string grid;
  std::optional<std::size_t> n_terms;
};

void run_kernel(const Global& g, const KernelArgs& a, std::ostream& os) {
  KernelParams p;
  p.kappa = a.kappa;
  p.temperature = a.temp;
  p.epsilon = a.epsilon;
  p.tol = g.tol;
  if (a.n_terms) p.n_terms = *a.n_terms;
  p.validate();

  std::vector<double> rs{a.r}, ts{a.t};
  if (!a.grid.empty()) {
    const GridSpec spec = parse_grid_spec(a.grid);
    if (spec.r) rs = spec.r->points();
    if (spec.t) ts = spec.t->points();
  }

  std::vector<KernelSample> samples;
  for (double r : rs) {
    for (double t : ts) {
      KernelValue v;
      if (a.which == "N") {
        v = noise_kernel(r, t, p);
      } else if (a.which == "D") {
        v = dissipation_kernel(r, t, p);
      } else {
        v = time_integrated_noise(r, t, p);
        if (!v.limit_regime) {
          std::cerr << "warning: t_max=" << format_machine(t) << " is short of the long-time regime at r="
                    << format_machine(r) << '\n';
        }
      }
      samples.push_back({r, t, v});
    }
  }

  if (g.output == "csv") {
    auto meta = metadata(g);
    meta.push_back("which=" + a.which + " kappa=" + format_machine(a.kappa) + " T=" + format_machine(a.temp) +
                   " epsilon=" + format_machine(a.epsilon));
    if (a.which == "intN") meta.push_back("t is t_max; long-time limit=" + format_machine(markov_noise_limit(p)));
    write_csv_comments(os, meta);
    write_kernel_csv(os, samples);
  } else if (g.output == "json") {
    json arr = json::array();
    for (const auto& s : samples) {
      arr.push_back({{"r", s.r},
                     {"t", s.t},
                     {"value", s.value.value},
                     {"err", s.value.err_estimate},
                     {"method", std::string(to_string(s.value.method))}});
    }
    os << arr.dump(2) << '\n';
  } else {
    std::vector<std::vector<std::string>> rows{{"r", "t", "value", "err", "method"}};
    for (const auto& s : samples) {
      rows.push_back({format_table(s.r), format_table(s.t), format_table(s.value.value),
                      format_table(s.value.err_estimate), std::string(to_string(s.value.method))});
    }
    write_table(os, rows);
  }
}

// ---- ball ---------------------------------------------------------------

struct BallArgs {
  double m = 1.0;
  double phi0 = 1.0;
  double radius = 1.0;
  std::string r0 = "0,0,0";
  std::string pair;
  std::optional<double> temp;
};

Vec3 vec3(const std::vector<double>& v, std::size_t offset = 0) { return {v[offset], v[offset + 1], v[offset + 2]}; }

void run_ball(const Global& g, const BallArgs& a, std::ostream& os) {
  const NaturalUnits units = NaturalUnits::gev();
  const GaussianBall ball(a.phi0, vec3(parse_number_list(a.r0, 3)), a.radius, a.m);
  const bool csv = g.output == "csv";
  auto num = [&](double v) { return g.output == "table" ? format_table(v) : format_machine(v); };

  if (a.pair.empty()) {
    if (a.temp) throw std::invalid_argument("--temp only applies together with --pair");
    const double E = checked_rest_energy(ball);
    const double E_J = units.energy_to_si(E);
    if (g.output == "json") {
      os << json{{"rest_energy_GeV", E}, {"rest_energy_J", E_J}, {"compton_ok", ball.compton_ok()}}.dump(2) << '\n';
      return;
    }
    if (csv) {
      auto meta = metadata(g);
      meta.push_back("ball phi0=" + format_machine(a.phi0) + " R=" + format_machine(a.radius) +
                     " m=" + format_machine(a.m) + " r0=" + a.r0);
      meta.push_back("rest_energy_GeV=" + format_machine(E) + " rest_energy_J=" + format_machine(E_J) +
                     " compton_ok=" + (ball.compton_ok() ? "true" : "false"));
      write_csv_comments(os, meta);
      write_ball_profile_csv(os, ball, FieldGrid::centered(ball.center(), 3.0 * a.radius, 0.5 * a.radius));
      return;
    }
    write_table(os, {{"quantity", "value"},
                     {"rest_energy_GeV", num(E)},
                     {"rest_energy_J", num(E_J)},
                     {"compton_ok", ball.compton_ok() ? "true" : "false"}});
    return;
  }

  if (!a.temp) throw std::invalid_argument("--pair needs --temp");
  const auto spec = parse_number_list(a.pair, 5);
  const BallSuperposition sup(ball, GaussianBall(spec[0], vec3(spec, 2), spec[1], a.m));
  const KernelParams params = KernelParams::from_constants(units, *a.temp, 1e-15, g.tol);
  const RateResult functional = rate_from_balls(sup, *a.temp, params, units);
  const RateResult closed = decoherence_rate(std::abs(functional.delta_E), *a.temp, units.constants(),
                                             {functional.markov_time, functional.flags.compton_ok});
  const double rel_diff =
      closed.rate == 0.0 ? std::abs(functional.rate) : std::abs(functional.rate - closed.rate) / closed.rate;
  const double dE_GeV = rest_energy(sup.a()) - rest_energy(sup.b());

  if (g.output == "json") {
    json j{{"delta_E_GeV", dE_GeV},
           {"functional", to_json(functional)},
           {"closed_form", to_json(closed)},
           {"rate_rel_diff", rel_diff}};
    os << j.dump(2) << '\n';
    return;
  }
  const std::vector<std::string> names{"delta_E_GeV", "delta_E_J",     "rate_functional_per_s", "rate_closed_per_s",
                                       "rate_rel_diff", "markov_time_s", "high_T_ok",             "markov_ok",
                                       "compton_ok"};
  const std::vector<std::string> values{num(dE_GeV),
                                        num(functional.delta_E),
                                        num(functional.rate),
                                        num(closed.rate),
                                        num(rel_diff),
                                        num(functional.markov_time.value_or(NAN)),
                                        flag_table(functional.flags.high_T_ok),
                                        flag_table(functional.flags.markov_ok),
                                        flag_table(functional.flags.compton_ok)};
  if (csv) {
    write_csv_comments(os, metadata(g));
    os << join(names) << '\n' << join(values) << '\n';
    return;
  }
  std::vector<std::vector<std::string>> rows{{"quantity", "value"}};
  for (std::size_t i = 0; i < names.size(); ++i) rows.push_back({names[i], values[i]});
  write_table(os, rows);
}

std::string command_line(int argc, char** argv) {
  std::string out = std::filesystem::path(argv[0]).filename().string();
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg.find_first_of(" \t\"'") != std::string::npos) {
      std::ostringstream q;
      q << std::quoted(arg);
      arg = q.str();
    }
    out += ' ' + arg;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decoherence of matter superpositions by a thermal graviton bath"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();
  app.config_formatter(std::make_shared<JsonConfig>());
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "Optional JSON config; command-line flags take precedence")->envname("GRAVIDEC_CONFIG");

  Global g;
  app.add_option("--output", g.output, "table, json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", g.out_path, "Write data to this file instead of stdout");
  app.add_option("--unit-mode", g.unit_mode, "SI or natural (GeV)")->capture_default_str();
  app.add_option("--tol", g.tol, "Kernel tolerance (absolute, relative above 1)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--ode-rtol", g.ode_rtol, "Relative tolerance of the dephasing integrator")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--ode-max-steps", g.ode_max_steps, "Integrator step cap per output interval")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  RateArgs rate;
  auto* rate_cmd = app.add_subcommand("rate", "Born-Markov decoherence rate for an energy gap");
  rate_cmd->add_option("--delta-e", rate.delta_e, "Energy gap with unit: J, eV, GeV, kg, atoms")->required();
  rate_cmd->add_option("--temp", rate.temp, "Bath temperature (K; GeV in natural mode)")->required();

  std::string scenario_name;
  auto* scenario_cmd = app.add_subcommand("scenario", "Preset atom, gram and kilogram scenarios");
  scenario_cmd->add_option("--name", scenario_name, "atom_1eV, gram_avogadro, kilogram or all")->required();

  EvolveArgs evolve;
  auto* evolve_cmd = app.add_subcommand("evolve", "Pure dephasing of an oscillator in an Ohmic bath");
  evolve_cmd->add_option("--nmax", evolve.nmax, "Highest retained Fock level")->capture_default_str();
  evolve_cmd->add_option("--c", evolve.coupling, "Dimensionless coupling C")->capture_default_str();
  auto* temp_opt = evolve_cmd->add_option("--temp", evolve.temp, "Bath temperature, K");
  evolve_cmd->add_option("--thermal-rate", evolve.thermal_rate, "k_B T / hbar in s^-1")->excludes(temp_opt);
  evolve_cmd->add_option("--omega0", evolve.omega0, "System frequency, rad/s")->capture_default_str();
  evolve_cmd->add_option("--tmax", evolve.tmax, "End time, s")->required();
  evolve_cmd->add_option("--steps", evolve.steps, "Grid intervals")->capture_default_str();
  evolve_cmd->add_option("--state", evolve.state, "Initial superposition n:re[:im],...")->capture_default_str();
  evolve_cmd->add_option("--levels", evolve.levels, "Levels to print (default: those in --state)");
  evolve_cmd->add_option("--cutoff", evolve.cutoff, "Bath cutoff frequency, rad/s");
  evolve_cmd->add_option("--method", evolve.method, "analytic, numeric or both")
      ->check(CLI::IsMember({"analytic", "numeric", "both"}))
      ->capture_default_str();

  KernelArgs kernel;
  auto* kernel_cmd = app.add_subcommand("kernel", "Graviton noise and dissipation kernels (natural units)");
  kernel_cmd->add_option("--which", kernel.which, "N, D or intN")
      ->check(CLI::IsMember({"N", "D", "intN"}))
      ->capture_default_str();
  kernel_cmd->add_option("--r", kernel.r, "Separation")->capture_default_str();
  kernel_cmd->add_option("--t", kernel.t, "Time (t_max for intN)")->capture_default_str();
  kernel_cmd->add_option("--temp", kernel.temp, "Temperature")->capture_default_str();
  kernel_cmd->add_option("--epsilon", kernel.epsilon, "UV regulator")->capture_default_str();
  kernel_cmd->add_option("--kappa", kernel.kappa, "Coupling sqrt(32 pi G)")->capture_default_str();
  kernel_cmd->add_option("--grid", kernel.grid, "r=a:b:n,t=a:b:n; overrides --r/--t");
  kernel_cmd->add_option("--n-terms", kernel.n_terms, "Cap on explicit thermal-series terms");

  BallArgs ball;
  auto* ball_cmd = app.add_subcommand("ball", "Gaussian matter balls (natural units, GeV)");
  ball_cmd->add_option("--m", ball.m, "Field mass")->capture_default_str();
  ball_cmd->add_option("--phi0", ball.phi0, "Central field value")->capture_default_str();
  ball_cmd->add_option("--radius", ball.radius, "Radius R")->capture_default_str();
  ball_cmd->add_option("--r0", ball.r0, "Centre x,y,z")->capture_default_str();
  ball_cmd->add_option("--pair", ball.pair, "Second ball phi0,R,x,y,z (same mass)");
  ball_cmd->add_option("--temp", ball.temp, "Bath temperature for --pair, K");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }
  g.command_line = command_line(argc, argv);

  try {
    parse_unit_mode(g.unit_mode);
    std::ofstream file;
    if (!g.out_path.empty()) {
      file.open(g.out_path);
      if (!file) throw std::invalid_argument("cannot open output file '" + g.out_path + "'");
    }
    std::ostream& os = g.out_path.empty() ? std::cout : file;

    if (*rate_cmd) run_rate(g, rate, os);
    if (*scenario_cmd) run_scenario(g, scenario_name, os);
    if (*evolve_cmd) run_evolve(g, evolve, os);
    if (*kernel_cmd) run_kernel(g, kernel, os);
    if (*ball_cmd) run_ball(g, ball, os);
    os.flush();
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << " (achieved error " << format_machine(e.achieved_error())
              << ", partial value " << format_machine(e.partial_value()) << ")\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
