#include "gravidec/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace gravidec {

namespace {

std::string format_with(double value, const char* spec) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, value);
  return buf;
}

std::string quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  while (true) {
    const std::size_t end = text.find(sep, begin);
    parts.push_back(text.substr(begin, end == std::string_view::npos ? std::string_view::npos : end - begin));
    if (end == std::string_view::npos) break;
    begin = end + 1;
  }
  return parts;
}

// Parses a full token as a finite double.
double parse_number(std::string_view token, std::string_view what) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value) || token.empty()) {
    throw std::invalid_argument("invalid " + std::string(what) + " " + quoted(token));
  }
  return value;
}

std::size_t parse_count(std::string_view token, std::string_view what) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
    throw std::invalid_argument("invalid " + std::string(what) + " " + quoted(token));
  }
  return value;
}

template <class T>
nlohmann::json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <class T>
std::optional<T> optional_from(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

}  // namespace

std::string format_machine(double value) { return format_with(value, "%.17g"); }

std::string format_table(double value) { return format_with(value, "%.4g"); }

nlohmann::json to_json(const RateResult& r) {
  nlohmann::json j;
  j["rate_per_s"] = r.rate;
  j["delta_E_J"] = r.delta_E;
  j["T_K"] = r.T;
  // JSON has no infinity; null marks a coherence time that never ends.
  j["coherence_time_s"] = std::isfinite(r.coherence_time) ? nlohmann::json(r.coherence_time) : nlohmann::json(nullptr);
  j["markov_time_s"] = optional_json(r.markov_time);
  j["flags"] = {{"high_T_ok", optional_json(r.flags.high_T_ok)},
                {"markov_ok", optional_json(r.flags.markov_ok)},
                {"compton_ok", optional_json(r.flags.compton_ok)}};
  return j;
}

RateResult rate_result_from_json(const nlohmann::json& j) {
  RateResult r;
  r.rate = j.at("rate_per_s").get<double>();
  r.delta_E = j.at("delta_E_J").get<double>();
  r.T = j.at("T_K").get<double>();
  const auto& ct = j.at("coherence_time_s");
  r.coherence_time = ct.is_null() ? std::numeric_limits<double>::infinity() : ct.get<double>();
  r.markov_time = optional_from<double>(j.at("markov_time_s"));
  const auto& f = j.at("flags");
  r.flags.high_T_ok = optional_from<bool>(f.at("high_T_ok"));
  r.flags.markov_ok = optional_from<bool>(f.at("markov_ok"));
  r.flags.compton_ok = optional_from<bool>(f.at("compton_ok"));
  return r;
}

void write_csv_comments(std::ostream& os, const std::vector<std::string>& lines) {
  for (const auto& line : lines) os << "# " << line << '\n';
}

void write_evolution_header(std::ostream& os) { os << "t,n,ntilde,re,im,abs\n"; }

void write_evolution_rows(std::ostream& os, const std::vector<double>& times,
                          const std::vector<FockDensityMatrix>& states, const std::vector<std::size_t>& levels) {
  for (std::size_t s = 0; s < states.size(); ++s) {
    for (std::size_t a = 0; a < levels.size(); ++a) {
      for (std::size_t b = a; b < levels.size(); ++b) {
        const auto v = states[s](levels[a], levels[b]);
        os << format_machine(times[s]) << ',' << levels[a] << ',' << levels[b] << ',' << format_machine(v.real())
           << ',' << format_machine(v.imag()) << ',' << format_machine(std::abs(v)) << '\n';
      }
    }
  }
}

void write_kernel_csv(std::ostream& os, const std::vector<KernelSample>& samples) {
  os << "r,t,value,err,method\n";
  for (const auto& s : samples) {
    os << format_machine(s.r) << ',' << format_machine(s.t) << ',' << format_machine(s.value.value) << ','
       << format_machine(s.value.err_estimate) << ',' << to_string(s.value.method) << '\n';
  }
}

void write_ball_profile_csv(std::ostream& os, const GaussianBall& ball, const FieldGrid& layout) {
  os << "x,y,z,phi,t00\n";
  for (std::size_t k = 0; k < layout.shape[2]; ++k)
    for (std::size_t j = 0; j < layout.shape[1]; ++j)
      for (std::size_t i = 0; i < layout.shape[0]; ++i) {
        const Vec3 p = layout.position(i, j, k);
        os << format_machine(p[0]) << ',' << format_machine(p[1]) << ',' << format_machine(p[2]) << ','
           << format_machine(field_expectation(ball, p)) << ',' << format_machine(energy_density(ball, p)) << '\n';
      }
}

EnergyValue parse_energy(std::string_view token) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || !std::isfinite(value)) {
    throw std::invalid_argument("invalid energy " + quoted(token) + ": expected <number><unit>, e.g. 1eV");
  }
  const std::string_view suffix(ptr, static_cast<std::size_t>(last - ptr));
  if (suffix.empty()) {
    throw std::invalid_argument("energy " + quoted(token) + " has no unit; use J, eV, GeV, kg or atoms");
  }
  try {
    return {value, parse_energy_unit(suffix)};
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("invalid energy " + quoted(token) + ": unknown unit " + quoted(suffix));
  }
}

std::vector<std::pair<std::size_t, std::complex<double>>> parse_state_spec(std::string_view spec) {
  std::vector<std::pair<std::size_t, std::complex<double>>> terms;
  if (spec.empty()) throw std::invalid_argument("empty state spec");
  for (std::string_view item : split(spec, ',')) {
    const auto fields = split(item, ':');
    if (fields.size() < 2 || fields.size() > 3) {
      throw std::invalid_argument("state term " + quoted(item) + " must be n:re or n:re:im");
    }
    const std::size_t n = parse_count(fields[0], "Fock level");
    const double re = parse_number(fields[1], "amplitude");
    const double im = fields.size() == 3 ? parse_number(fields[2], "amplitude") : 0.0;
    for (const auto& t : terms) {
      if (t.first == n) throw std::invalid_argument("Fock level " + std::to_string(n) + " listed twice");
    }
    terms.emplace_back(n, std::complex<double>(re, im));
  }
  return terms;
}

std::vector<double> Axis::points() const {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = count == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  if (count > 1) out.back() = stop;
  return out;
}

GridSpec parse_grid_spec(std::string_view spec) {
  GridSpec grid;
  if (spec.empty()) throw std::invalid_argument("empty grid spec");
  for (std::string_view item : split(spec, ',')) {
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("grid axis " + quoted(item) + " must be name=a:b:n");
    const std::string_view name = item.substr(0, eq);
    const auto fields = split(item.substr(eq + 1), ':');
    if (fields.size() != 3) throw std::invalid_argument("grid axis " + quoted(item) + " must be name=a:b:n");
    Axis axis{parse_number(fields[0], "grid bound"), parse_number(fields[1], "grid bound"),
              parse_count(fields[2], "grid count")};
    if (axis.count == 0) throw std::invalid_argument("grid axis " + quoted(item) + " needs at least one point");
    if (name == "r" && !grid.r) {
      grid.r = axis;
    } else if (name == "t" && !grid.t) {
      grid.t = axis;
    } else {
      throw std::invalid_argument("unknown or repeated grid axis " + quoted(name));
    }
  }
  return grid;
}

std::vector<double> parse_number_list(std::string_view text, std::size_t count) {
  const auto fields = split(text, ',');
  if (fields.size() != count) {
    throw std::invalid_argument("expected " + std::to_string(count) + " comma-separated numbers in " + quoted(text));
  }
  std::vector<double> out;
  for (auto f : fields) out.push_back(parse_number(f, "number"));
  return out;
}

}  // namespace gravidec
