#include "core/config.hpp"

#include <charconv>
#include <map>
#include <sstream>

#include "core/errors.hpp"

namespace dwell {

const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::prepare: return "prepare";
    case Experiment::track_displacement: return "track_displacement";
    case Experiment::ramsey_scan: return "ramsey_scan";
    case Experiment::classical_compare: return "classical_compare";
    case Experiment::ensemble_signal: return "ensemble_signal";
    case Experiment::validate: return "validate";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

// key = value lines; '#' starts a comment; blank lines ignored.
std::map<std::string, std::string> tokenize(const std::string& text) {
  std::map<std::string, std::string> entries;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config line " + std::to_string(line_no) + " is not 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw config_error("config line " + std::to_string(line_no) + " is missing a key or value");
    if (entries.count(key)) throw config_error("duplicate configuration key '" + key + "'");
    entries[key] = value;
  }
  return entries;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw config_error("value for key '" + key + "' is not a number: '" + value + "'");
  }
}

long parse_long(const std::string& key, const std::string& value) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw config_error("value for key '" + key + "' is not an integer: '" + value + "'");
  return v;
}

std::uint64_t parse_seed(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw config_error("value for key '" + key + "' is not a non-negative integer: '" + value +
                       "'");
  return v;
}

[[noreturn]] void out_of_range(const std::string& key, const std::string& why) {
  throw config_error("value for key '" + key + "' is out of range: " + why);
}

}  // namespace

units::SiConstants RunConfig::si() const {
  units::SiConstants c;
  c.atom_mass_kg = atom_mass_kg;
  c.lambda_m = lambda_nm * 1e-9;
  return c;
}

double RunConfig::resolved_sample_dt() const {
  if (sample_dt > 0.0) return sample_dt;
  if (experiment == Experiment::classical_compare) return 0.1;
  const double base = delta > 0.0 ? delta : 0.3;
  return (2.0 * std::numbers::pi * units::hbar / base) / 64.0;
}

RunConfig RunConfig::parse(const std::string& text) {
  auto entries = tokenize(text);
  RunConfig cfg;

  const auto take = [&](const char* key) -> std::string {
    auto it = entries.find(key);
    if (it == entries.end()) {
      cfg.defaulted_keys.insert(key);
      return "";
    }
    std::string value = it->second;
    entries.erase(it);
    return value;
  };

  if (std::string v = take("experiment"); !v.empty()) {
    if (v == "prepare") cfg.experiment = Experiment::prepare;
    else if (v == "track_displacement") cfg.experiment = Experiment::track_displacement;
    else if (v == "ramsey_scan") cfg.experiment = Experiment::ramsey_scan;
    else if (v == "classical_compare") cfg.experiment = Experiment::classical_compare;
    else if (v == "ensemble_signal") cfg.experiment = Experiment::ensemble_signal;
    else if (v == "validate") cfg.experiment = Experiment::validate;
    else out_of_range("experiment", "unknown experiment '" + v + "'");
  } else {
    throw config_error("missing required key 'experiment'");
  }

  if (std::string v = take("n_points"); !v.empty()) {
    const long n = parse_long("n_points", v);
    if (n < 2) out_of_range("n_points", "must be >= 2");
    cfg.n_points = static_cast<int>(n);
  }
  if (std::string v = take("x_min"); !v.empty()) cfg.x_min = parse_double("x_min", v);
  if (std::string v = take("x_max"); !v.empty()) cfg.x_max = parse_double("x_max", v);

  if (std::string v = take("v1"); !v.empty()) {
    cfg.v1 = parse_double("v1", v);
    if (cfg.v1 < 0.0) out_of_range("v1", "lattice depth must be >= 0");
  }
  if (std::string v = take("v2"); !v.empty()) {
    cfg.v2 = parse_double("v2", v);
    if (cfg.v2 < 0.0) out_of_range("v2", "lattice depth must be >= 0");
  }
  if (std::string v = take("delta"); !v.empty()) {
    cfg.delta = parse_double("delta", v);
    if (cfg.delta < 0.0) out_of_range("delta", "bias must be >= 0 by sign convention");
  }
  if (std::string v = take("theta"); !v.empty()) cfg.theta = parse_double("theta", v);
  if (std::string v = take("gamma"); !v.empty()) {
    cfg.gamma = parse_double("gamma", v);
    if (cfg.gamma < 0.0) out_of_range("gamma", "dephasing rate must be >= 0");
  }
  if (std::string v = take("omega_t_hz"); !v.empty()) {
    cfg.omega_t_hz = parse_double("omega_t_hz", v);
    if (cfg.omega_t_hz < 0.0) out_of_range("omega_t_hz", "trap frequency must be >= 0");
  }
  if (std::string v = take("n_wells"); !v.empty()) {
    const long n = parse_long("n_wells", v);
    if (n < 1) out_of_range("n_wells", "must be >= 1");
    cfg.n_wells = static_cast<int>(n);
  }

  if (std::string v = take("lambda_nm"); !v.empty()) {
    cfg.lambda_nm = parse_double("lambda_nm", v);
    if (!(cfg.lambda_nm > 0.0)) out_of_range("lambda_nm", "wavelength must be > 0");
  }
  if (std::string v = take("atom_mass_kg"); !v.empty()) {
    cfg.atom_mass_kg = parse_double("atom_mass_kg", v);
    if (!(cfg.atom_mass_kg > 0.0)) out_of_range("atom_mass_kg", "mass must be > 0");
  }

  if (std::string v = take("dt"); !v.empty()) {
    cfg.dt = parse_double("dt", v);
    if (!(cfg.dt > 0.0)) out_of_range("dt", "time step must be > 0");
  }
  if (std::string v = take("t_delta"); !v.empty()) {
    cfg.t_delta = parse_double("t_delta", v);
    if (cfg.t_delta < 0.0) out_of_range("t_delta", "must be >= 0 (0 = default 8/omega)");
  }
  if (std::string v = take("t_final"); !v.empty()) {
    cfg.t_final = parse_double("t_final", v);
    if (!(cfg.t_final > 0.0)) out_of_range("t_final", "must be > 0");
  }
  if (std::string v = take("sample_dt"); !v.empty()) {
    cfg.sample_dt = parse_double("sample_dt", v);
    if (cfg.sample_dt < 0.0) out_of_range("sample_dt", "must be >= 0 (0 = default)");
  }
  if (std::string v = take("ramp_time"); !v.empty()) {
    cfg.ramp_time = parse_double("ramp_time", v);
    if (cfg.ramp_time < 0.0) out_of_range("ramp_time", "must be >= 0 (0 = auto)");
  }
  if (std::string v = take("n_trajectories"); !v.empty()) {
    cfg.n_trajectories = parse_long("n_trajectories", v);
    if (cfg.n_trajectories < 1) out_of_range("n_trajectories", "must be >= 1");
  }
  if (std::string v = take("seed"); !v.empty()) cfg.seed = parse_seed("seed", v);
  if (std::string v = take("atoms_per_point"); !v.empty()) {
    cfg.atoms_per_point = parse_long("atoms_per_point", v);
    if (cfg.atoms_per_point < 0) out_of_range("atoms_per_point", "must be >= 0 (0 = off)");
  }

  if (std::string v = take("mode"); !v.empty()) {
    if (v == "closed_form") cfg.mode = SignalMode::closed_form;
    else if (v == "full_quantum") cfg.mode = SignalMode::full_quantum;
    else out_of_range("mode", "expected closed_form or full_quantum");
  }
  if (std::string v = take("potential"); !v.empty()) {
    if (v == "ideal") cfg.lattice_potential = false;
    else if (v == "lattice") cfg.lattice_potential = true;
    else out_of_range("potential", "expected ideal or lattice");
  }
  if (std::string v = take("classical_ensemble"); !v.empty()) {
    if (v == "wigner") cfg.classical_ensemble = EnsembleKind::wigner_matched;
    else if (v == "microcanonical") cfg.classical_ensemble = EnsembleKind::microcanonical_shell;
    else out_of_range("classical_ensemble", "expected wigner or microcanonical");
  }
  if (std::string v = take("well_layout"); !v.empty()) {
    if (v == "uniform") cfg.layout = WellLayout::uniform;
    else if (v == "random_in_trap") cfg.layout = WellLayout::random_in_trap;
    else out_of_range("well_layout", "expected uniform or random_in_trap");
  }

  if (!entries.empty())
    throw config_error("unknown configuration key '" + entries.begin()->first + "'");

  // Per-experiment grid and time defaults. Lattice runs need a domain
  // commensurate with the 2L period of the long lattice.
  const bool lattice_grid = cfg.experiment == Experiment::prepare ||
                            cfg.experiment == Experiment::ensemble_signal ||
                            cfg.lattice_potential;
  if (cfg.n_points == 0) cfg.n_points = lattice_grid ? 2048 : 1024;
  const bool have_min = !cfg.defaulted_keys.count("x_min");
  const bool have_max = !cfg.defaulted_keys.count("x_max");
  if (have_min != have_max)
    throw config_error("x_min and x_max must be given together");
  if (!have_min) {
    cfg.x_min = lattice_grid ? -2.0 : -1.5;
    cfg.x_max = lattice_grid ? 2.0 : 1.5;
  }
  if (!(cfg.x_max > cfg.x_min)) out_of_range("x_max", "must exceed x_min");
  if (cfg.t_final == 0.0) {
    switch (cfg.experiment) {
      case Experiment::track_displacement:
      case Experiment::ramsey_scan:
        // three bias periods
        cfg.t_final = 3.0 * 2.0 * std::numbers::pi / (cfg.delta > 0.0 ? cfg.delta : 0.3);
        break;
      default:
        cfg.t_final = 60.0;
    }
  }
  return cfg;
}

}  // namespace dwell
