#pragma once

#include <cstdint>
#include <set>
#include <string>

#include "core/classical.hpp"
#include "core/signal.hpp"
#include "core/units.hpp"

namespace dwell {

enum class Experiment {
  prepare,
  track_displacement,
  ramsey_scan,
  classical_compare,
  ensemble_signal,
  validate,
};

const char* to_string(Experiment e);

// Flat, strictly validated run configuration. Unknown keys, duplicate keys,
// missing required keys and out-of-range values are parse errors naming the
// key. Every unset key gets a documented default; grid and time defaults
// depend on the experiment and are resolved at parse time.
struct RunConfig {
  Experiment experiment = Experiment::validate;

  // grid
  int n_points = 0;      // 0: per-experiment default
  double x_min = 0.0;
  double x_max = 0.0;

  // physics (natural units unless noted)
  double v1 = 35.0;      // long-lattice depth at preparation start (E_r)
  double v2 = 35.0;      // short-lattice depth (E_r)
  double delta = 0.3;    // inter-well bias (E_r)
  double theta = 0.0;    // initial superposition phase
  double gamma = 0.1;    // dephasing rate (E_r/hbar)
  double omega_t_hz = 50.0;  // global trap frequency (Hz, SI input)
  int n_wells = 40;

  // unit system (SI side, for conversions only)
  double lambda_nm = 800.0;
  double atom_mass_kg = 1.45e-25;

  // numerics
  double dt = 1e-3;
  double t_delta = 0.0;    // 0: 8/omega
  double t_final = 0.0;    // 0: per-experiment default
  double sample_dt = 0.0;  // 0: (2 pi hbar/delta)/64 quantum, 0.1 classical
  double ramp_time = 0.0;  // 0: auto from the even-gap estimate
  long n_trajectories = 10000;
  std::uint64_t seed = 12345;
  long atoms_per_point = 0;  // 0: no shot-noise overlay

  // choices
  SignalMode mode = SignalMode::closed_form;
  bool lattice_potential = false;  // track/ramsey: full lattice pipeline
  WellLayout layout = WellLayout::uniform;
  EnsembleKind classical_ensemble = EnsembleKind::wigner_matched;

  std::set<std::string> defaulted_keys;  // keys not given explicitly

  static RunConfig parse(const std::string& text);

  units::SiConstants si() const;
  double omega() const { return units::trap_frequency(v2); }
  double omega_t_natural() const { return si().frequency_hz_to_natural(omega_t_hz); }
  double resolved_t_delta() const { return t_delta > 0.0 ? t_delta : 8.0 / omega(); }
  double resolved_sample_dt() const;
};

}  // namespace dwell
