#pragma once

#include <cstdint>
#include <iosfwd>

#include "core/propagator.hpp"

namespace dwell {

enum class SignalMode { closed_form, full_quantum };
enum class WellLayout { uniform, random_in_trap };

// Parameters of the trap-averaged measurement signal. Per-well bias
// delta_j = delta + m omega_t^2 L x_j, where x_j is the double-well center.
struct SignalConfig {
  int n_wells = 40;
  double omega_t = 0.0;     // global trap frequency (natural units)
  double delta = 0.3;       // bias (E_r)
  double gamma = 0.1;       // dephasing rate (E_r/hbar)
  std::vector<double> well_positions;  // empty: built from layout
  WellLayout layout = WellLayout::uniform;
  std::uint64_t layout_seed = 1;
  double t_final = 60.0;
  double sample_dt = 0.0;   // 0: (2 pi hbar / delta) / 64
  SignalMode mode = SignalMode::closed_form;
  double v2 = 35.0;         // sets the well frequency for full_quantum mode
  int n_points = 2048;      // grid size for full_quantum mode

  std::vector<double> resolved_positions() const;
  double resolved_sample_dt() const;
  double bias_for_well(double x_j) const;

  void validate() const;
};

struct EnsembleSignal {
  std::vector<double> times;
  std::vector<double> signal;  // <P_down - P_up>(t)
  std::vector<double> spectrum_freqs;  // angular, E_r/hbar
  std::vector<double> spectrum_mag;
  double peak_freq = 0.0;
  double fwhm = 0.0;
  double bin_width = 0.0;  // 2 pi / record length (unpadded resolution)

  void write_signal_csv(std::ostream& os) const;    // time, signal
  void write_spectrum_csv(std::ostream& os) const;  // freq, magnitude
};

// Closed form: signal(t) = (1/2N) sum_j cos(delta_j t) e^{-gamma t}.
EnsembleSignal closed_form_signal(const SignalConfig& cfg);

// Per-well quantum pipeline: one shared adiabatic preparation, then each well
// evolves under its own bias delta_j and is read out with the interferometric
// protocol at every sample time; the same multiplicative e^{-gamma t}
// dephasing envelope is applied. Wells run in parallel; the average is a
// fixed-order reduction.
EnsembleSignal full_quantum_signal(const SignalConfig& cfg, const PropagatorConfig& prop);

// Magnitude spectrum of the mean-subtracted signal over positive
// frequencies; fills spectrum_freqs/spectrum_mag/peak_freq/fwhm/bin_width.
// pad_factor >= 1 zero-pads the record to interpolate the spectrum;
// hann applies a Hann window first.
void compute_spectrum(EnsembleSignal& sig, int pad_factor = 8, bool hann = false);

// Binomial finite-atom sampling of each signal point; deterministic in seed.
EnsembleSignal shot_noise_overlay(const EnsembleSignal& sig, long atoms_per_point,
                                  std::uint64_t seed);

}  // namespace dwell
