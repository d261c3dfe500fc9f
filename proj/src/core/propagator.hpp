#pragma once

#include <functional>
#include <limits>
#include <utility>

#include "core/potential.hpp"

namespace dwell {

struct PropagatorConfig {
  double dt = 1e-3;                        // real-time step (t0)
  int order = 2;                           // Strang splitting only
  double norm_tolerance = 1e-6;            // sanity bound on norm drift per run
  double boundary_amplitude_limit = 1e-8;  // periodic-domain validity threshold
  int boundary_check_interval = 256;       // steps between boundary checks

  // Imaginary-time ground-state search: the step starts at dtau_initial and
  // is reduced stagewise to dtau_min to remove the Trotter bias from the
  // converged state.
  double dtau_initial = 2e-2;
  double dtau_min = 2e-4;
  double energy_tolerance = 1e-12;  // energy change per step at convergence
  int max_iterations = 400000;

  void validate() const;
};

// H = p^2/2m + V(x) expectation value of a (not necessarily normalized) state.
double energy(const ComplexField& psi, const ComplexField& potential);

// One Strang step exp(-i H dt): half potential kick, full spectral kinetic
// step, half potential kick. V is the snapshot to use across the step.
// Enforces the phase-wrap guard dt max|V| < 0.5.
ComplexField step_real_time(const ComplexField& psi, const ComplexField& potential,
                            const PropagatorConfig& config, double dt);

// Evolves psi in place from t0 to t1 under a schedule, stepping at ~config.dt
// (the interval is divided exactly). Static segments reuse cached phase
// factors. Throws domain_error if amplitude reaches the periodic boundary.
void propagate(ComplexField& psi, const PotentialSchedule& schedule, double t0, double t1,
               const PropagatorConfig& config);

struct GroundStateOptions {
  // Zero the state outside [mask_lo, mask_hi) after every step; used to
  // compute single-well states on a half-domain window.
  double mask_lo = -std::numeric_limits<double>::infinity();
  double mask_hi = std::numeric_limits<double>::infinity();
  // Project onto the even-parity sector each step (requires a grid symmetric
  // about x = 0).
  bool even_symmetrize = false;
  // Gram-Schmidt against these states each step; finds excited states.
  const std::vector<ComplexField>* orthogonal_to = nullptr;
};

struct GroundStateResult {
  ComplexField state;
  double energy = 0.0;
  int iterations = 0;
};

GroundStateResult ground_state_full(const ComplexField& potential, const PropagatorConfig& config,
                                    const ComplexField& initial_guess,
                                    const GroundStateOptions& options = {});

ComplexField ground_state(const ComplexField& potential, const PropagatorConfig& config,
                          const ComplexField& initial_guess);

// Ground state of one well of a double-well snapshot: imaginary time
// restricted to the window [center - span/2, center + span/2).
GroundStateResult single_well_ground_state(const ComplexField& potential, double well_center,
                                           double window_span, const PropagatorConfig& config);

// Energy difference E_right - E_left of the two single-well ground states of
// a double-well snapshot; the realized inter-well bias.
double well_bias(const ComplexField& potential, const PropagatorConfig& config,
                 double separation = units::well_spacing);

struct PreparationReport {
  double fidelity_to_target = 0.0;
  double left_weight = 0.0;
  double right_weight = 0.0;
  double excitation_fraction = 0.0;
  double packet_width = 0.0;        // measured single-well l0
  double overlap_bound = 0.0;       // exp(-L/l0)
  double ramp_time = 0.0;
  double boundary_amplitude = 0.0;
};

// Runs the adiabatic single-well -> double-well ramp and scores the result
// against the equal-superposition target built from the measured single-well
// ground states.
std::pair<ComplexField, PreparationReport> prepare_superposition(
    const GridPtr& grid, const PotentialSchedule& schedule, const PropagatorConfig& config);

struct QuenchReport {
  ComplexField state;
  double excitation_fraction = 0.0;
  bool below_window = false;  // t_delta < 1/omega: risks motional excitation
  bool above_window = false;  // t_delta > hbar/delta: not sudden vs the bias clock
};

// Ramps the bias on over t_delta (the schedule's span) and reports the
// motional excitation left in the two wells. Window violations warn via
// report flags, never fail.
QuenchReport quench_bias(const ComplexField& psi, const PotentialSchedule& schedule,
                         double t_delta, double omega, double delta,
                         const PropagatorConfig& config);

// Minimum instantaneous gap between the lowest two even-parity states over a
// schedule, sampled at n_samples times. Parity decouples the odd sector for
// the symmetric preparation ramp, so this is the gap that governs
// adiabaticity of the splitting.
double minimum_even_gap(const GridPtr& grid, const PotentialSchedule& schedule,
                        const PropagatorConfig& config, int n_samples = 9);

}  // namespace dwell
