#pragma once

#include <cstdint>
#include <iosfwd>

#include "core/potential.hpp"

namespace dwell {

// Weighted point ensemble in phase space.
struct ClassicalEnsemble {
  std::vector<double> x;
  std::vector<double> p;
  std::vector<double> weight;  // non-negative, sums to 1

  size_t size() const { return x.size(); }
};

// Classical counterpart D^C = exp(i p L / hbar) of the displacement operator,
// tracked alongside the ensemble average of its local equation of motion
// dD^C/dt = (L / i hbar) exp(i p L / hbar) dV/dx.
struct ClassicalDisplacementSeries {
  std::vector<double> times;
  std::vector<Complex> values;             // <D^C>(t)
  std::vector<Complex> derivative_values;  // <dD^C/dt>(t) from the local equation
  // Monte Carlo standard error of the derivative mean, per component
  // (real part in .real(), imaginary part in .imag()).
  std::vector<Complex> derivative_stderr;
  double shift = units::well_spacing;
  double max_relative_energy_drift = 0.0;  // period-averaged, worst trajectory

  // CSV columns: time, re_DC, im_DC, re_dDCdt, im_dDCdt.
  void write_csv(std::ostream& os) const;
};

enum class EnsembleKind {
  wigner_matched,       // Gaussian phase-space match to the ground state
  microcanonical_shell  // uniform on the E = hbar omega / 2 orbit per well
};

// Samples the phase-space distribution matching the quantum ground state in
// each well (Wigner widths: position std l0/sqrt(2), momentum std
// hbar/(sqrt(2) l0)), half weight per well. Trajectory i derives its own
// sub-seed from `seed`, so parallel and serial sampling agree bitwise.
// Both kinds are symmetric about the trap bottoms, the property the
// classical no-signal argument rests on.
ClassicalEnsemble sample_matched_ensemble(const DoubleWellModel& model, int n, std::uint64_t seed,
                                          EnsembleKind kind = EnsembleKind::wigner_matched);

struct ClassicalRunConfig {
  double t_final = 60.0;
  double dt = 0.0;         // 0: default 2 pi / (400 omega)
  double sample_dt = 0.1;
  double domain_half_width = 4.0;  // trajectories beyond this are an error
};

// Leapfrog integration of the full ensemble under the double-well force.
// The bias delta exerts no force, so it cannot enter the trajectories.
ClassicalDisplacementSeries evolve_classical(const ClassicalEnsemble& ensemble,
                                             const DoubleWellModel& model,
                                             const ClassicalRunConfig& run);

}  // namespace dwell
