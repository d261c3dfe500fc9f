#pragma once

#include <iosfwd>

#include "core/propagator.hpp"

namespace dwell {

// <psi| exp(i p L) |psi> = integral psi*(x) psi(x + L) dx, evaluated with the
// exact spectral translation. Modulus <= 1 for normalized states.
Complex displacement_expectation(const ComplexField& psi, double shift);

// Reference evolution for the equal two-well superposition under bias delta:
// (1/2) exp(i (theta - delta t / hbar)).
Complex analytic_displacement(double theta, double delta, double t);

struct DisplacementSeries {
  std::vector<double> times;
  std::vector<Complex> values;
  double shift = units::well_spacing;
  double theta = 0.0;
  double omega_d = 0.0;  // expected rotation rate delta/hbar

  // CSV columns: time, re_D, im_D, abs_D.
  void write_csv(std::ostream& os) const;
};

// Evolves psi0 under the schedule and samples <D_L>(t) every sample_dt.
DisplacementSeries track_displacement(const ComplexField& psi0,
                                      const PotentialSchedule& schedule, double shift,
                                      double t_final, double sample_dt,
                                      const PropagatorConfig& config);

// |<a|b>|^2, global-phase invariant; both states normalized on one grid.
double fidelity(const ComplexField& a, const ComplexField& b);

// Frequency estimate from the zero crossings of Re<D>(t): mean spacing of
// consecutive sign changes (linearly interpolated) equals half a period.
double zero_crossing_frequency(const DisplacementSeries& series);

}  // namespace dwell
