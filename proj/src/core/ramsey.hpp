#pragma once

#include "core/grid.hpp"

namespace dwell {

// Two-component spinor sharing one grid; total norm |up|^2 + |down|^2 = 1.
struct SpinorField {
  ComplexField up;
  ComplexField down;

  static SpinorField pure_up(const ComplexField& motional);
  double total_norm_squared() const;
};

enum class Quadrature { real, imaginary };

struct MeasurementResult {
  double p_up = 0.0;
  double p_down = 0.0;
  double difference = 0.0;  // p_down - p_up
  Quadrature quadrature = Quadrature::real;
};

// pi/2 rotation with pulse phase phi_p:
//   |up>   -> (|up> + e^{+i phi_p}|down>)/sqrt(2)
//   |down> -> (-e^{-i phi_p}|up> + |down>)/sqrt(2)
// phi_p = 0 selects the real quadrature, pi/2 the imaginary one.
SpinorField pi_half_pulse(const SpinorField& s, double pulse_phase);

// Spin-dependent transport: up component translated by +half_shift, down
// component by -half_shift. Modeled as an instantaneous unitary.
SpinorField spin_dependent_shift(const SpinorField& s, double half_shift);

MeasurementResult measure_populations(const SpinorField& s,
                                      Quadrature quadrature = Quadrature::real);

// Full interferometric read-out of <D_L> on the motional state psi_t:
// pi/2 pulse, spin-dependent +/- L/2 shift, second pi/2 pulse, population
// difference. Returns p_down - p_up == Re or Im of <psi_t|D_L|psi_t>.
MeasurementResult run_ramsey(const ComplexField& psi_t, double shift, Quadrature quadrature);

}  // namespace dwell
