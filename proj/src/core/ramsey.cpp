#include "core/ramsey.hpp"

#include <cmath>
#include <stdexcept>

namespace dwell {

SpinorField SpinorField::pure_up(const ComplexField& motional) {
  SpinorField s;
  s.up = motional;
  s.down = ComplexField(motional.grid);
  return s;
}

double SpinorField::total_norm_squared() const {
  return norm_squared(up) + norm_squared(down);
}

SpinorField pi_half_pulse(const SpinorField& s, double pulse_phase) {
  if (!(*s.up.grid == *s.down.grid)) throw std::invalid_argument("spinor components on different grids");
  const Complex rot = std::polar(1.0, pulse_phase);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  SpinorField out;
  out.up = ComplexField(s.up.grid);
  out.down = ComplexField(s.up.grid);
  for (int j = 0; j < s.up.size(); ++j) {
    const Complex u = s.up.values[j];
    const Complex d = s.down.values[j];
    out.up.values[j] = (u - std::conj(rot) * d) * inv_sqrt2;
    out.down.values[j] = (rot * u + d) * inv_sqrt2;
  }
  return out;
}

SpinorField spin_dependent_shift(const SpinorField& s, double half_shift) {
  SpinorField out;
  out.up = translate(s.up, half_shift);
  out.down = translate(s.down, -half_shift);
  return out;
}

MeasurementResult measure_populations(const SpinorField& s, Quadrature quadrature) {
  MeasurementResult r;
  r.p_up = norm_squared(s.up);
  r.p_down = norm_squared(s.down);
  r.difference = r.p_down - r.p_up;
  r.quadrature = quadrature;
  return r;
}

MeasurementResult run_ramsey(const ComplexField& psi_t, double shift, Quadrature quadrature) {
  const double first_pulse_phase =
      quadrature == Quadrature::real ? 0.0 : std::numbers::pi / 2.0;
  SpinorField s = SpinorField::pure_up(psi_t);
  s = pi_half_pulse(s, first_pulse_phase);
  s = spin_dependent_shift(s, shift / 2.0);
  s = pi_half_pulse(s, 0.0);
  return measure_populations(s, quadrature);
}

}  // namespace dwell
