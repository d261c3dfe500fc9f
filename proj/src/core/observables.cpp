#include "core/observables.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "core/csv.hpp"

namespace dwell {

Complex displacement_expectation(const ComplexField& psi, double shift) {
  return inner_product(psi, translate(psi, shift));
}

Complex analytic_displacement(double theta, double delta, double t) {
  return 0.5 * std::polar(1.0, theta - delta * t / units::hbar);
}

void DisplacementSeries::write_csv(std::ostream& os) const {
  csv::Writer w(os, {"time", "re_D", "im_D", "abs_D"});
  for (size_t i = 0; i < times.size(); ++i) {
    w.row({times[i], values[i].real(), values[i].imag(), std::abs(values[i])});
  }
}

DisplacementSeries track_displacement(const ComplexField& psi0,
                                      const PotentialSchedule& schedule, double shift,
                                      double t_final, double sample_dt,
                                      const PropagatorConfig& config) {
  if (!(sample_dt > 0.0)) throw std::invalid_argument("track_displacement: sample_dt must be > 0");
  if (t_final < schedule.t_begin() || t_final > schedule.t_end())
    throw std::out_of_range("track_displacement: t_final outside schedule span");

  DisplacementSeries series;
  series.shift = shift;

  ComplexField psi = psi0;
  double t = schedule.t_begin();
  series.times.push_back(t);
  series.values.push_back(displacement_expectation(psi, shift));
  const long n_samples = std::lround(std::floor((t_final - t) / sample_dt + 1e-9));
  for (long i = 1; i <= n_samples; ++i) {
    const double t_next = schedule.t_begin() + i * sample_dt;
    propagate(psi, schedule, t, t_next, config);
    t = t_next;
    series.times.push_back(t);
    series.values.push_back(displacement_expectation(psi, shift));
  }
  return series;
}

double fidelity(const ComplexField& a, const ComplexField& b) {
  if (!(*a.grid == *b.grid)) throw std::invalid_argument("fidelity: grid mismatch");
  return std::norm(inner_product(a, b));
}

double zero_crossing_frequency(const DisplacementSeries& series) {
  std::vector<double> crossings;
  for (size_t i = 1; i < series.times.size(); ++i) {
    const double a = series.values[i - 1].real();
    const double b = series.values[i].real();
    if (a == 0.0 || a * b >= 0.0) continue;
    const double frac = a / (a - b);
    crossings.push_back(series.times[i - 1] + frac * (series.times[i] - series.times[i - 1]));
  }
  if (crossings.size() < 2)
    throw std::invalid_argument("zero_crossing_frequency: need at least two crossings");
  const double span = crossings.back() - crossings.front();
  // Consecutive crossings are half a period apart.
  return std::numbers::pi * (crossings.size() - 1) / span;
}

}  // namespace dwell
