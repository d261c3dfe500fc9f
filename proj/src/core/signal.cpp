#include "core/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

#include "core/csv.hpp"
#include "core/fft.hpp"
#include "core/parallel.hpp"
#include "core/protocols.hpp"
#include "core/ramsey.hpp"

namespace dwell {

void SignalConfig::validate() const {
  if (n_wells < 1) throw std::invalid_argument("signal: n_wells must be >= 1");
  if (gamma < 0.0) throw std::invalid_argument("signal: gamma must be >= 0");
  if (omega_t < 0.0) throw std::invalid_argument("signal: omega_t must be >= 0");
  if (!(t_final > 0.0)) throw std::invalid_argument("signal: t_final must be > 0");
  if (!well_positions.empty() && static_cast<int>(well_positions.size()) != n_wells)
    throw std::invalid_argument("signal: well_positions length must equal n_wells");
}

std::vector<double> SignalConfig::resolved_positions() const {
  if (!well_positions.empty()) return well_positions;
  std::vector<double> xs(n_wells);
  if (layout == WellLayout::uniform) {
    // n_wells sites, spacing L, centered on the trap.
    for (int j = 0; j < n_wells; ++j) {
      xs[j] = (j - (n_wells - 1) / 2.0) * units::well_spacing;
    }
    return xs;
  }
  // Distinct lattice sites drawn with the trap's Gaussian occupancy weight,
  // sampled without replacement.
  std::vector<int> sites(2 * n_wells + 1);
  std::iota(sites.begin(), sites.end(), -n_wells);
  const double sigma = n_wells / 2.0;
  std::vector<double> weights(sites.size());
  for (size_t s = 0; s < sites.size(); ++s) {
    weights[s] = std::exp(-sites[s] * sites[s] / (2.0 * sigma * sigma));
  }
  std::mt19937_64 rng(layout_seed);
  for (int j = 0; j < n_wells; ++j) {
    std::discrete_distribution<size_t> draw(weights.begin(), weights.end());
    const size_t pick = draw(rng);
    xs[j] = sites[pick] * units::well_spacing;
    weights[pick] = 0.0;
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

double SignalConfig::resolved_sample_dt() const {
  if (sample_dt > 0.0) return sample_dt;
  const double base = delta > 0.0 ? delta : 0.3;
  return (2.0 * std::numbers::pi * units::hbar / base) / 64.0;
}

double SignalConfig::bias_for_well(double x_j) const {
  return delta + units::mass * omega_t * omega_t * units::well_spacing * x_j;
}

void EnsembleSignal::write_signal_csv(std::ostream& os) const {
  csv::Writer w(os, {"time", "signal"});
  for (size_t i = 0; i < times.size(); ++i) w.row({times[i], signal[i]});
}

void EnsembleSignal::write_spectrum_csv(std::ostream& os) const {
  csv::Writer w(os, {"freq", "magnitude"});
  for (size_t i = 0; i < spectrum_freqs.size(); ++i)
    w.row({spectrum_freqs[i], spectrum_mag[i]});
}

EnsembleSignal closed_form_signal(const SignalConfig& cfg) {
  cfg.validate();
  const auto xs = cfg.resolved_positions();
  const double dt = cfg.resolved_sample_dt();
  const long n = std::lround(std::floor(cfg.t_final / dt + 1e-9));

  EnsembleSignal out;
  out.times.resize(n + 1);
  out.signal.resize(n + 1);
  for (long i = 0; i <= n; ++i) {
    const double t = i * dt;
    double sum = 0.0;
    for (const double x : xs) sum += std::cos(cfg.bias_for_well(x) * t / units::hbar);
    out.times[i] = t;
    out.signal[i] = sum / (2.0 * cfg.n_wells) * std::exp(-cfg.gamma * t);
  }
  return out;
}

EnsembleSignal full_quantum_signal(const SignalConfig& cfg, const PropagatorConfig& prop) {
  cfg.validate();
  const auto xs = cfg.resolved_positions();
  const double sample_dt = cfg.resolved_sample_dt();
  const long n_samples = std::lround(std::floor(cfg.t_final / sample_dt + 1e-9));

  // One preparation serves every well: the wells are identical up to the
  // bias, which only turns on afterwards.
  const GridPtr grid = make_grid(cfg.n_points, -2.0, 2.0);
  PreparationPlan plan;
  plan.v2_final = cfg.v2;
  PropagatorConfig prep_prop = prop;
  prep_prop.boundary_amplitude_limit =
      std::max(prep_prop.boundary_amplitude_limit, 1e-3);  // inter-cell leak is physical
  const double ramp_time = resolve_ramp_time(plan, grid, prep_prop);
  auto [prepared, report] =
      prepare_superposition(grid, preparation_schedule(plan, ramp_time), prep_prop);
  (void)report;

  // Restrict to the central double-well cell before handing the state to the
  // per-well idealized model: the ~1e-5 weight that leaked into neighboring
  // cells during the ramp represents other ensemble members, and the
  // idealized parabola has no well there to hold it. Smooth cosine rolloff
  // across the barrier region avoids injecting high-momentum content.
  for (int j = 0; j < prepared.size(); ++j) {
    const double ax = std::abs(prepared.grid->x[j]);
    double w = 0.0;
    if (ax <= 0.9) {
      w = 1.0;
    } else if (ax < 1.1) {
      w = 0.5 * (1.0 + std::cos(std::numbers::pi * (ax - 0.9) / 0.2));
    }
    prepared.values[j] *= w;
  }
  normalize(prepared);

  const double omega = units::trap_frequency(cfg.v2);
  std::vector<std::vector<double>> per_well(xs.size());

  parallel_blocks(static_cast<long>(xs.size()), 1, [&](long, long lo, long hi) {
    for (long j = lo; j < hi; ++j) {
      DoubleWellModel model;
      model.omega = omega;
      model.delta = cfg.bias_for_well(xs[j]);
      model.v_cap = 200.0;  // numerical ceiling far up the walls
      const auto schedule = PotentialSchedule::constant(model, 0.0, cfg.t_final + 1.0);

      PropagatorConfig well_prop = prop;
      well_prop.dt = std::min(prop.dt, 0.45 / 200.0);
      // Leaves headroom for the ~1e-4 relative splash from the cell-window
      // handoff above; genuine packet escape still trips this.
      well_prop.boundary_amplitude_limit = std::max(prop.boundary_amplitude_limit, 1e-3);

      std::vector<double>& series = per_well[j];
      series.resize(n_samples + 1);
      ComplexField psi = prepared;
      series[0] = run_ramsey(psi, units::well_spacing, Quadrature::real).difference;
      for (long i = 1; i <= n_samples; ++i) {
        propagate(psi, schedule, (i - 1) * sample_dt, i * sample_dt, well_prop);
        series[i] = run_ramsey(psi, units::well_spacing, Quadrature::real).difference;
      }
    }
  });

  EnsembleSignal out;
  out.times.resize(n_samples + 1);
  out.signal.assign(n_samples + 1, 0.0);
  for (long i = 0; i <= n_samples; ++i) out.times[i] = i * sample_dt;
  for (size_t j = 0; j < xs.size(); ++j) {  // fixed well order: deterministic
    for (long i = 0; i <= n_samples; ++i) out.signal[i] += per_well[j][i];
  }
  for (long i = 0; i <= n_samples; ++i) {
    out.signal[i] *= std::exp(-cfg.gamma * out.times[i]) / cfg.n_wells;
  }
  return out;
}

void compute_spectrum(EnsembleSignal& sig, int pad_factor, bool hann) {
  const long n = static_cast<long>(sig.signal.size());
  if (n < 8) throw std::invalid_argument("spectrum: need at least 8 samples");
  if (pad_factor < 1) throw std::invalid_argument("spectrum: pad_factor must be >= 1");
  const double dt = sig.times[1] - sig.times[0];

  double mean = 0.0;
  for (double v : sig.signal) mean += v;
  mean /= n;

  long m = 1;
  while (m < n * pad_factor) m *= 2;
  std::vector<Complex> buf(m, Complex{0.0, 0.0});
  for (long i = 0; i < n; ++i) {
    double w = 1.0;
    if (hann) w = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * i / (n - 1)));
    buf[i] = (sig.signal[i] - mean) * w;
  }
  fft::transform(buf, false);

  const long half = m / 2;
  sig.spectrum_freqs.resize(half);
  sig.spectrum_mag.resize(half);
  for (long k = 0; k < half; ++k) {
    sig.spectrum_freqs[k] = 2.0 * std::numbers::pi * k / (m * dt);
    sig.spectrum_mag[k] = std::abs(buf[k]) * dt;
  }
  sig.bin_width = 2.0 * std::numbers::pi / (n * dt);

  long peak = 1;
  for (long k = 2; k < half; ++k) {
    if (sig.spectrum_mag[k] > sig.spectrum_mag[peak]) peak = k;
  }
  sig.peak_freq = sig.spectrum_freqs[peak];

  // FWHM by linear interpolation of the half-maximum crossings.
  const double half_max = sig.spectrum_mag[peak] / 2.0;
  double f_lo = sig.spectrum_freqs.front();
  for (long k = peak; k >= 1; --k) {
    if (sig.spectrum_mag[k - 1] <= half_max) {
      const double frac =
          (sig.spectrum_mag[k] - half_max) / (sig.spectrum_mag[k] - sig.spectrum_mag[k - 1]);
      f_lo = sig.spectrum_freqs[k] -
             frac * (sig.spectrum_freqs[k] - sig.spectrum_freqs[k - 1]);
      break;
    }
  }
  double f_hi = sig.spectrum_freqs.back();
  for (long k = peak; k + 1 < half; ++k) {
    if (sig.spectrum_mag[k + 1] <= half_max) {
      const double frac =
          (sig.spectrum_mag[k] - half_max) / (sig.spectrum_mag[k] - sig.spectrum_mag[k + 1]);
      f_hi = sig.spectrum_freqs[k] +
             frac * (sig.spectrum_freqs[k + 1] - sig.spectrum_freqs[k]);
      break;
    }
  }
  sig.fwhm = f_hi - f_lo;
}

EnsembleSignal shot_noise_overlay(const EnsembleSignal& sig, long atoms_per_point,
                                  std::uint64_t seed) {
  if (atoms_per_point < 1)
    throw std::invalid_argument("shot_noise_overlay: atoms_per_point must be >= 1");
  EnsembleSignal out = sig;
  for (size_t i = 0; i < sig.signal.size(); ++i) {
    const double prob = std::clamp(sig.signal[i] + 0.5, 0.0, 1.0);
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + i);
    std::binomial_distribution<long> binom(atoms_per_point, prob);
    out.signal[i] = static_cast<double>(binom(rng)) / atoms_per_point - 0.5;
  }
  return out;
}

}  // namespace dwell
