#include "core/classical.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>

#include "core/csv.hpp"
#include "core/errors.hpp"
#include "core/parallel.hpp"

namespace dwell {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double force(const DoubleWellModel& model, double x) {
  const double half = model.separation / 2.0;
  const double curv = units::mass * model.omega * model.omega;
  // The constant bias delta drops out of dV/dx entirely.
  return x < 0.0 ? -curv * (x + half) : -curv * (x - half);
}

double potential_value(const DoubleWellModel& model, double x) {
  const double half = model.separation / 2.0;
  const double curv = 0.5 * units::mass * model.omega * model.omega;
  return x < 0.0 ? curv * (x + half) * (x + half)
                 : curv * (x - half) * (x - half) + model.delta;
}

}  // namespace

ClassicalEnsemble sample_matched_ensemble(const DoubleWellModel& model, int n,
                                          std::uint64_t seed, EnsembleKind kind) {
  if (n < 1) throw std::invalid_argument("sample_matched_ensemble: n must be >= 1");
  const double l0 = model.ground_width();
  const double x_std = l0 / std::sqrt(2.0);
  const double p_std = units::hbar / (std::sqrt(2.0) * l0);
  const double half = model.separation / 2.0;

  ClassicalEnsemble ens;
  ens.x.resize(n);
  ens.p.resize(n);
  ens.weight.assign(n, 1.0 / n);
  for (int i = 0; i < n; ++i) {
    std::mt19937_64 rng(splitmix64(seed ^ static_cast<std::uint64_t>(i)));
    const double center = (i % 2 == 0) ? -half : half;  // equal well weights
    if (kind == EnsembleKind::wigner_matched) {
      std::normal_distribution<double> normal(0.0, 1.0);
      ens.x[i] = center + x_std * normal(rng);
      ens.p[i] = p_std * normal(rng);
    } else {
      // ground-state-energy orbit: x = c + l0 cos(phase), p = -(hbar/l0) sin(phase)
      std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
      const double phase = uniform(rng);
      ens.x[i] = center + l0 * std::cos(phase);
      ens.p[i] = -(units::hbar / l0) * std::sin(phase);
    }
  }
  return ens;
}

void ClassicalDisplacementSeries::write_csv(std::ostream& os) const {
  csv::Writer w(os, {"time", "re_DC", "im_DC", "re_dDCdt", "im_dDCdt"});
  for (size_t i = 0; i < times.size(); ++i) {
    w.row({times[i], values[i].real(), values[i].imag(), derivative_values[i].real(),
           derivative_values[i].imag()});
  }
}

ClassicalDisplacementSeries evolve_classical(const ClassicalEnsemble& ensemble,
                                             const DoubleWellModel& model,
                                             const ClassicalRunConfig& run) {
  if (ensemble.size() == 0) throw std::invalid_argument("evolve_classical: empty ensemble");
  if (!(model.omega > 0.0)) throw std::invalid_argument("evolve_classical: omega must be > 0");
  const double period = 2.0 * std::numbers::pi / model.omega;
  double dt = run.dt > 0.0 ? run.dt : period / 400.0;
  if (dt > period / 20.0)
    throw std::invalid_argument("evolve_classical: dt must resolve the trap period (<= T/20)");

  const long steps_per_sample = std::max<long>(1, std::lround(run.sample_dt / dt));
  dt = run.sample_dt / steps_per_sample;
  const long n_samples = std::max<long>(1, std::lround(run.t_final / run.sample_dt));
  const long total_steps = n_samples * steps_per_sample;
  // Window for the secular-drift estimate: one trap period of full steps, so
  // the bounded O(dt^2) leapfrog energy oscillation averages out.
  const long drift_window = std::min(total_steps, std::lround(period / dt));

  const double shift = units::well_spacing;
  const long n = static_cast<long>(ensemble.size());
  const long block_size = 256;
  const long n_blocks = (n + block_size - 1) / block_size;

  struct Block {
    std::vector<Complex> d_sum;
    std::vector<Complex> deriv_sum;
    std::vector<Complex> deriv_sumsq;  // weighted sum of squares, per component
    double max_drift = 0.0;
    bool domain_violation = false;
  };
  std::vector<Block> blocks(n_blocks);

  parallel_blocks(n, block_size, [&](long b, long lo, long hi) {
    Block& out = blocks[b];
    out.d_sum.assign(n_samples + 1, Complex{0.0, 0.0});
    out.deriv_sum.assign(n_samples + 1, Complex{0.0, 0.0});
    out.deriv_sumsq.assign(n_samples + 1, Complex{0.0, 0.0});
    for (long i = lo; i < hi; ++i) {
      double x = ensemble.x[i];
      double p = ensemble.p[i];
      const double w = ensemble.weight[i];

      auto record = [&](long sample) {
        out.d_sum[sample] += w * std::polar(1.0, p * shift / units::hbar);
        // dD^C/dt = (L / i hbar) e^{i p L / hbar} dV/dx
        const Complex rhs = Complex(0.0, -shift / units::hbar) *
                            std::polar(1.0, p * shift / units::hbar) * (-force(model, x));
        out.deriv_sum[sample] += w * rhs;
        out.deriv_sumsq[sample] +=
            w * Complex(rhs.real() * rhs.real(), rhs.imag() * rhs.imag());
      };
      record(0);

      double e_first = 0.0, e_last = 0.0;
      long step = 0;
      for (long s = 1; s <= n_samples; ++s) {
        for (long k = 0; k < steps_per_sample; ++k) {
          p += 0.5 * dt * force(model, x);
          x += dt * p / units::mass;
          p += 0.5 * dt * force(model, x);
          ++step;
          if (step <= drift_window || step > total_steps - drift_window) {
            const double e = p * p / (2.0 * units::mass) + potential_value(model, x);
            if (step <= drift_window) e_first += e;
            if (step > total_steps - drift_window) e_last += e;
          }
        }
        if (std::abs(x) > run.domain_half_width) {
          out.domain_violation = true;
          return;
        }
        record(s);
      }
      // Drift relative to the quantum energy scale; well-bottom trajectories
      // have near-zero energy and would otherwise divide by zero.
      const double scale =
          std::max(std::abs(e_first) / drift_window, 0.5 * units::hbar * model.omega);
      const double drift = std::abs(e_last - e_first) / drift_window / scale;
      out.max_drift = std::max(out.max_drift, drift);
    }
  });

  for (const auto& block : blocks) {
    if (block.domain_violation)
      throw domain_error("classical trajectory left the simulation domain");
  }

  ClassicalDisplacementSeries series;
  series.shift = shift;
  series.times.resize(n_samples + 1);
  series.values.assign(n_samples + 1, Complex{0.0, 0.0});
  series.derivative_values.assign(n_samples + 1, Complex{0.0, 0.0});
  series.derivative_stderr.assign(n_samples + 1, Complex{0.0, 0.0});
  for (long s = 0; s <= n_samples; ++s) series.times[s] = s * run.sample_dt;
  for (const auto& block : blocks) {  // fixed block order: deterministic reduction
    for (long s = 0; s <= n_samples; ++s) {
      series.values[s] += block.d_sum[s];
      series.derivative_values[s] += block.deriv_sum[s];
      series.derivative_stderr[s] += block.deriv_sumsq[s];
    }
    series.max_relative_energy_drift =
        std::max(series.max_relative_energy_drift, block.max_drift);
  }
  // Weighted-mean standard error per component: sqrt((E[r^2] - E[r]^2)/n).
  for (long s = 0; s <= n_samples; ++s) {
    const Complex mean = series.derivative_values[s];
    const Complex meansq = series.derivative_stderr[s];
    const double var_re = std::max(0.0, meansq.real() - mean.real() * mean.real());
    const double var_im = std::max(0.0, meansq.imag() - mean.imag() * mean.imag());
    series.derivative_stderr[s] =
        Complex(std::sqrt(var_re / n), std::sqrt(var_im / n));
  }
  return series;
}

}  // namespace dwell
