#include "core/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "core/errors.hpp"
#include "core/fft.hpp"

namespace dwell {

namespace {

constexpr double kPhaseWrapGuard = 0.5;

double max_abs(const ComplexField& field) {
  double m = 0.0;
  for (const auto& v : field.values) m = std::max(m, std::abs(v));
  return m;
}

std::vector<Complex> kinetic_phases(const SpatialGrid& grid, double dt) {
  std::vector<Complex> phases(grid.n_points);
  for (int k = 0; k < grid.n_points; ++k) {
    const double p = grid.p[k];
    phases[k] = std::polar(1.0, -p * p / (2.0 * units::mass) * dt);
  }
  return phases;
}

std::vector<Complex> potential_half_phases(const ComplexField& potential, double dt) {
  const double vmax = max_abs(potential);
  if (dt * vmax >= kPhaseWrapGuard) {
    throw config_error("time step violates the phase-wrap guard dt*max|V| < 0.5 (dt*max|V| = " +
                       std::to_string(dt * vmax) + ")");
  }
  std::vector<Complex> phases(potential.size());
  for (int j = 0; j < potential.size(); ++j) {
    phases[j] = std::polar(1.0, -potential.values[j].real() * dt / 2.0);
  }
  return phases;
}

void apply_pointwise(std::vector<Complex>& values, const std::vector<Complex>& factors) {
  for (size_t j = 0; j < values.size(); ++j) values[j] *= factors[j];
}

// One Strang step with prebuilt phase factors.
void strang_step(ComplexField& psi, const std::vector<Complex>& vphase,
                 const std::vector<Complex>& kphase) {
  apply_pointwise(psi.values, vphase);
  fft::transform(psi.values, false);
  apply_pointwise(psi.values, kphase);
  fft::transform(psi.values, true);
  const double scale = 1.0 / psi.size();
  for (auto& v : psi.values) v *= scale;
  apply_pointwise(psi.values, vphase);
}

void check_boundary(const ComplexField& psi, const PropagatorConfig& config) {
  const double edge = boundary_amplitude(psi);
  if (edge > config.boundary_amplitude_limit) {
    throw domain_error("wavepacket reached the periodic boundary (relative amplitude " +
                       std::to_string(edge) + "); enlarge the grid domain");
  }
}

}  // namespace

void PropagatorConfig::validate() const {
  if (!(dt > 0.0)) throw config_error("propagator dt must be positive");
  if (order != 2) throw config_error("only second-order Strang splitting is supported");
  if (!(dtau_initial > 0.0) || !(dtau_min > 0.0) || dtau_min > dtau_initial)
    throw config_error("imaginary-time steps must satisfy 0 < dtau_min <= dtau_initial");
  if (max_iterations < 1) throw config_error("max_iterations must be positive");
}

double energy(const ComplexField& psi, const ComplexField& potential) {
  if (!(*psi.grid == *potential.grid)) throw std::invalid_argument("energy: grid mismatch");
  const ComplexField spectrum = forward_dft(psi);
  double kinetic = 0.0;
  for (int k = 0; k < psi.size(); ++k) {
    const double p = psi.grid->p[k];
    kinetic += p * p / (2.0 * units::mass) * std::norm(spectrum.values[k]);
  }
  double pot = 0.0;
  for (int j = 0; j < psi.size(); ++j) {
    pot += potential.values[j].real() * std::norm(psi.values[j]);
  }
  const double n2 = norm_squared(psi);
  return (kinetic + pot) * psi.dx() / n2;
}

ComplexField step_real_time(const ComplexField& psi, const ComplexField& potential,
                            const PropagatorConfig& config, double dt) {
  config.validate();
  if (!(*psi.grid == *potential.grid))
    throw std::invalid_argument("step_real_time: grid mismatch");
  const auto vphase = potential_half_phases(potential, dt);
  const auto kphase = kinetic_phases(*psi.grid, dt);
  ComplexField out = psi;
  strang_step(out, vphase, kphase);
  return out;
}

void propagate(ComplexField& psi, const PotentialSchedule& schedule, double t0, double t1,
               const PropagatorConfig& config) {
  config.validate();
  if (t1 == t0) return;
  if (t1 < t0) throw std::invalid_argument("propagate: t1 must be >= t0");
  const long steps = std::max<long>(1, std::lround(std::ceil((t1 - t0) / config.dt - 1e-12)));
  const double dt = (t1 - t0) / steps;
  const auto kphase = kinetic_phases(*psi.grid, dt);

  const double norm_before = norm_squared(psi);

  const bool static_potential = schedule.is_static_over(t0, t1);
  std::vector<Complex> vphase;
  if (static_potential) {
    vphase = potential_half_phases(evaluate_schedule(schedule, t0, psi.grid), dt);
  }
  for (long s = 0; s < steps; ++s) {
    if (!static_potential) {
      const double t_mid = t0 + (s + 0.5) * dt;
      vphase = potential_half_phases(evaluate_schedule(schedule, t_mid, psi.grid), dt);
    }
    strang_step(psi, vphase, kphase);
    if ((s + 1) % config.boundary_check_interval == 0) check_boundary(psi, config);
  }
  check_boundary(psi, config);

  const double norm_after = norm_squared(psi);
  if (std::abs(norm_after - norm_before) > config.norm_tolerance * std::max(1.0, norm_before)) {
    throw domain_error("norm drifted beyond tolerance during propagation");
  }
}

namespace {

struct MaskWindow {
  int lo = 0;
  int hi = 0;  // half-open index range to keep; hi <= lo means keep-all
  bool active = false;
};

MaskWindow make_mask(const SpatialGrid& grid, double lo, double hi) {
  MaskWindow m;
  if (std::isinf(lo) && std::isinf(hi)) return m;
  m.active = true;
  m.lo = static_cast<int>(std::ceil((lo - grid.x_min) / grid.dx - 1e-12));
  m.hi = static_cast<int>(std::ceil((hi - grid.x_min) / grid.dx - 1e-12));
  m.lo = std::clamp(m.lo, 0, grid.n_points);
  m.hi = std::clamp(m.hi, 0, grid.n_points);
  return m;
}

void apply_constraints(ComplexField& psi, const MaskWindow& mask, bool even,
                       const std::vector<ComplexField>* orthogonal_to) {
  if (mask.active) {
    for (int j = 0; j < mask.lo; ++j) psi.values[j] = 0.0;
    for (int j = mask.hi; j < psi.size(); ++j) psi.values[j] = 0.0;
  }
  if (even) {
    const int n = psi.size();
    for (int j = 1; j <= n / 2; ++j) {
      const int jr = n - j;
      const Complex avg = 0.5 * (psi.values[j] + psi.values[jr]);
      psi.values[j] = avg;
      psi.values[jr] = avg;
    }
  }
  if (orthogonal_to) {
    for (const auto& phi : *orthogonal_to) {
      const Complex overlap = inner_product(phi, psi);
      for (int j = 0; j < psi.size(); ++j) psi.values[j] -= overlap * phi.values[j];
    }
  }
}

}  // namespace

GroundStateResult ground_state_full(const ComplexField& potential, const PropagatorConfig& config,
                                    const ComplexField& initial_guess,
                                    const GroundStateOptions& options) {
  config.validate();
  if (!(*potential.grid == *initial_guess.grid))
    throw std::invalid_argument("ground_state: grid mismatch");
  if (options.even_symmetrize &&
      std::abs(potential.grid->x_min + potential.grid->x_max) > 1e-12 * potential.grid->length())
    throw std::invalid_argument("even-parity projection requires a grid symmetric about x = 0");

  const SpatialGrid& grid = *potential.grid;
  const MaskWindow mask = make_mask(grid, options.mask_lo, options.mask_hi);

  ComplexField psi = initial_guess;
  apply_constraints(psi, mask, options.even_symmetrize, options.orthogonal_to);
  if (norm_squared(psi) <= 0.0)
    throw std::invalid_argument("ground_state: initial guess vanishes under constraints");
  normalize(psi);

  constexpr int kCheckInterval = 16;
  constexpr double kStageShrink = 6.0;

  int iterations = 0;
  double dtau = config.dtau_initial;
  double e_prev = energy(psi, potential);
  while (true) {
    const bool final_stage = dtau <= config.dtau_min * (1.0 + 1e-12);
    // Coarse stages stop early; only the final stage must meet the full
    // per-step energy tolerance.
    const double stage_tol = final_stage ? config.energy_tolerance : 1e-9;

    std::vector<double> half_decay(grid.n_points);
    for (int j = 0; j < grid.n_points; ++j) {
      const double v = potential.values[j].real();
      half_decay[j] = std::exp(-v * dtau / 2.0);
    }
    std::vector<double> kdecay(grid.n_points);
    for (int k = 0; k < grid.n_points; ++k) {
      const double p = grid.p[k];
      kdecay[k] = std::exp(-p * p / (2.0 * units::mass) * dtau);
    }

    bool stage_done = false;
    while (!stage_done) {
      for (int s = 0; s < kCheckInterval; ++s) {
        for (int j = 0; j < grid.n_points; ++j) psi.values[j] *= half_decay[j];
        fft::transform(psi.values, false);
        for (int k = 0; k < grid.n_points; ++k) psi.values[k] *= kdecay[k];
        fft::transform(psi.values, true);
        const double scale = 1.0 / grid.n_points;
        for (auto& v : psi.values) v *= scale;
        for (int j = 0; j < grid.n_points; ++j) psi.values[j] *= half_decay[j];
        apply_constraints(psi, mask, options.even_symmetrize, options.orthogonal_to);
        normalize(psi);
        ++iterations;
      }
      const double e_now = energy(psi, potential);
      const double per_step = std::abs(e_now - e_prev) / kCheckInterval;
      e_prev = e_now;
      if (per_step < stage_tol) stage_done = true;
      if (iterations >= config.max_iterations) {
        if (final_stage && per_step < 1e-9) break;  // close enough to report
        throw convergence_error(
            "imaginary-time evolution did not converge (per-step energy change " +
                std::to_string(per_step) + ")",
            per_step);
      }
    }
    if (final_stage) break;
    dtau = std::max(dtau / kStageShrink, config.dtau_min);
  }

  GroundStateResult result;
  result.energy = e_prev;
  result.iterations = iterations;
  result.state = std::move(psi);
  return result;
}

ComplexField ground_state(const ComplexField& potential, const PropagatorConfig& config,
                          const ComplexField& initial_guess) {
  return ground_state_full(potential, config, initial_guess).state;
}

GroundStateResult single_well_ground_state(const ComplexField& potential, double well_center,
                                           double window_span, const PropagatorConfig& config) {
  GroundStateOptions options;
  options.mask_lo = well_center - window_span / 2.0;
  options.mask_hi = well_center + window_span / 2.0;
  // Guess width from the local curvature; falls back to a quarter window.
  const auto& grid = *potential.grid;
  const int jc = std::clamp(static_cast<int>(std::lround((well_center - grid.x_min) / grid.dx)), 1,
                            grid.n_points - 2);
  const double vpp = (potential.values[jc + 1].real() - 2.0 * potential.values[jc].real() +
                      potential.values[jc - 1].real()) /
                     (grid.dx * grid.dx);
  double width = window_span / 4.0;
  if (vpp > 0.0) width = units::ground_width(std::sqrt(vpp / units::mass));
  const ComplexField guess = gaussian_packet(potential.grid, well_center, width);
  return ground_state_full(potential, config, guess, options);
}

double well_bias(const ComplexField& potential, const PropagatorConfig& config,
                 double separation) {
  const auto left = single_well_ground_state(potential, -separation / 2.0, separation, config);
  const auto right = single_well_ground_state(potential, separation / 2.0, separation, config);
  return right.energy - left.energy;
}

namespace {

// Gaussian guess centered on the deepest point of a potential snapshot.
// Periodic lattices have degenerate minima (one per period); prefer the one
// nearest the domain center so the state never seeds on the boundary.
ComplexField minimum_seeded_guess(const ComplexField& potential) {
  const auto& grid = *potential.grid;
  double vmin = potential.values[0].real();
  for (int j = 1; j < grid.n_points; ++j) vmin = std::min(vmin, potential.values[j].real());
  const double v_tol = 1e-9 * (1.0 + std::abs(vmin));
  const double center = 0.5 * (grid.x_min + grid.x_max);
  int jmin = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid.n_points; ++j) {
    if (potential.values[j].real() > vmin + v_tol) continue;
    const double dist = std::abs(grid.x[j] - center);
    if (dist < best_dist) {
      best_dist = dist;
      jmin = j;
    }
  }
  const int jc = std::clamp(jmin, 1, grid.n_points - 2);
  const double vpp = (potential.values[jc + 1].real() - 2.0 * potential.values[jc].real() +
                      potential.values[jc - 1].real()) /
                     (grid.dx * grid.dx);
  const double width =
      vpp > 0.0 ? units::ground_width(std::sqrt(vpp / units::mass)) : grid.length() / 16.0;
  return gaussian_packet(potential.grid, grid.x[jmin], width);
}

}  // namespace

std::pair<ComplexField, PreparationReport> prepare_superposition(
    const GridPtr& grid, const PotentialSchedule& schedule, const PropagatorConfig& config) {
  const ComplexField v_initial = evaluate_schedule(schedule, schedule.t_begin(), grid);
  ComplexField psi = ground_state(v_initial, config, minimum_seeded_guess(v_initial));

  propagate(psi, schedule, schedule.t_begin(), schedule.t_end(), config);

  const ComplexField v_final = evaluate_schedule(schedule, schedule.t_end(), grid);
  const double sep = units::well_spacing;
  const auto left = single_well_ground_state(v_final, -sep / 2.0, sep, config);
  const auto right = single_well_ground_state(v_final, sep / 2.0, sep, config);

  ComplexField target(grid);
  for (int j = 0; j < target.size(); ++j) {
    target.values[j] = left.state.values[j] + right.state.values[j];
  }
  normalize(target);

  PreparationReport report;
  const Complex overlap = inner_product(target, psi);
  report.fidelity_to_target = std::norm(overlap);
  double left_weight = 0.0, right_weight = 0.0;
  for (int j = 0; j < psi.size(); ++j) {
    const double w = std::norm(psi.values[j]) * psi.dx();
    (grid->x[j] < 0.0 ? left_weight : right_weight) += w;
  }
  report.left_weight = left_weight;
  report.right_weight = right_weight;
  report.excitation_fraction = std::max(
      0.0, 1.0 - std::norm(inner_product(left.state, psi)) -
               std::norm(inner_product(right.state, psi)));
  report.packet_width = std::sqrt(2.0 * position_variance(left.state));
  report.overlap_bound = std::exp(-units::well_spacing / report.packet_width);
  report.ramp_time = schedule.t_end() - schedule.t_begin();
  report.boundary_amplitude = boundary_amplitude(psi);
  return {std::move(psi), report};
}

QuenchReport quench_bias(const ComplexField& psi, const PotentialSchedule& schedule,
                         double t_delta, double omega, double delta,
                         const PropagatorConfig& config) {
  QuenchReport report;
  if (omega > 0.0) report.below_window = t_delta < 1.0 / omega;
  if (delta > 0.0) report.above_window = t_delta > units::hbar / delta;

  ComplexField state = psi;
  propagate(state, schedule, schedule.t_begin(), schedule.t_end(), config);

  const ComplexField v_final = evaluate_schedule(schedule, schedule.t_end(), psi.grid);
  const double sep = units::well_spacing;
  const auto left = single_well_ground_state(v_final, -sep / 2.0, sep, config);
  const auto right = single_well_ground_state(v_final, sep / 2.0, sep, config);
  report.excitation_fraction =
      std::max(0.0, 1.0 - std::norm(inner_product(left.state, state)) -
                        std::norm(inner_product(right.state, state)));
  report.state = std::move(state);
  return report;
}

double minimum_even_gap(const GridPtr& grid, const PotentialSchedule& schedule,
                        const PropagatorConfig& config, int n_samples) {
  if (n_samples < 2) throw std::invalid_argument("minimum_even_gap: need at least 2 samples");
  double min_gap = std::numeric_limits<double>::infinity();
  const double t0 = schedule.t_begin();
  const double t1 = schedule.t_end();
  for (int i = 0; i < n_samples; ++i) {
    const double t = t0 + (t1 - t0) * i / (n_samples - 1);
    const ComplexField v = evaluate_schedule(schedule, t, grid);

    GroundStateOptions even;
    even.even_symmetrize = true;
    const auto gs = ground_state_full(v, config, minimum_seeded_guess(v), even);

    GroundStateOptions excited = even;
    std::vector<ComplexField> lower{gs.state};
    excited.orthogonal_to = &lower;
    // A node-bearing even guess overlaps the first even excited state.
    ComplexField guess(grid);
    const double scale = grid->length() / 6.0;
    for (int j = 0; j < guess.size(); ++j) {
      const double x = grid->x[j];
      guess.values[j] = (x * x / (scale * scale) - 1.0) * std::exp(-x * x / (2.0 * scale * scale));
    }
    const auto es = ground_state_full(v, config, guess, excited);
    min_gap = std::min(min_gap, es.energy - gs.energy);
  }
  return min_gap;
}

}  // namespace dwell
