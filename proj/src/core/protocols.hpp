#pragma once

#include "core/potential.hpp"
#include "core/propagator.hpp"

namespace dwell {

// The preparation ramp: a deep long-period lattice holding the atom in one
// site is traded for the short lattice, splitting the site into the two
// wells at -/+ L/2. phi = pi/2 keeps the configuration symmetric about x = 0
// throughout, so the split is equal-weight by parity.
struct PreparationPlan {
  double v1_initial = 35.0;
  double v1_final = 2.0;  // residual long-lattice depth, still v2 >> v1
  double v2_final = 35.0;
  double phi = std::numbers::pi / 2.0;
  double ramp_time = 0.0;  // 0: auto, 50 periods of the minimum even-parity gap
  RampShape shape = RampShape::smoothstep;
};

PotentialSchedule preparation_schedule(const PreparationPlan& plan, double ramp_time);

// Resolves plan.ramp_time == 0 by probing the instantaneous even-sector gap.
double resolve_ramp_time(const PreparationPlan& plan, const GridPtr& grid,
                         const PropagatorConfig& config);

// The bias quench: rotating the long-lattice phase by pi/4 while dropping
// its depth from the preparation residual to v_bias tilts the double well by
// ~v_bias. At the final phase the long-lattice slope vanishes at both sites,
// so the well bottoms end up pinned; the transient rotation is what can
// stir motional excitation when t_delta is too short.
struct QuenchPlan {
  double v2 = 35.0;
  double v1_start = 2.0;  // matches PreparationPlan::v1_final
  double v_bias = 0.3;    // realized inter-well bias ~= v_bias
  double phi_symmetric = std::numbers::pi / 2.0;
  double phi_biased = 3.0 * std::numbers::pi / 4.0;
  double t_delta = 0.0;  // 0: 8 / omega
  RampShape shape = RampShape::smoothstep;
};

PotentialSchedule quench_schedule(const QuenchPlan& plan, double t_delta);

// Biased lattice held constant after the quench, for lattice-mode tracking.
PotentialSchedule biased_lattice_schedule(const QuenchPlan& plan, double t_start, double t_end);

}  // namespace dwell
