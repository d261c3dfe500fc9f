#include "core/protocols.hpp"

#include <algorithm>

namespace dwell {

PotentialSchedule preparation_schedule(const PreparationPlan& plan, double ramp_time) {
  ScheduleSegment seg;
  seg.t_start = 0.0;
  seg.t_end = ramp_time;
  seg.shape = plan.shape;
  seg.begin = LatticeParams{plan.v1_initial, 0.0, plan.phi};
  seg.end = LatticeParams{plan.v1_final, plan.v2_final, plan.phi};
  return PotentialSchedule({seg});
}

double resolve_ramp_time(const PreparationPlan& plan, const GridPtr&,
                         const PropagatorConfig& config) {
  if (plan.ramp_time > 0.0) return plan.ramp_time;
  // The gap is probed on a single double-well cell: neighboring cells hold
  // degenerate partner states that cannot be reached through the deep
  // barriers on any relevant timescale, so they must not drive the estimate.
  const GridPtr cell = make_grid(512, -1.0, 1.0);
  const PotentialSchedule probe = preparation_schedule(plan, 1.0);
  const double gap = minimum_even_gap(cell, probe, config);
  const double t = 50.0 * 2.0 * std::numbers::pi / gap;
  return std::clamp(t, 5.0, 500.0);
}

PotentialSchedule quench_schedule(const QuenchPlan& plan, double t_delta) {
  ScheduleSegment seg;
  seg.t_start = 0.0;
  seg.t_end = t_delta;
  seg.shape = plan.shape;
  seg.begin = LatticeParams{plan.v1_start, plan.v2, plan.phi_symmetric};
  seg.end = LatticeParams{plan.v_bias, plan.v2, plan.phi_biased};
  return PotentialSchedule({seg});
}

PotentialSchedule biased_lattice_schedule(const QuenchPlan& plan, double t_start, double t_end) {
  return PotentialSchedule::constant(LatticeParams{plan.v_bias, plan.v2, plan.phi_biased},
                                     t_start, t_end);
}

}  // namespace dwell
