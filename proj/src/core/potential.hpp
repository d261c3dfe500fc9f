#pragma once

#include <limits>
#include <variant>
#include <vector>

#include "core/grid.hpp"

namespace dwell {

// Two-color lattice V(x) = -v1 sin^2(k x/2 + phi) - v2 sin^2(k x), k = pi/L.
// Depths in E_r, phase in radians; v1 or v2 may be zero to drop a component.
struct LatticeParams {
  double v1 = 0.0;
  double v2 = 0.0;
  double phi = 0.0;
};

// Idealized piecewise double well: identical harmonic traps of frequency
// omega centered at -/+ separation/2, with the right well raised by delta.
// The join sits at x = 0 and is never probed by well-localized packets.
// v_cap is a numerical ceiling applied far up the parabola walls so that a
// propagation step size is not dictated by potential values in regions of
// negligible amplitude; infinity leaves the parabolas exact.
struct DoubleWellModel {
  double omega = 0.0;
  double delta = 0.0;
  double separation = units::well_spacing;
  double v_cap = std::numeric_limits<double>::infinity();

  static DoubleWellModel from_lattice_depth(double v2, double delta);
  double ground_width() const { return units::ground_width(omega); }
};

struct GlobalTrap {
  double omega_t = 0.0;
  double center = 0.0;
};

enum class RampShape { constant, linear, smoothstep };

using WellPotential = std::variant<LatticeParams, DoubleWellModel>;

// One schedule segment: parameters interpolate from `begin` to `end` over
// [t_start, t_end] with the given ramp shape. Both ends must hold the same
// potential kind.
struct ScheduleSegment {
  double t_start = 0.0;
  double t_end = 0.0;
  RampShape shape = RampShape::constant;
  WellPotential begin;
  WellPotential end;
  GlobalTrap trap;
};

// Piecewise time-dependent potential. Segments are contiguous and
// non-overlapping; evaluation outside the span is an error.
class PotentialSchedule {
 public:
  PotentialSchedule() = default;
  explicit PotentialSchedule(std::vector<ScheduleSegment> segments);

  static PotentialSchedule constant(WellPotential pot, double t_start, double t_end,
                                    GlobalTrap trap = {});

  double t_begin() const;
  double t_end() const;
  const std::vector<ScheduleSegment>& segments() const { return segments_; }

  // Interpolated parameters at time t.
  WellPotential parameters_at(double t) const;
  const ScheduleSegment& segment_at(double t) const;

  // True if the potential is constant over [t0, t1] (single segment, equal
  // endpoint parameters); lets the propagator cache phase factors.
  bool is_static_over(double t0, double t1) const;

 private:
  std::vector<ScheduleSegment> segments_;
};

double smoothstep(double s);

ComplexField lattice_potential(const LatticeParams& params, const GridPtr& grid);
ComplexField double_well_potential(const DoubleWellModel& model, const GridPtr& grid);
void add_global_trap(ComplexField& potential, const GlobalTrap& trap);

ComplexField evaluate_potential(const WellPotential& pot, const GridPtr& grid);
ComplexField evaluate_schedule(const PotentialSchedule& schedule, double t, const GridPtr& grid);

}  // namespace dwell
