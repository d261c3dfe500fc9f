#include "core/potential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dwell {

DoubleWellModel DoubleWellModel::from_lattice_depth(double v2, double delta) {
  DoubleWellModel model;
  model.omega = units::trap_frequency(v2);
  model.delta = delta;
  return model;
}

double smoothstep(double s) {
  s = std::clamp(s, 0.0, 1.0);
  return s * s * (3.0 - 2.0 * s);
}

namespace {

double ramp_fraction(RampShape shape, double s) {
  switch (shape) {
    case RampShape::constant: return 0.0;
    case RampShape::linear: return std::clamp(s, 0.0, 1.0);
    case RampShape::smoothstep: return smoothstep(s);
  }
  return 0.0;
}

double lerp(double a, double b, double u) { return a + (b - a) * u; }

WellPotential interpolate(const WellPotential& a, const WellPotential& b, double u) {
  if (a.index() != b.index())
    throw std::invalid_argument("schedule segment endpoints must hold the same potential kind");
  if (std::holds_alternative<LatticeParams>(a)) {
    const auto& pa = std::get<LatticeParams>(a);
    const auto& pb = std::get<LatticeParams>(b);
    return LatticeParams{lerp(pa.v1, pb.v1, u), lerp(pa.v2, pb.v2, u), lerp(pa.phi, pb.phi, u)};
  }
  const auto& ma = std::get<DoubleWellModel>(a);
  const auto& mb = std::get<DoubleWellModel>(b);
  DoubleWellModel m;
  m.omega = lerp(ma.omega, mb.omega, u);
  m.delta = lerp(ma.delta, mb.delta, u);
  m.separation = lerp(ma.separation, mb.separation, u);
  m.v_cap = std::min(ma.v_cap, mb.v_cap);
  return m;
}

bool same_parameters(const WellPotential& a, const WellPotential& b) {
  if (a.index() != b.index()) return false;
  if (std::holds_alternative<LatticeParams>(a)) {
    const auto& pa = std::get<LatticeParams>(a);
    const auto& pb = std::get<LatticeParams>(b);
    return pa.v1 == pb.v1 && pa.v2 == pb.v2 && pa.phi == pb.phi;
  }
  const auto& ma = std::get<DoubleWellModel>(a);
  const auto& mb = std::get<DoubleWellModel>(b);
  return ma.omega == mb.omega && ma.delta == mb.delta && ma.separation == mb.separation &&
         ma.v_cap == mb.v_cap;
}

void validate_lattice(const LatticeParams& p) {
  if (p.v1 < 0.0 || p.v2 < 0.0)
    throw std::invalid_argument("lattice depths must be non-negative");
}

}  // namespace

PotentialSchedule::PotentialSchedule(std::vector<ScheduleSegment> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty()) throw std::invalid_argument("schedule needs at least one segment");
  for (size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    if (!(s.t_end > s.t_start))
      throw std::invalid_argument("schedule segment must have t_end > t_start");
    if (s.begin.index() != s.end.index())
      throw std::invalid_argument("schedule segment endpoints must hold the same potential kind");
    if (i > 0 && segments_[i - 1].t_end != s.t_start)
      throw std::invalid_argument("schedule segments must be contiguous");
    if (s.trap.omega_t < 0.0) throw std::invalid_argument("global trap frequency must be >= 0");
  }
}

PotentialSchedule PotentialSchedule::constant(WellPotential pot, double t_start, double t_end,
                                              GlobalTrap trap) {
  ScheduleSegment seg;
  seg.t_start = t_start;
  seg.t_end = t_end;
  seg.shape = RampShape::constant;
  seg.begin = pot;
  seg.end = std::move(pot);
  seg.trap = trap;
  return PotentialSchedule({seg});
}

double PotentialSchedule::t_begin() const { return segments_.front().t_start; }
double PotentialSchedule::t_end() const { return segments_.back().t_end; }

const ScheduleSegment& PotentialSchedule::segment_at(double t) const {
  if (t < t_begin() || t > t_end())
    throw std::out_of_range("schedule evaluated outside its time span");
  for (const auto& s : segments_) {
    if (t <= s.t_end) return s;
  }
  return segments_.back();
}

WellPotential PotentialSchedule::parameters_at(double t) const {
  const ScheduleSegment& s = segment_at(t);
  if (s.shape == RampShape::constant) return s.begin;
  const double span = s.t_end - s.t_start;
  const double u = ramp_fraction(s.shape, (t - s.t_start) / span);
  return interpolate(s.begin, s.end, u);
}

bool PotentialSchedule::is_static_over(double t0, double t1) const {
  const ScheduleSegment& a = segment_at(t0);
  const ScheduleSegment& b = segment_at(t1);
  if (&a != &b) return false;
  return a.shape == RampShape::constant || same_parameters(a.begin, a.end);
}

ComplexField lattice_potential(const LatticeParams& params, const GridPtr& grid) {
  validate_lattice(params);
  ComplexField field(grid);
  const double k = units::lattice_k;
  for (int j = 0; j < field.size(); ++j) {
    const double x = grid->x[j];
    const double s1 = std::sin(k * x / 2.0 + params.phi);
    const double s2 = std::sin(k * x);
    field.values[j] = -params.v1 * s1 * s1 - params.v2 * s2 * s2;
  }
  return field;
}

ComplexField double_well_potential(const DoubleWellModel& model, const GridPtr& grid) {
  ComplexField field(grid);
  const double half = model.separation / 2.0;
  const double curv = 0.5 * units::mass * model.omega * model.omega;
  for (int j = 0; j < field.size(); ++j) {
    const double x = grid->x[j];
    double v;
    if (x < 0.0) {
      v = curv * (x + half) * (x + half);
    } else {
      v = curv * (x - half) * (x - half) + model.delta;
    }
    field.values[j] = std::min(v, model.v_cap);
  }
  return field;
}

void add_global_trap(ComplexField& potential, const GlobalTrap& trap) {
  if (trap.omega_t == 0.0) return;
  const double curv = 0.5 * units::mass * trap.omega_t * trap.omega_t;
  for (int j = 0; j < potential.size(); ++j) {
    const double d = potential.grid->x[j] - trap.center;
    potential.values[j] += curv * d * d;
  }
}

ComplexField evaluate_potential(const WellPotential& pot, const GridPtr& grid) {
  if (std::holds_alternative<LatticeParams>(pot))
    return lattice_potential(std::get<LatticeParams>(pot), grid);
  return double_well_potential(std::get<DoubleWellModel>(pot), grid);
}

ComplexField evaluate_schedule(const PotentialSchedule& schedule, double t, const GridPtr& grid) {
  ComplexField field = evaluate_potential(schedule.parameters_at(t), grid);
  add_global_trap(field, schedule.segment_at(t).trap);
  return field;
}

}  // namespace dwell
