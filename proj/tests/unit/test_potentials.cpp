#include "doctest.h"

#include <cmath>

#include "core/potential.hpp"

using namespace dwell;

TEST_CASE("null lattice gives an identically zero potential") {
  const auto g = make_grid(128, -2.0, 2.0);
  const auto v = lattice_potential(LatticeParams{0.0, 0.0, 0.0}, g);
  for (const auto& val : v.values) {
    CHECK(val.real() == 0.0);
    CHECK(val.imag() == 0.0);
  }
}

TEST_CASE("short lattice v2 = 35 has -35 E_r minima at x = +-L/2") {
  const auto g = make_grid(2048, -2.0, 2.0);
  const auto v = lattice_potential(LatticeParams{0.0, 35.0, 0.0}, g);
  // brute-force scan for the minima nearest +-L/2
  double vmin = 1e300;
  for (const auto& val : v.values) vmin = std::min(vmin, val.real());
  CHECK(vmin == doctest::Approx(-35.0).epsilon(1e-6));
  for (double target : {-0.5, 0.5}) {
    int jbest = 0;
    for (int j = 1; j < v.size(); ++j) {
      if (std::abs(g->x[j] - target) < std::abs(g->x[jbest] - target)) jbest = j;
    }
    // the nearest grid point to the analytic minimum must be within one cell
    // of the scanned minimum
    int jmin = jbest;
    for (int j = 0; j < v.size(); ++j) {
      if (std::abs(g->x[j] - target) < 0.25 && v.values[j].real() < v.values[jmin].real())
        jmin = j;
    }
    CHECK(std::abs(g->x[jmin] - target) <= g->dx + 1e-12);
  }
}

TEST_CASE("phi = pi/4 long-lattice bias matches direct evaluation at the well bottoms") {
  const auto g = make_grid(4096, -2.0, 2.0);
  const double v1 = 0.6, delta = 0.3;  // v1 = 2*delta configuration
  const auto v = lattice_potential(LatticeParams{v1, 35.0, std::numbers::pi / 4.0}, g);

  // well bottoms of the short lattice sit at +-L/2; the long lattice offsets
  // them by -v1 sin^2(k x/2 + pi/4)
  const double k = units::lattice_k;
  auto lattice_min_near = [&](double target) {
    int jmin = -1;
    for (int j = 0; j < v.size(); ++j) {
      if (std::abs(g->x[j] - target) < 0.3 &&
          (jmin < 0 || v.values[j].real() < v.values[jmin].real()))
        jmin = j;
    }
    return jmin;
  };
  const int jl = lattice_min_near(-0.5);
  const int jr = lattice_min_near(0.5);
  const double measured = v.values[jr].real() - v.values[jl].real();
  const double s_r = std::sin(k * g->x[jr] / 2.0 + std::numbers::pi / 4.0);
  const double s_l = std::sin(k * g->x[jl] / 2.0 + std::numbers::pi / 4.0);
  const double direct = -v1 * (s_r * s_r - s_l * s_l) - 35.0 * (std::pow(std::sin(k * g->x[jr]), 2) -
                                                                std::pow(std::sin(k * g->x[jl]), 2));
  CHECK(measured == doctest::Approx(direct).epsilon(1e-12));
  // at this phase the bottoms differ by close to v1 itself
  CHECK(std::abs(measured) == doctest::Approx(v1).epsilon(0.02));
}

TEST_CASE("negative lattice depths are rejected") {
  const auto g = make_grid(64, -2.0, 2.0);
  CHECK_THROWS_AS(lattice_potential(LatticeParams{-1.0, 0.0, 0.0}, g), std::invalid_argument);
  CHECK_THROWS_AS(lattice_potential(LatticeParams{0.0, -5.0, 0.0}, g), std::invalid_argument);
}

TEST_CASE("unbiased double well is even in x to round-off") {
  const auto g = make_grid(1024, -2.0, 2.0);
  DoubleWellModel m = DoubleWellModel::from_lattice_depth(35.0, 0.0);
  const auto v = double_well_potential(m, g);
  double asym = 0.0;
  for (int j = 1; j < v.size(); ++j) {
    const int jr = v.size() - j;
    asym = std::max(asym, std::abs(v.values[j].real() - v.values[jr % v.size()].real()));
  }
  CHECK(asym < 1e-12);
}

TEST_CASE("double well bottoms sit at 0 and delta") {
  const auto g = make_grid(2048, -2.0, 2.0);  // +-L/2 are grid points
  DoubleWellModel m = DoubleWellModel::from_lattice_depth(35.0, 0.3);
  const auto v = double_well_potential(m, g);
  int jl = 0, jr = 0;
  for (int j = 0; j < v.size(); ++j) {
    if (g->x[j] == -0.5) jl = j;
    if (g->x[j] == 0.5) jr = j;
  }
  CHECK(v.values[jl].real() == doctest::Approx(0.0));
  CHECK(v.values[jr].real() == doctest::Approx(0.3));
}

TEST_CASE("trap frequency from v2 = 35 E_r is 2 sqrt(35), about 2 pi x 42 kHz for 87Rb") {
  const double omega = units::trap_frequency(35.0);
  CHECK(omega == doctest::Approx(2.0 * std::sqrt(35.0)).epsilon(1e-15));
  CHECK(omega == doctest::Approx(11.832159566199232).epsilon(1e-12));

  units::SiConstants si;  // 87Rb at lambda = 800 nm
  const double f_hz = si.natural_to_frequency_hz(omega);
  CHECK(f_hz == doctest::Approx(42000.0).epsilon(0.02));
}

TEST_CASE("harmonic approximation of the short lattice holds to 2% near the minimum") {
  const auto g = make_grid(8192, -2.0, 2.0);
  const double v2 = 35.0;
  const auto v = lattice_potential(LatticeParams{0.0, v2, 0.0}, g);
  const double omega = units::trap_frequency(v2);
  const double l0 = units::ground_width(omega);
  for (int j = 0; j < v.size(); ++j) {
    const double u = g->x[j] - 0.5;  // distance from the right minimum
    if (std::abs(u) > l0) continue;
    const double harmonic = -v2 + 0.5 * units::mass * omega * omega * u * u;
    const double rel = std::abs(v.values[j].real() - harmonic) / std::abs(v.values[j].real());
    CHECK(rel < 0.02);
  }
}

TEST_CASE("schedule interpolation follows the ramp shapes") {
  ScheduleSegment seg;
  seg.t_start = 0.0;
  seg.t_end = 10.0;
  seg.begin = LatticeParams{35.0, 0.0, 0.0};
  seg.end = LatticeParams{0.0, 35.0, 0.0};

  SUBCASE("constant segment evaluates to its begin parameters everywhere") {
    seg.shape = RampShape::constant;
    const PotentialSchedule sched({seg});
    const auto g = make_grid(64, -2.0, 2.0);
    const auto v0 = evaluate_schedule(sched, 0.0, g);
    const auto v1 = evaluate_schedule(sched, 10.0, g);
    for (int j = 0; j < v0.size(); ++j) CHECK(v0.values[j] == v1.values[j]);
  }

  SUBCASE("linear ramp reaches half depth at half time") {
    seg.shape = RampShape::linear;
    const PotentialSchedule sched({seg});
    const auto p = std::get<LatticeParams>(sched.parameters_at(5.0));
    CHECK(p.v2 == doctest::Approx(17.5));
    CHECK(p.v1 == doctest::Approx(17.5));
  }

  SUBCASE("smoothstep ramp has zero parameter slope at both endpoints") {
    seg.shape = RampShape::smoothstep;
    const PotentialSchedule sched({seg});
    const double eps = 1e-5;
    const auto p0 = std::get<LatticeParams>(sched.parameters_at(0.0));
    const auto p0e = std::get<LatticeParams>(sched.parameters_at(eps));
    const auto p1 = std::get<LatticeParams>(sched.parameters_at(10.0));
    const auto p1e = std::get<LatticeParams>(sched.parameters_at(10.0 - eps));
    CHECK(std::abs(p0e.v2 - p0.v2) / eps < 1e-3);  // slope ~ 0 (O(eps) residue)
    CHECK(std::abs(p1.v2 - p1e.v2) / eps < 1e-3);
  }
}

TEST_CASE("schedule evaluation outside the span is an error") {
  DoubleWellModel m = DoubleWellModel::from_lattice_depth(35.0, 0.0);
  const auto sched = PotentialSchedule::constant(m, 1.0, 2.0);
  const auto g = make_grid(64, -2.0, 2.0);
  CHECK_THROWS_AS(evaluate_schedule(sched, 0.5, g), std::out_of_range);
  CHECK_THROWS_AS(evaluate_schedule(sched, 2.5, g), std::out_of_range);
}

TEST_CASE("schedule segments must be contiguous and ordered") {
  DoubleWellModel m = DoubleWellModel::from_lattice_depth(35.0, 0.0);
  ScheduleSegment a, b;
  a.t_start = 0.0;
  a.t_end = 1.0;
  a.begin = a.end = m;
  b = a;
  b.t_start = 1.5;  // gap
  b.t_end = 2.0;
  CHECK_THROWS_AS(PotentialSchedule({a, b}), std::invalid_argument);
  b.t_start = 1.0;
  b.t_end = 1.0;  // empty
  CHECK_THROWS_AS(PotentialSchedule({a, b}), std::invalid_argument);
}

TEST_CASE("global trap adds m omega_t^2 (x-c)^2 / 2 pointwise, exactly") {
  const auto g = make_grid(256, -2.0, 2.0);
  DoubleWellModel m = DoubleWellModel::from_lattice_depth(35.0, 0.3);
  GlobalTrap trap{0.014, 0.0};
  auto bare = PotentialSchedule::constant(m, 0.0, 1.0);
  auto trapped = PotentialSchedule::constant(m, 0.0, 1.0, trap);
  const auto v0 = evaluate_schedule(bare, 0.5, g);
  const auto v1 = evaluate_schedule(trapped, 0.5, g);
  for (int j = 0; j < v0.size(); ++j) {
    const double expect = 0.5 * units::mass * trap.omega_t * trap.omega_t * g->x[j] * g->x[j];
    CHECK(std::abs(v1.values[j].real() - v0.values[j].real() - expect) < 1e-12);
  }
}
