#include "doctest.h"

#include <cmath>
#include <random>

#include "core/observables.hpp"
#include "core/ramsey.hpp"

using namespace dwell;

namespace {

ComplexField random_motional_state(const GridPtr& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexField psi(g);
  for (auto& v : psi.values) v = Complex(normal(rng), normal(rng));
  normalize(psi);
  return psi;
}

}  // namespace

TEST_CASE("pi/2 pulse splits a pure up state into equal populations") {
  const auto g = make_grid(128, -1.5, 1.5);
  const auto s = pi_half_pulse(SpinorField::pure_up(gaussian_packet(g, 0.0, 0.2)), 0.0);
  const auto m = measure_populations(s);
  CHECK(m.p_up == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m.p_down == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s.total_norm_squared() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("two pi/2 pulses compose into a pi pulse: up maps to down up to phase") {
  const auto g = make_grid(128, -1.5, 1.5);
  const auto psi = gaussian_packet(g, 0.0, 0.2);
  auto s = SpinorField::pure_up(psi);
  s = pi_half_pulse(pi_half_pulse(s, 0.0), 0.0);
  CHECK(norm_squared(s.up) < 1e-24);
  CHECK(norm_squared(s.down) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::norm(inner_product(psi, s.down)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("spin-dependent shift moves only the occupied component") {
  const auto g = make_grid(512, -1.5, 1.5);
  const auto psi = gaussian_packet(g, 0.0, 0.13);
  auto s = spin_dependent_shift(SpinorField::pure_up(psi), 0.5);
  CHECK(norm_squared(s.down) == 0.0);
  CHECK(position_mean(s.up) == doctest::Approx(-0.5).epsilon(1e-6));
  CHECK(s.total_norm_squared() == doctest::Approx(1.0).epsilon(1e-12));

  SUBCASE("zero shift is the identity") {
    const auto id = spin_dependent_shift(SpinorField::pure_up(psi), 0.0);
    for (int j = 0; j < psi.size(); ++j) CHECK(id.up.values[j] == psi.values[j]);
  }

  SUBCASE("composition with the inverse shift returns the input") {
    const auto back = spin_dependent_shift(s, -0.5);
    double worst = 0.0;
    for (int j = 0; j < psi.size(); ++j) {
      worst = std::max(worst, std::abs(back.up.values[j] - psi.values[j]));
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("population measurement basics") {
  const auto g = make_grid(128, -1.5, 1.5);
  const auto psi = gaussian_packet(g, 0.0, 0.2);
  const auto pure = measure_populations(SpinorField::pure_up(psi));
  CHECK(pure.difference == doctest::Approx(-1.0).epsilon(1e-12));
  const auto equal = measure_populations(pi_half_pulse(SpinorField::pure_up(psi), 0.0));
  CHECK(equal.difference == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("protocol on a single localized packet reads ~0 in both quadratures") {
  const auto g = make_grid(512, -1.5, 1.5);
  const auto psi = gaussian_packet(g, -0.25, 0.1);  // L >> l0
  CHECK(std::abs(run_ramsey(psi, 1.0, Quadrature::real).difference) < 1e-9);
  CHECK(std::abs(run_ramsey(psi, 1.0, Quadrature::imaginary).difference) < 1e-9);
}

TEST_CASE("protocol on the equal superposition reads +1/2 in the real quadrature") {
  const auto g = make_grid(1024, -1.5, 1.5);
  const double l0 = units::ground_width(units::trap_frequency(35.0));
  const auto psi = two_packet_state(gaussian_packet(g, 0.0, l0), 1.0, 0.0);
  CHECK(run_ramsey(psi, 1.0, Quadrature::real).difference ==
        doctest::Approx(0.5).epsilon(1e-4));
  CHECK(std::abs(run_ramsey(psi, 1.0, Quadrature::imaginary).difference) < 1e-8);
}

TEST_CASE("protocol tracks the quarter-period rotation into the imaginary quadrature") {
  const auto g = make_grid(1024, -1.5, 1.5);
  DoubleWellModel m = DoubleWellModel::from_lattice_depth(35.0, 0.3);
  const auto sched = PotentialSchedule::constant(m, 0.0, 10.0);
  PropagatorConfig prop;
  prop.dt = 1e-3;
  prop.boundary_amplitude_limit = 1e-5;
  ComplexField psi =
      two_packet_state(gaussian_packet(g, 0.0, m.ground_width()), 1.0, 0.0);
  const double quarter = (std::numbers::pi / 2.0) / 0.3;
  propagate(psi, sched, 0.0, quarter, prop);
  // Im<D>(t) = -(1/2) sin(omega_d t) -> -1/2 at the quarter period
  const double im = run_ramsey(psi, 1.0, Quadrature::imaginary).difference;
  CHECK(im == doctest::Approx(-0.5).epsilon(0.01));
  const auto direct = displacement_expectation(psi, 1.0);
  CHECK(im == doctest::Approx(direct.imag()).epsilon(1e-10));
}

TEST_CASE("protocol identity: difference equals Re/Im <D_L> for 200 random states") {
  const auto g = make_grid(256, -2.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto psi = random_motional_state(g, 1000 + i);
    const auto d = displacement_expectation(psi, units::well_spacing);
    const auto re = run_ramsey(psi, units::well_spacing, Quadrature::real);
    const auto im = run_ramsey(psi, units::well_spacing, Quadrature::imaginary);
    worst = std::max({worst, std::abs(re.difference - d.real()),
                      std::abs(im.difference - d.imag())});
    // norm preservation through the protocol steps
    CHECK(std::abs(re.p_up + re.p_down - 1.0) < 1e-12);
    CHECK(std::abs(im.p_up + im.p_down - 1.0) < 1e-12);
    // quadrature completeness
    const double mod2 = re.difference * re.difference + im.difference * im.difference;
    CHECK(mod2 == doctest::Approx(std::norm(d)).epsilon(1e-9));
  }
  CHECK(worst < 1e-10);
}
