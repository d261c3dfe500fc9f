#include "doctest.h"

#include <cmath>

#include "core/classical.hpp"
#include "core/errors.hpp"

using namespace dwell;

namespace {
const DoubleWellModel kModel = DoubleWellModel::from_lattice_depth(35.0, 0.0);
}

TEST_CASE("matched ensemble reproduces the ground-state Wigner widths") {
  const int n = 20000;
  const auto ens = sample_matched_ensemble(kModel, n, 7);
  const double l0 = kModel.ground_width();

  double mean_x = 0.0, mean_p = 0.0;
  for (size_t i = 0; i < ens.size(); ++i) {
    mean_x += ens.weight[i] * ens.x[i];
    mean_p += ens.weight[i] * ens.p[i];
  }
  // <x> and <p> vanish within 5 standard errors
  const double se_x = std::sqrt(0.25 + l0 * l0 / 2.0) / std::sqrt(double(n));
  const double se_p = (1.0 / (std::sqrt(2.0) * l0)) / std::sqrt(double(n));
  CHECK(std::abs(mean_x) < 5.0 * se_x);
  CHECK(std::abs(mean_p) < 5.0 * se_p);

  // per-well position variance -> l0^2/2 within Monte Carlo tolerance
  double var_left = 0.0;
  long n_left = 0;
  for (size_t i = 0; i < ens.size(); ++i) {
    if (ens.x[i] < 0.0) {
      const double d = ens.x[i] + 0.5;
      var_left += d * d;
      ++n_left;
    }
  }
  var_left /= n_left;
  const double expect = l0 * l0 / 2.0;
  const double se_var = expect * std::sqrt(2.0 / n_left);
  CHECK(std::abs(var_left - expect) < 5.0 * se_var);

  // weights sum to one
  double wsum = 0.0;
  for (double w : ens.weight) wsum += w;
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("same seed reproduces the ensemble bitwise") {
  const auto a = sample_matched_ensemble(kModel, 500, 99);
  const auto b = sample_matched_ensemble(kModel, 500, 99);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a.x[i] == b.x[i]);
    CHECK(a.p[i] == b.p[i]);
  }
  const auto c = sample_matched_ensemble(kModel, 500, 100);
  bool all_same = true;
  for (size_t i = 0; i < a.size(); ++i) all_same = all_same && a.x[i] == c.x[i];
  CHECK(!all_same);
}

TEST_CASE("a trajectory at rest at a well bottom keeps D^C = 1 forever") {
  ClassicalEnsemble ens;
  ens.x = {-0.5};
  ens.p = {0.0};
  ens.weight = {1.0};
  ClassicalRunConfig run;
  run.t_final = 10.0;
  run.sample_dt = 0.5;
  const auto series = evolve_classical(ens, kModel, run);
  for (const auto& v : series.values) {
    CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(v.imag()) < 1e-12);
  }
}

TEST_CASE("the ensemble-averaged local equation of motion is zero within MC error") {
  const auto ens = sample_matched_ensemble(kModel, 4000, 3);
  ClassicalRunConfig run;
  run.t_final = 10.0;
  run.sample_dt = 0.5;
  const auto series = evolve_classical(ens, kModel, run);
  for (size_t i = 0; i < series.derivative_values.size(); ++i) {
    CHECK(std::abs(series.derivative_values[i].real()) <
          3.0 * series.derivative_stderr[i].real() + 1e-12);
    CHECK(std::abs(series.derivative_values[i].imag()) <
          3.0 * series.derivative_stderr[i].imag() + 1e-12);
  }
}

TEST_CASE("the bias never enters the classical series: exact equality for any delta") {
  const auto ens = sample_matched_ensemble(kModel, 1000, 5);
  ClassicalRunConfig run;
  run.t_final = 20.0;
  run.sample_dt = 0.25;
  DoubleWellModel biased = kModel;
  biased.delta = 0.3;
  DoubleWellModel very_biased = kModel;
  very_biased.delta = 7.0;
  const auto s0 = evolve_classical(ens, kModel, run);
  const auto s1 = evolve_classical(ens, biased, run);
  const auto s2 = evolve_classical(ens, very_biased, run);
  for (size_t i = 0; i < s0.values.size(); ++i) {
    CHECK(s0.values[i] == s1.values[i]);
    CHECK(s0.values[i] == s2.values[i]);
    CHECK(s0.derivative_values[i] == s1.derivative_values[i]);
  }
}

TEST_CASE("finite-difference d<D^C>/dt matches the local equation within 1% + MC error") {
  const auto ens = sample_matched_ensemble(kModel, 20000, 11);
  ClassicalRunConfig run;
  run.t_final = 4.0;
  run.sample_dt = 0.02;
  const auto series = evolve_classical(ens, kModel, run);
  // centered differences against the recorded RHS; both are small (~MC
  // noise), so compare with a tolerance of 1% of scale + 3 sigma
  double scale = 0.0;
  for (const auto& v : series.derivative_values) scale = std::max(scale, std::abs(v));
  for (size_t i = 1; i + 1 < series.values.size(); ++i) {
    const Complex fd =
        (series.values[i + 1] - series.values[i - 1]) / (2.0 * run.sample_dt);
    const Complex rhs = series.derivative_values[i];
    const double tol = 0.01 * scale + 3.0 * (series.derivative_stderr[i].real() +
                                             series.derivative_stderr[i].imag());
    CHECK(std::abs(fd - rhs) < tol + 1e-9);
  }
}

TEST_CASE("leapfrog keeps the period-averaged energy drift below 1e-6") {
  const auto ens = sample_matched_ensemble(kModel, 200, 13);
  ClassicalRunConfig run;
  run.t_final = 60.0;
  run.sample_dt = 0.5;
  const auto series = evolve_classical(ens, kModel, run);
  CHECK(series.max_relative_energy_drift < 1e-6);
}

TEST_CASE("coarse time steps are rejected") {
  const auto ens = sample_matched_ensemble(kModel, 10, 1);
  ClassicalRunConfig run;
  run.t_final = 1.0;
  run.sample_dt = 0.5;
  run.dt = 2.0 * std::numbers::pi / kModel.omega / 10.0;  // coarser than T/20
  CHECK_THROWS_AS(evolve_classical(ens, kModel, run), std::invalid_argument);
}

TEST_CASE("escaping trajectories raise a domain error") {
  ClassicalEnsemble ens;
  ens.x = {-0.5};
  ens.p = {80.0};  // enough momentum to leave the domain window
  ens.weight = {1.0};
  ClassicalRunConfig run;
  run.t_final = 5.0;
  run.sample_dt = 0.1;
  run.domain_half_width = 1.5;
  CHECK_THROWS_AS(evolve_classical(ens, kModel, run), dwell::domain_error);
}

TEST_CASE("microcanonical shell option: symmetric, bias-blind, on the ground orbit") {
  const auto ens =
      sample_matched_ensemble(kModel, 2000, 21, EnsembleKind::microcanonical_shell);
  const double l0 = kModel.ground_width();
  // every sample sits exactly on the ground-state-energy orbit of its well
  for (size_t i = 0; i < ens.size(); ++i) {
    const double center = ens.x[i] < 0.0 ? -0.5 : 0.5;
    const double u = (ens.x[i] - center) / l0;
    const double v = ens.p[i] * l0 / units::hbar;
    CHECK(u * u + v * v == doctest::Approx(1.0).epsilon(1e-12));
  }
  ClassicalRunConfig run;
  run.t_final = 8.0;
  run.sample_dt = 0.5;
  DoubleWellModel biased = kModel;
  biased.delta = 0.3;
  const auto s0 = evolve_classical(ens, kModel, run);
  const auto s1 = evolve_classical(ens, biased, run);
  for (size_t i = 0; i < s0.values.size(); ++i) {
    CHECK(s0.values[i] == s1.values[i]);
    CHECK(std::abs(s0.derivative_values[i].real()) <
          3.0 * s0.derivative_stderr[i].real() + 1e-12);
  }
}

TEST_CASE("averages are bitwise independent of the worker thread count") {
  const auto ens = sample_matched_ensemble(kModel, 1500, 77);
  ClassicalRunConfig run;
  run.t_final = 5.0;
  run.sample_dt = 0.5;
  setenv("DWELL_THREADS", "1", 1);
  const auto serial = evolve_classical(ens, kModel, run);
  setenv("DWELL_THREADS", "4", 1);
  const auto parallel = evolve_classical(ens, kModel, run);
  unsetenv("DWELL_THREADS");
  for (size_t i = 0; i < serial.values.size(); ++i) {
    CHECK(serial.values[i] == parallel.values[i]);
    CHECK(serial.derivative_values[i] == parallel.derivative_values[i]);
  }
}
