#include "doctest.h"

#include <cmath>

#include "core/signal.hpp"

using namespace dwell;

namespace {

SignalConfig rb87_trap_config() {
  SignalConfig sc;
  sc.n_wells = 40;
  sc.omega_t = units::SiConstants{}.frequency_hz_to_natural(50.0);
  sc.delta = 0.3;
  sc.gamma = 0.1;
  sc.t_final = 120.0;
  return sc;
}

}  // namespace

TEST_CASE("single centered well with no dephasing is a pure cosine of amplitude 1/2") {
  SignalConfig sc;
  sc.n_wells = 1;
  sc.gamma = 0.0;
  sc.delta = 0.3;
  sc.t_final = 80.0;
  const auto sig = closed_form_signal(sc);
  for (size_t i = 0; i < sig.times.size(); ++i) {
    CHECK(sig.signal[i] == doctest::Approx(0.5 * std::cos(0.3 * sig.times[i])).epsilon(1e-12));
  }
  auto copy = sig;
  compute_spectrum(copy);
  CHECK(std::abs(copy.peak_freq - 0.3) <= copy.bin_width);
}

TEST_CASE("signal starts at exactly 1/2 for any configuration") {
  auto sc = rb87_trap_config();
  const auto sig = closed_form_signal(sc);
  CHECK(sig.signal[0] == 0.5);
}

TEST_CASE("per-well bias grows linearly in the well position") {
  const auto sc = rb87_trap_config();
  const double slope = units::mass * sc.omega_t * sc.omega_t * units::well_spacing;
  for (double x : {-19.5, -3.0, 1.0, 19.5}) {
    CHECK(sc.bias_for_well(x) - sc.delta == doctest::Approx(slope * x).epsilon(1e-15));
  }
  // delta_j / x_j constant across wells
  CHECK((sc.bias_for_well(4.0) - sc.delta) / 4.0 ==
        doctest::Approx((sc.bias_for_well(-7.0) - sc.delta) / -7.0).epsilon(1e-12));
}

TEST_CASE("87Rb trap configuration: damped oscillation inside the e^{-gamma t}/2 envelope") {
  const auto sig = closed_form_signal(rb87_trap_config());
  int sign_changes = 0;
  for (size_t i = 1; i < sig.signal.size(); ++i) {
    CHECK(std::abs(sig.signal[i]) <= 0.5 * std::exp(-0.1 * sig.times[i]) + 1e-9);
    if (sig.signal[i - 1] * sig.signal[i] < 0.0) ++sign_changes;
  }
  CHECK(sign_changes >= 4);  // oscillation survives the trap averaging
}

TEST_CASE("spectrum peaks at the bias and broadening increases the linewidth") {
  auto broadened = closed_form_signal(rb87_trap_config());
  compute_spectrum(broadened);
  CHECK(std::abs(broadened.peak_freq - 0.3) <= broadened.bin_width);

  auto single_cfg = rb87_trap_config();
  single_cfg.n_wells = 1;
  single_cfg.omega_t = 0.0;
  auto single = closed_form_signal(single_cfg);
  compute_spectrum(single);
  CHECK(broadened.fwhm > single.fwhm);

  // doubling gamma widens the line further
  auto hot_cfg = single_cfg;
  hot_cfg.gamma = 0.2;
  auto hot = closed_form_signal(hot_cfg);
  compute_spectrum(hot);
  CHECK(hot.fwhm > single.fwhm);
}

TEST_CASE("peak location is robust over random well layouts") {
  for (int draw = 0; draw < 20; ++draw) {
    auto sc = rb87_trap_config();
    sc.layout = WellLayout::random_in_trap;
    sc.layout_seed = 1000 + draw;
    auto sig = closed_form_signal(sc);
    compute_spectrum(sig);
    // inhomogeneous broadening scale: max |delta_j|
    const double slope = units::mass * sc.omega_t * sc.omega_t * units::well_spacing;
    const double max_detuning = slope * sc.n_wells;
    CHECK(std::abs(sig.peak_freq - 0.3) < std::max(max_detuning, sig.bin_width));
  }
}

TEST_CASE("spectrum requires at least 8 samples") {
  SignalConfig sc;
  sc.n_wells = 1;
  sc.t_final = 3.0;
  sc.sample_dt = 1.0;
  auto sig = closed_form_signal(sc);
  CHECK(sig.signal.size() < 8);
  CHECK_THROWS_AS(compute_spectrum(sig), std::invalid_argument);
}

TEST_CASE("well position list must match n_wells") {
  SignalConfig sc;
  sc.n_wells = 3;
  sc.well_positions = {0.0, 1.0};
  CHECK_THROWS_AS(closed_form_signal(sc), std::invalid_argument);
}

TEST_CASE("negative dephasing rejected") {
  SignalConfig sc;
  sc.gamma = -0.1;
  CHECK_THROWS_AS(closed_form_signal(sc), std::invalid_argument);
}

TEST_CASE("shot noise overlay converges, quantizes and reproduces") {
  auto sc = rb87_trap_config();
  sc.t_final = 30.0;
  const auto sig = closed_form_signal(sc);

  const auto many = shot_noise_overlay(sig, 100000000, 42);
  double worst = 0.0;
  for (size_t i = 0; i < sig.signal.size(); ++i) {
    worst = std::max(worst, std::abs(many.signal[i] - sig.signal[i]));
  }
  CHECK(worst < 1e-3);

  const auto one = shot_noise_overlay(sig, 1, 42);
  for (double v : one.signal) CHECK((v == 0.5 || v == -0.5));

  const auto again = shot_noise_overlay(sig, 1000, 7);
  const auto again2 = shot_noise_overlay(sig, 1000, 7);
  for (size_t i = 0; i < again.signal.size(); ++i) CHECK(again.signal[i] == again2.signal[i]);
}

TEST_CASE("uniform layout centers n_wells sites on the trap with spacing L") {
  SignalConfig sc;
  sc.n_wells = 5;
  const auto xs = sc.resolved_positions();
  REQUIRE(xs.size() == 5);
  CHECK(xs[0] == doctest::Approx(-2.0));
  CHECK(xs[4] == doctest::Approx(2.0));
  CHECK(xs[1] - xs[0] == doctest::Approx(units::well_spacing));
}
