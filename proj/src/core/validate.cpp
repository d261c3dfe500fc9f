#include "core/validate.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "core/classical.hpp"
#include "core/observables.hpp"
#include "core/ramsey.hpp"

namespace dwell {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

ComplexField random_state(const GridPtr& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexField psi(grid);
  for (auto& v : psi.values) v = Complex(normal(rng), normal(rng));
  normalize(psi);
  return psi;
}

}  // namespace

std::vector<CheckResult> run_validation_suite() {
  std::vector<CheckResult> results;
  const auto check = [&](const std::string& name, bool pass, const std::string& detail) {
    results.push_back({name, pass, detail});
  };

  {  // DFT round trip and Parseval
    const auto grid = make_grid(512, -4.0, 4.0);
    const auto psi = random_state(grid, 7);
    const auto back = inverse_dft(forward_dft(psi));
    double err = 0.0;
    for (int j = 0; j < psi.size(); ++j) err = std::max(err, std::abs(back.values[j] - psi.values[j]));
    const double parseval = std::abs(norm_squared(forward_dft(psi)) - norm_squared(psi));
    check("dft_round_trip", err < 1e-12 && parseval < 1e-12,
          "max error " + sci(err));
  }

  {  // translation group laws
    const auto grid = make_grid(512, -4.0, 4.0);
    const auto psi = gaussian_packet(grid, 0.3, 0.5);
    const auto once = translate(translate(psi, 0.37), -0.81);
    const auto direct = translate(psi, 0.37 - 0.81);
    double err = 0.0;
    for (int j = 0; j < psi.size(); ++j) err = std::max(err, std::abs(once.values[j] - direct.values[j]));
    const double unitarity = std::abs(norm_squared(translate(psi, 1.234)) - 1.0);
    check("translate_composition", err < 1e-12, "max error " + sci(err));
    check("translate_unitarity", unitarity < 1e-13, "norm deviation " + sci(unitarity));
  }

  {  // protocol identity on random motional states
    const auto grid = make_grid(256, -2.0, 2.0);
    double worst = 0.0;
    for (int i = 0; i < 40; ++i) {
      const auto psi = random_state(grid, 100 + i);
      const Complex d = displacement_expectation(psi, units::well_spacing);
      const double re = run_ramsey(psi, units::well_spacing, Quadrature::real).difference;
      const double im = run_ramsey(psi, units::well_spacing, Quadrature::imaginary).difference;
      worst = std::max({worst, std::abs(re - d.real()), std::abs(im - d.imag())});
    }
    check("ramsey_protocol_identity", worst < 1e-10, "max deviation " + sci(worst));
  }

  {  // norm conservation over 1000 real-time steps
    const auto grid = make_grid(512, -1.5, 1.5);
    DoubleWellModel model = DoubleWellModel::from_lattice_depth(35.0, 0.3);
    const auto schedule = PotentialSchedule::constant(model, 0.0, 2.0);
    PropagatorConfig prop;
    prop.dt = 1e-3;
    prop.boundary_amplitude_limit = 1e-5;
    auto psi = two_packet_state(gaussian_packet(grid, 0.0, model.ground_width()),
                                units::well_spacing, 0.0);
    const double n0 = norm_squared(psi);
    propagate(psi, schedule, 0.0, 1.0, prop);
    const double drift = std::abs(norm_squared(psi) - n0);
    check("norm_conservation_1000_steps", drift < 1e-12, "drift " + sci(drift));
  }

  {  // classical trajectories cannot see the bias
    DoubleWellModel model = DoubleWellModel::from_lattice_depth(35.0, 0.0);
    const auto ens = sample_matched_ensemble(model, 200, 42);
    ClassicalRunConfig run;
    run.t_final = 5.0;
    run.sample_dt = 0.25;
    DoubleWellModel biased = model;
    biased.delta = 0.3;
    const auto a = evolve_classical(ens, model, run);
    const auto b = evolve_classical(ens, biased, run);
    bool identical = true;
    for (size_t i = 0; i < a.values.size(); ++i) {
      if (a.values[i] != b.values[i]) identical = false;
    }
    check("classical_bias_blindness", identical, "series bitwise equal");
  }

  {  // one bias period of the displacement rotation
    const auto grid = make_grid(512, -1.5, 1.5);
    DoubleWellModel model = DoubleWellModel::from_lattice_depth(35.0, 0.3);
    const auto schedule = PotentialSchedule::constant(model, 0.0, 30.0);
    PropagatorConfig prop;
    prop.dt = 1e-3;
    prop.boundary_amplitude_limit = 1e-5;
    const auto psi0 = two_packet_state(gaussian_packet(grid, 0.0, model.ground_width()),
                                       units::well_spacing, 0.0);
    const double period = 2.0 * std::numbers::pi / model.delta;
    const auto series =
        track_displacement(psi0, schedule, units::well_spacing, 1.2 * period, period / 64.0, prop);
    double worst_mod = 0.0;
    for (const auto& v : series.values) worst_mod = std::max(worst_mod, std::abs(std::abs(v) - 0.5));
    const double freq = zero_crossing_frequency(series);
    const bool pass = worst_mod < 0.005 && std::abs(freq - model.delta) / model.delta < 0.01;
    check("displacement_rotation", pass,
          "freq " + sci(freq) + ", modulus deviation " + sci(worst_mod));
  }

  return results;
}

std::string format_validation_table(const std::vector<CheckResult>& results) {
  std::ostringstream os;
  for (const auto& r : results) {
    os << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
    if (!r.detail.empty()) os << "  (" << r.detail << ")";
    os << '\n';
  }
  return os.str();
}

}  // namespace dwell
