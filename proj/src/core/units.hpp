#pragma once

#include <cmath>
#include <numbers>

namespace dwell::units {

// Natural lattice units: hbar = 1, recoil energy E_r = 1, well spacing L = 1.
// The short lattice has wavenumber k = pi/L, and E_r = hbar^2 k^2 / (2m) = 1
// fixes the particle mass at m = pi^2/2. The time unit is t0 = hbar/E_r.
inline constexpr double hbar = 1.0;
inline constexpr double recoil_energy = 1.0;
inline constexpr double well_spacing = 1.0;
inline constexpr double lattice_k = std::numbers::pi / well_spacing;
inline constexpr double mass = lattice_k * lattice_k / 2.0;

// Trap frequency of a single site of the short lattice of depth v2 (in E_r):
// omega = 2 sqrt(v2 E_r) / hbar.
inline double trap_frequency(double v2) { return 2.0 * std::sqrt(v2 * recoil_energy) / hbar; }

// Ground-state packet size l0 = sqrt(hbar / (m omega)).
inline double ground_width(double omega) { return std::sqrt(hbar / (mass * omega)); }

// SI-side constants used only to convert inputs quoted in lab units
// (trap frequencies in Hz, packet sizes in nm) to natural units and back.
struct SiConstants {
  double hbar_si = 1.054571817e-34;  // J s
  double atom_mass_kg = 1.45e-25;    // 87Rb
  double lambda_m = 800e-9;          // lattice laser wavelength

  double well_spacing_m() const { return lambda_m / 2.0; }
  double wavenumber_per_m() const { return 2.0 * std::numbers::pi / lambda_m; }
  double recoil_energy_joule() const {
    const double hk = hbar_si * wavenumber_per_m();
    return hk * hk / (2.0 * atom_mass_kg);
  }
  // Natural time unit t0 = hbar/E_r in seconds.
  double time_unit_s() const { return hbar_si / recoil_energy_joule(); }
  // Convert an angular frequency in rad/s to natural units (E_r/hbar).
  double angular_frequency_natural(double rad_per_s) const { return rad_per_s * time_unit_s(); }
  double frequency_hz_to_natural(double hz) const {
    return angular_frequency_natural(2.0 * std::numbers::pi * hz);
  }
  // Convert a natural angular frequency back to an ordinary frequency in Hz.
  double natural_to_frequency_hz(double omega_nat) const {
    return omega_nat / time_unit_s() / (2.0 * std::numbers::pi);
  }
  double length_natural_to_m(double x) const { return x * well_spacing_m(); }
};

}  // namespace dwell::units
