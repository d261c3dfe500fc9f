#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "core/units.hpp"

namespace dwell {

using Complex = std::complex<double>;

// Uniform periodic 1D grid with its DFT-conjugate momentum grid.
// x_j = x_min + j dx, j = 0..n-1; x_max identifies with x_min.
// p_k = 2 pi k~ / (x_max - x_min) with k~ in FFT bin order
// (0, 1, ..., n/2-1, -n/2, ..., -1), hbar = 1.
struct SpatialGrid {
  int n_points;
  double x_min;
  double x_max;
  double dx;
  std::vector<double> x;
  std::vector<double> p;

  double length() const { return x_max - x_min; }
  double momentum_spacing() const { return 2.0 * std::numbers::pi / length(); }
  double max_momentum() const { return std::numbers::pi / dx; }

  friend bool operator==(const SpatialGrid& a, const SpatialGrid& b) {
    return a.n_points == b.n_points && a.x_min == b.x_min && a.x_max == b.x_max;
  }
};

using GridPtr = std::shared_ptr<const SpatialGrid>;

GridPtr make_grid(int n_points, double x_min, double x_max);

// One complex amplitude per grid point. Represents a motional wavefunction
// (norm convention sum |psi_j|^2 dx = 1) or a sampled potential.
struct ComplexField {
  GridPtr grid;
  std::vector<Complex> values;

  ComplexField() = default;
  explicit ComplexField(GridPtr g) : grid(std::move(g)), values(grid->n_points) {}
  ComplexField(GridPtr g, std::vector<Complex> v);

  int size() const { return grid->n_points; }
  double dx() const { return grid->dx; }
};

// Unitary symmetric DFT pair (1/sqrt(N) both directions); Parseval holds
// without extra bookkeeping.
ComplexField forward_dft(const ComplexField& field);
ComplexField inverse_dft(const ComplexField& field);

// Exact spectral translation: returns psi(x + shift). The shift may be any
// real length; it is applied as the phase ramp exp(i p shift) in momentum
// space, which is exact for band-limited fields and unitary for all fields.
ComplexField translate(const ComplexField& field, double shift);

double norm_squared(const ComplexField& field);
Complex inner_product(const ComplexField& a, const ComplexField& b);
void normalize(ComplexField& field);

// max |psi| at the two boundary cells divided by max |psi| overall; the
// periodic-domain validity check used by the propagator.
double boundary_amplitude(const ComplexField& field);

double position_mean(const ComplexField& field);
double position_variance(const ComplexField& field);

// Normalized Gaussian packet with <x^2> - <x>^2 = width^2/2 (ground state of
// a trap with l0 = width) and carrier momentum p0.
ComplexField gaussian_packet(const GridPtr& grid, double center, double width, double p0 = 0.0);

// Equal two-packet superposition [phi(x + sep/2) + e^{i theta} phi(x - sep/2)]/sqrt(2)
// built by exact translation of a packet centered at 0, then normalized.
ComplexField two_packet_state(const ComplexField& packet, double separation, double theta);

}  // namespace dwell
