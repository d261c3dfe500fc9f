#include "core/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "core/fft.hpp"

namespace dwell {

GridPtr make_grid(int n_points, double x_min, double x_max) {
  if (n_points < 2) throw std::invalid_argument("make_grid: n_points must be >= 2");
  if (!(x_max > x_min)) throw std::invalid_argument("make_grid: x_max must exceed x_min");
  auto grid = std::make_shared<SpatialGrid>();
  grid->n_points = n_points;
  grid->x_min = x_min;
  grid->x_max = x_max;
  grid->dx = (x_max - x_min) / n_points;
  grid->x.resize(n_points);
  grid->p.resize(n_points);
  const double dp = 2.0 * std::numbers::pi / (x_max - x_min);
  for (int j = 0; j < n_points; ++j) {
    grid->x[j] = x_min + j * grid->dx;
    const int k = (j < (n_points + 1) / 2) ? j : j - n_points;
    grid->p[j] = dp * k;
  }
  return grid;
}

ComplexField::ComplexField(GridPtr g, std::vector<Complex> v)
    : grid(std::move(g)), values(std::move(v)) {
  if (static_cast<int>(values.size()) != grid->n_points)
    throw std::invalid_argument("ComplexField: values length must match grid");
}

ComplexField forward_dft(const ComplexField& field) {
  ComplexField out = field;
  fft::transform(out.values, false);
  const double scale = 1.0 / std::sqrt(static_cast<double>(out.size()));
  for (auto& v : out.values) v *= scale;
  return out;
}

ComplexField inverse_dft(const ComplexField& field) {
  ComplexField out = field;
  fft::transform(out.values, true);
  const double scale = 1.0 / std::sqrt(static_cast<double>(out.size()));
  for (auto& v : out.values) v *= scale;
  return out;
}

ComplexField translate(const ComplexField& field, double shift) {
  if (shift == 0.0) return field;
  ComplexField out = field;
  fft::transform(out.values, false);
  const int n = out.size();
  const auto& p = out.grid->p;
  for (int k = 0; k < n; ++k) {
    out.values[k] *= std::polar(1.0, p[k] * shift);
  }
  fft::transform(out.values, true);
  const double scale = 1.0 / n;
  for (auto& v : out.values) v *= scale;
  return out;
}

double norm_squared(const ComplexField& field) {
  double sum = 0.0;
  for (const auto& v : field.values) sum += std::norm(v);
  return sum * field.dx();
}

Complex inner_product(const ComplexField& a, const ComplexField& b) {
  if (!(*a.grid == *b.grid)) throw std::invalid_argument("inner_product: grid mismatch");
  Complex sum = 0.0;
  for (int j = 0; j < a.size(); ++j) sum += std::conj(a.values[j]) * b.values[j];
  return sum * a.dx();
}

void normalize(ComplexField& field) {
  const double n2 = norm_squared(field);
  if (n2 <= 0.0) throw std::invalid_argument("normalize: zero field");
  const double scale = 1.0 / std::sqrt(n2);
  for (auto& v : field.values) v *= scale;
}

double boundary_amplitude(const ComplexField& field) {
  double peak = 0.0;
  for (const auto& v : field.values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  const double edge = std::max(std::abs(field.values.front()), std::abs(field.values.back()));
  return edge / peak;
}

double position_mean(const ComplexField& field) {
  double num = 0.0, den = 0.0;
  for (int j = 0; j < field.size(); ++j) {
    const double w = std::norm(field.values[j]);
    num += w * field.grid->x[j];
    den += w;
  }
  return num / den;
}

double position_variance(const ComplexField& field) {
  const double mean = position_mean(field);
  double num = 0.0, den = 0.0;
  for (int j = 0; j < field.size(); ++j) {
    const double w = std::norm(field.values[j]);
    const double d = field.grid->x[j] - mean;
    num += w * d * d;
    den += w;
  }
  return num / den;
}

ComplexField gaussian_packet(const GridPtr& grid, double center, double width, double p0) {
  if (width <= 0.0) throw std::invalid_argument("gaussian_packet: width must be positive");
  ComplexField field(grid);
  for (int j = 0; j < field.size(); ++j) {
    const double d = grid->x[j] - center;
    field.values[j] = std::polar(std::exp(-d * d / (2.0 * width * width)), p0 * grid->x[j]);
  }
  normalize(field);
  return field;
}

ComplexField two_packet_state(const ComplexField& packet, double separation, double theta) {
  const ComplexField left = translate(packet, separation / 2.0);
  const ComplexField right = translate(packet, -separation / 2.0);
  ComplexField out(packet.grid);
  const Complex phase = std::polar(1.0, theta);
  for (int j = 0; j < out.size(); ++j) {
    out.values[j] = left.values[j] + phase * right.values[j];
  }
  normalize(out);
  return out;
}

}  // namespace dwell
