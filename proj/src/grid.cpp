#include "ll/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace ll {

GridSpec build_grid(double a, double T, double R) {
  if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("build_grid: a in (0,1]");
  if (!(T > 0.0 && R > 0.0)) throw std::invalid_argument("build_grid: T, R > 0");
  GridSpec grid;
  grid.a = a;
  grid.T = T;
  grid.R = R;
  double mesh = a / 8.0;
  double im_top = std::sqrt(1.0 + 4.0 * T);
  long l_max = static_cast<long>(std::floor(R / mesh + 1e-9));
  long k_max = static_cast<long>(std::floor(im_top / mesh - 8.0 + 1e-9));
  if (k_max < 0) return grid;
  grid.points.reserve(static_cast<std::size_t>(2 * l_max + 1) *
                      static_cast<std::size_t>(k_max + 1));
  for (long l = -l_max; l <= l_max; ++l) {
    for (long k = 0; k <= k_max; ++k) {
      grid.points.emplace_back(mesh * static_cast<double>(l),
                               mesh * static_cast<double>(k + 8));
    }
  }
  return grid;
}

double grid_sum(const GridSpec& grid, double q, double r) {
  double sum = 0.0;
  for (const auto& z : grid.points) {
    sum += std::pow(z.imag(), q - 2.0 * r) * std::pow(std::abs(z), 2.0 * r);
  }
  return sum;
}

double grid_chi(double q, double r, double a) {
  double lg = std::max(std::log(1.0 / a), 1.0);
  if (r < -0.5) {
    if (q + 2.0 < 0.0) return std::pow(a, q);
    if (q + 2.0 == 0.0) return std::pow(a, -2.0) * lg;
    return std::pow(a, -2.0);
  }
  if (r == -0.5) {
    if (q + 2.0 < 0.0) return std::pow(a, q) * lg;
    if (q + 2.0 == 0.0) return std::pow(a, -2.0) * lg * lg;
    return std::pow(a, -2.0) * lg;
  }
  double s = q - 2.0 * r + 1.0;
  if (s < 0.0) return std::pow(a, q - 2.0 * r - 1.0);
  if (s == 0.0) return std::pow(a, -2.0) * lg;
  return std::pow(a, -2.0);
}

}  // namespace ll
