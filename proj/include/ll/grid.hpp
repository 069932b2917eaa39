#pragma once

#include <complex>
#include <vector>

namespace ll {

// Lattice of mesh a/8: Re(z) = (a/8) l in [-R, R], Im(z) = (a/8)(k+8) in
// [a, sqrt(1+4T)], k >= 0.
struct GridSpec {
  double a = 0.0;
  double T = 0.0;
  double R = 0.0;
  std::vector<std::complex<double>> points;
};

GridSpec build_grid(double a, double T, double R);

// sum over the grid of Im(z)^{q-2r} |z|^{2r}
double grid_sum(const GridSpec& grid, double q, double r);

// chi_{q,r}(a): the nine-regime envelope the sum is bounded by (up to a
// constant fitted per (q,r,T,R)).
double grid_chi(double q, double r, double a);

}  // namespace ll
