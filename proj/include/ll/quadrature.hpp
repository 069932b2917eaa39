#pragma once

#include <functional>

namespace ll {

// Adaptive quadrature front end used by every nu-integral in the toolkit.
// Intervals touching 0 go through tanh-sinh (integrable endpoint
// singularities); everything else through adaptive Gauss-Kronrod.
// rel_tol is a relative target; throws std::runtime_error when the
// integrand is not integrable to that target.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10);

// Integral over (a,b) with a singularity split at 0 when a < 0 < b.
double integrate_split_origin(const std::function<double(double)>& f, double a, double b,
                              double rel_tol = 1e-10);

}  // namespace ll
