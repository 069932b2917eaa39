#include "ll/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <stdexcept>

namespace ll {

namespace {

double integrate_touching_origin(const std::function<double(double)>& f, double a, double b,
                                 double rel_tol) {
  // tanh_sinh tolerates integrable endpoint singularities at 0.
  boost::math::quadrature::tanh_sinh<double> integrator(15);
  double error = 0.0, l1 = 0.0;
  double value = integrator.integrate(f, a, b, rel_tol, &error, &l1);
  if (!std::isfinite(value) || (l1 > 0.0 && error > 1e3 * rel_tol * l1 + 1e-300)) {
    throw std::runtime_error(
        "quadrature: integrand not integrable to tolerance on [" + std::to_string(a) + ", " +
        std::to_string(b) + "] (estimated rel. error " + std::to_string(error / (l1 + 1e-300)) +
        ")");
  }
  return value;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
  if (a == b) return 0.0;
  if (a == 0.0 || b == 0.0) return integrate_touching_origin(f, a, b, rel_tol);
  double error = 0.0;
  double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, a, b, 15, rel_tol, &error);
  if (!std::isfinite(value)) {
    throw std::runtime_error("quadrature: divergent integral");
  }
  return value;
}

double integrate_split_origin(const std::function<double(double)>& f, double a, double b,
                              double rel_tol) {
  if (a < 0.0 && b > 0.0) {
    return integrate(f, a, 0.0, rel_tol) + integrate(f, 0.0, b, rel_tol);
  }
  return integrate(f, a, b, rel_tol);
}

}  // namespace ll
