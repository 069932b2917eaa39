#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace ll {

struct Atom {
  double v;
  double rate;
};

// Jump intensity measure nu. Four kinds: the zero measure, the symmetric
// alpha-stable density |v|^{-1-alpha} dv, a finite atom list, and a general
// density with a declared support radius.
class LevyMeasure {
 public:
  enum class Kind { Zero, SymmetricStable, CompoundPoisson, Density };

  static LevyMeasure zero();
  static LevyMeasure symmetric_stable(double alpha);
  static LevyMeasure compound_poisson(std::vector<Atom> atoms);
  static LevyMeasure density(std::function<double(double)> dens, double support_radius,
                             std::string label);

  Kind kind() const { return kind_; }
  double stable_alpha() const { return alpha_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  double density_at(double v) const;
  double support_radius() const { return support_radius_; }
  bool is_zero() const { return kind_ == Kind::Zero; }
  bool symmetric() const;
  std::string describe() const;

  // nu((a,b]) for an interval with 0 outside [a,b].
  double mass(double a, double b) const;
  // nu({|v| > delta})
  double tail_mass(double delta) const;
  // integral of v nu(dv) over delta < |v| <= eps  (compensator band)
  double mean_in_band(double delta, double eps) const;
  // integral of v^2 nu(dv) over delta < |v| <= eps
  double variance_in_band(double delta, double eps) const;
  // variance measure mu_nu((lo,hi) \cap [-cap,cap]); used by Ahlfors probes
  double variance_measure(double lo, double hi, double cap) const;

  nlohmann::ordered_json to_json() const;
  static LevyMeasure from_json(const nlohmann::ordered_json& j);

 private:
  LevyMeasure() = default;
  Kind kind_ = Kind::Zero;
  double alpha_ = 0.0;
  std::vector<Atom> atoms_;
  std::function<double(double)> density_;
  double support_radius_ = 1.0;
  std::string label_;
};

// lambda_eps: variance of the jumps of size <= eps. Adaptive quadrature for
// density kinds (relative error 1e-10), exact summation for atoms. Rejects
// measures whose variance integral diverges at the origin.
double jump_variance(const LevyMeasure& nu, double eps);

struct CutoffResult {
  double eps;
  bool capped_at_one;  // eps = 1 already satisfies the target
};

// Largest cutoff (up to bisection tolerance 1e-9) with jump_variance < target.
CutoffResult tune_cutoff(const LevyMeasure& nu, double lambda_target);

struct AhlforsCertificate {
  double eps_nu = 0.0;
  double alpha_nu = 0.0;
  double c_nu = 0.0;    // fitted minimal constant over the probe set
  double rho_nu = 0.0;
  bool verified = false;
  double worst_ratio = 0.0;
  double worst_x = 0.0;
  double worst_rho = 0.0;
  nlohmann::ordered_json to_json() const;
};

// Probes mu_nu(ball)/rho^alpha on a log-spaced (x, rho) grid. Failure is a
// valid certificate state (verified=false with the offending probe recorded).
AhlforsCertificate ahlfors_check(const LevyMeasure& nu, double eps_nu, double alpha_nu,
                                 double rho_nu, int probe_density = 24);

}  // namespace ll
