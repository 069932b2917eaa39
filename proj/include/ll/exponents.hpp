#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace ll {

// kappa = 8 sits outside both trace regimes; callers must branch explicitly.
class UnsupportedPhase : public std::runtime_error {
 public:
  explicit UnsupportedPhase(const std::string& what) : std::runtime_error(what) {}
};

class GateViolation : public std::runtime_error {
 public:
  explicit GateViolation(const std::string& what) : std::runtime_error(what) {}
};

enum class Variant {
  BackwardMicro,       // |h'|^p Y^q (sin arg Z)^{-2r}, r in (0,1]
  BackwardKappa0Drift, // |h'|^p (sin arg Z)^{-2} e^{-a^2 t}
  ForwardCase1,        // kappa > 8, r in (0,1]
  ForwardCase2,        // kappa in (0,8), r < 0, Ahlfors-regular nu
  ForwardKappa0Drift,  // kappa = 0, |g'|^p (sin arg Z)^2 e^{-a^2 t}
};

std::string variant_name(Variant v);

struct PqrTriple {
  double r, p, q;
};

// Backward choice r(kappa) = (1/4 + 1/kappa) ^ 1 (r(0)=1) with
// p = r(kappa+4-kappa r)/2, q = p - r(kappa+lambda)/2.
PqrTriple backward_params(double kappa, double lambda_eps);
PqrTriple backward_params_at(double kappa, double lambda_eps, double r);

// Forward case 1 (kappa > 8): r = 1/4 - 2/kappa, p = r(4-kappa+kappa r)/2,
// q = p + r(kappa+lambda)/2.
PqrTriple forward_params_case1(double kappa, double lambda_eps);
// Forward case 2 (kappa in (0,8)): r = 1/4 - 2/kappa < 0,
// p = r(8-kappa+2 kappa r)/4, q = p + 4^{1-r} r(r-1) lambda.
PqrTriple forward_params_case2(double kappa, double lambda_eps);
PqrTriple forward_params_case2_at(double kappa, double lambda_eps, double r);

// Holder thresholds (backward flow).
double lambda_hol_max(double kappa);                       // (2-k) v (k-4)^2/(2(k+4))
double theta_hol_max(double kappa, double lambda_eps);     // can be <= 0 out of gate
// Trace thresholds; throws UnsupportedPhase at kappa = 8.
double lambda_tr_max(double kappa);
double theta_tr_max(double kappa, double lambda_eps);      // kappa > 8
double alpha_tr_max(double kappa, double lambda_eps);      // kappa in [0,8)
double vartheta_tr(double alpha, double kappa);            // kappa in [0,8)
double varsigma(double r, double alpha);                   // -2r/(alpha-2r)

// kappa = 0 with drift branch.
double lambda_kappa0_backward_max(double p);               // 7 - 2p
double theta_kappa0_backward(double p);                    // (p-3)/p
double theta_kappa0_forward(double p, double alpha);       // a s_{-1}(a)/(2-p)
double alpha_kappa0_forward(double p);                     // -2p/(p+2)
inline constexpr double kKappa0ForwardP = -7.0 / 4.0;

// Summability exponents.
double beta_exponent_backward(double theta, double p, double q);  // (1-2t)p+(1-t)q
double beta_exponent_forward(double theta, double p, double q);   // (1-t)p+q

// Known sharp comparison curves for the continuous-driver case.
double holder_exponent_inverse_map_sharp(double kappa);
double holder_exponent_capacity_param_sharp(double kappa);

// Printed limit values, pinned as exact constants and cross-checked against
// the closed forms in the test suite.
inline constexpr double kThetaHolLimitKappa0 = 1.0 / 6.0;
inline constexpr double kThetaHolLimitKappaInf = 2.0 / 5.0;
inline constexpr double kThetaTrLimitKappaInf = 2.0 / 3.0;
inline constexpr double kLambdaTrKappa0 = 7.0 / 128.0;
inline constexpr double kAlphaKappa0AtP74 = 14.0;
inline constexpr double kVarthetaKappa0Sup = 8.0 / 15.0;

struct GateResult {
  bool pass = false;
  bool boundary = false;           // some hypothesis holds with equality
  std::string first_violation;     // named inequality, empty when pass
};

// Evaluates every hypothesis inequality of the chosen variant and names the
// first violation. r_or_p carries r for the (p,q,r) variants and p for the
// kappa=0 branches; alpha is required by the Ahlfors-gated variants.
GateResult gate_check(Variant variant, double kappa, double lambda_eps, double r_or_p,
                      std::optional<double> alpha = std::nullopt);

struct ExponentLedger {
  double kappa = 0.0;
  double lambda_eps = 0.0;
  double r_star = 0.0, p = 0.0, q = 0.0;
  double lambda_hol = 0.0, theta_hol = 0.0;
  double lambda_tr = 0.0;
  double theta_tr = 0.0;        // kappa > 8 only, else NaN
  double alpha_tr = 0.0;        // kappa < 8 only, else NaN
  double vartheta = 0.0;        // kappa < 8, at the supplied alpha
  double alpha = 0.0;
  double kappa0_p = 0.0, kappa0_theta = 0.0, kappa0_alpha = 0.0;
  bool hol_gate = false, tr_gate = false;
  nlohmann::ordered_json to_json() const;

  static ExponentLedger build(double kappa, double lambda_eps,
                              std::optional<double> alpha = std::nullopt);
};

// CSV tables of the threshold curves over a kappa grid (one row per sample,
// one block per lambda/alpha fraction), plus the sharp comparison curves.
void write_figure_tables(const std::string& out_dir, int n_samples = 512);

// The printed-constant checklist behind `levy-loewner verify-exponents`.
struct PrintedConstantCheck {
  std::string name;
  double expected;
  double actual;
  bool pass;
};
std::vector<PrintedConstantCheck> printed_constant_checks(double tol = 1e-12);

}  // namespace ll
