#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "json.hpp"
#include "ll/backward.hpp"
#include "ll/chain.hpp"
#include "ll/driver.hpp"
#include "ll/exponents.hpp"
#include "ll/levy.hpp"
#include "ll/parallel.hpp"

namespace ll {

struct BackwardObservableParams {
  double p = 0.0, q = 0.0, r = 0.0;
  double kappa = 0.0;
  double lambda_eps = 0.0;
  double a = 0.0;  // kappa = 0 drift branch only
};

struct ForwardObservableParams {
  double p = 0.0, q = 0.0, r = 0.0;
  double kappa = 0.0;
  double lambda_eps = 0.0;
  double alpha = 0.0;  // Ahlfors exponent (case 2 / kappa0)
  double a = 0.0;
  Variant variant = Variant::ForwardCase1;
};

// Forward orbit of one point under the chain: Z(t) = g_t(z0) - W(t) and
// log|g_t'(z0)| sampled at every driver grid time (truncated on swallowing).
struct ForwardSample {
  double t;
  Complex z;             // Z(t)
  double log_abs_gprime;
  double w;
};

struct ForwardTrajectory {
  Complex z0{};
  std::vector<ForwardSample> samples;
  bool swallowed = false;
  double tau = 0.0;
};

ForwardTrajectory forward_orbit(const DriverPath& driver, Complex z0, double T);

struct ObservableTrajectory {
  std::vector<double> t;
  std::vector<double> M;
  std::vector<double> drift_integrand;  // evaluated at the left endpoints
  double M0 = 0.0;
  bool truncated = false;  // forward orbit swallowed before the horizon
  double value_at(double time) const;  // cadlag lookup of M
  double drift_integral_to(double time) const;  // left-endpoint rule
};

// Integrals against nu restricted to (delta_sim, eps], matching what the
// sampler realizes. Atoms are summed exactly; densities go through fixed
// Gauss-Legendre panels in log|v| with an adaptive fallback.
class JumpBandIntegral {
 public:
  JumpBandIntegral(const LevyMeasure& nu, double delta, double eps, int nodes_per_side = 24);
  double operator()(const std::function<double(double)>& f) const;
  double band_variance() const { return band_variance_; }
  bool empty() const { return nodes_.empty() && atoms_.empty(); }

 private:
  std::vector<Atom> atoms_;            // atom kinds
  std::vector<std::pair<double, double>> nodes_;  // (v, weight * density)
  double band_variance_ = 0.0;
};

// M(t) = |h'|^p Y^q (sin arg Z)^{-2r} with the Ito-Doblin drift integrand
// per sample point; M(0) = y0^{q-2r} |z0|^{2r}.
ObservableTrajectory backward_M(const BackwardState& state, const BackwardObservableParams& params,
                                const JumpBandIntegral& band);
// kappa = 0 with drift: M = |h'|^p (sin arg Z)^{-2} e^{-a^2 t}.
ObservableTrajectory backward_M_kappa0(const BackwardState& state,
                                       const BackwardObservableParams& params,
                                       const JumpBandIntegral& band);

// Forward observables; general (p,q,r) and the kappa=0 sin^2 variant
// M = |g'|^p (sin arg Z)^2 e^{-a^2 t}, M(0) = y0^2/|z0|^2.
ObservableTrajectory forward_M(const ForwardTrajectory& orbit, const ForwardObservableParams& params,
                               const JumpBandIntegral& band);

// F_r(v; x, y) from the case-2 drift analysis: vanishes to second order at 0.
double aux_F_r(double v, double x, double y, double r);

struct DriftBoundComponents {
  double case1 = 0.0;        // |x| <= y : 2^{2-r} r(r-1) lambda / (x^2+y^2)
  double i1 = 0.0, i2 = 0.0;  // A1/A2 pieces (y <= |x|)
  double i3 = 0.0;            // A3 piece with the Ahlfors term y^{alpha s_r(alpha)}
  double total = 0.0;
};

DriftBoundComponents drift_bound_case2(double x, double y, double r, double eps,
                                       double lambda_eps, double c_nu, double alpha);

// Stopping time on the forward time-changed flow: first s with
// |X^(s)| <= Y^(s) = y0 e^{-2s} in [2^{-n-1}, 3*2^{-n-1}], capped at
// log sqrt(y0 2^{n+1}).
struct StoppingResult {
  double s = 0.0;
  bool capped = false;
  bool event = false;       // band+confinement seen before the cap
  bool before_horizon = false;  // S_n <= S(T)
  std::size_t index = 0;    // trajectory index at/just after the stop
};

StoppingResult stopping_time_Sn(const ForwardTrajectory& orbit, double y0, int n);

struct McCheckpoint {
  double label = 0.0;  // time, or the dyadic index n for stopped variants
  double mean = 0.0;
  double se = 0.0;
  double bound = 0.0;
  double compensator = 0.0;  // E[L(S_n)] term, case 2 variants only
  bool pass = false;
};

struct McReport {
  std::string variant;
  double M0 = 0.0;
  int n_paths = 0;
  std::vector<McCheckpoint> checkpoints;
  bool pass = false;
  nlohmann::ordered_json to_json() const;
};

struct McConfig {
  int n_paths = 10000;
  double T = 1.0;
  double dt = 1e-3;
  Complex z0{0.0, 1.0};
  std::vector<double> t_checkpoints;  // E[M(t)] variants
  std::vector<int> n_checkpoints;     // stopped variants
  double c_nu = 0.0;                  // Ahlfors constant for the compensator
  par::Policy policy = par::Policy::OpenMP;
};

// E[M(t)] <= M(0) (+ compensator for the Ahlfors-gated variants) within
// 3 standard errors at every checkpoint. Refuses with the violated inequality
// named when the variant's parameter gate fails.
McReport mc_supermartingale_test(Variant variant, const DriverParams& driver,
                                 const McConfig& cfg);

// Sample mean of M(t) - M(0) - int_0^t drift at the checkpoints; zero within
// 3 SE validates the Ito-Doblin drift identities pathwise.
McReport mc_sde_residual_test(Variant variant, const DriverParams& driver, const McConfig& cfg);

struct TailCell {
  double y0 = 0.0, zeta = 0.0;
  double empirical = 0.0;
  double wilson_upper = 0.0;
  double envelope = 0.0;
  bool pass = false;
};

struct TailReport {
  double c0 = 0.0;  // fitted on the calibration set, frozen for validation
  char regime = 'p';  // p: power, l: log, y: y-power
  std::vector<TailCell> calibration;
  std::vector<TailCell> validation;
  bool pass = false;
  nlohmann::ordered_json to_json() const;
};

struct TailConfig {
  double r = 0.5;
  double T = 1.0;
  double dt = 1e-3;
  double x0 = 0.0;
  std::vector<double> calib_y0, calib_zeta;
  std::vector<double> valid_y0, valid_zeta;
  int n_paths = 10000;
  par::Policy policy = par::Policy::OpenMP;
};

// Empirical P[|h_t'| >= zeta] against the chi_r envelope; c0 is fitted once on
// the calibration cells and held fixed on validation (Wilson 99% upper bounds).
TailReport tail_bound_check(const DriverParams& driver, const TailConfig& cfg);

struct EnEstimate {
  int n = 0;
  Complex z0{};
  double p_hat = 0.0;
  double wilson_upper = 0.0;
  std::size_t hits = 0;
};

struct EnReport {
  double theta = 0.0;
  std::vector<EnEstimate> estimates;
  std::vector<double> grid_totals;  // sum over the z0 grid per n
  nlohmann::ordered_json to_json() const;
};

// P[E_n^theta(z0)]: the orbit enters the disc |Z - i 2^-n| <= 2^{-n-1} with
// |g'| <= (80/27) 2^{-n(1-theta)} at the same sample time.
EnReport event_probability_En(const DriverParams& driver, double theta,
                              const std::vector<int>& ns, const std::vector<Complex>& z0_grid,
                              int n_paths, double T, double dt,
                              par::Policy policy = par::Policy::OpenMP);

}  // namespace ll
