#pragma once

#include <complex>
#include <vector>

#include "json.hpp"
#include "ll/chain.hpp"
#include "ll/driver.hpp"
#include "ll/parallel.hpp"

namespace ll {

struct BackwardSample {
  double t;
  Complex h;       // h_t(z0)
  Complex hprime;  // h_t'(z0)
  double w;        // driver value on [t, next)
};

// Pathwise solution of dh/dt = -2/(h + W(t)) by exact per-segment maps.
// Global in time; Im h is nondecreasing and |h'| <= exp(2t / Im(z0)^2).
struct BackwardState {
  Complex z0{};
  std::vector<BackwardSample> traj;  // one sample per driver grid time

  Complex z_of(std::size_t k) const { return traj[k].h + traj[k].w; }  // Z(t_k)
  double horizon() const { return traj.back().t; }
};

BackwardState solve_mble(const DriverPath& driver, Complex z0, double T);

// Deterministic time change S(t) = int_0^t du/|Z(u-)|^2 with inverse sigma.
// S is accumulated per segment in closed form; the identity
// Y(sigma(s)) = y0 e^{2s} is what the tests verify against it.
class TimeChange {
 public:
  TimeChange(const BackwardState& state);
  double S(double t) const;
  double sigma(double s) const;
  double horizon_s() const { return s_grid_.back(); }
  double y0() const { return y0_; }

 private:
  struct Leg {
    double t0, dt;     // segment start and duration
    double s0;         // S at segment start
    double A, B;       // Z(t0)^2 = A + iB
  };
  std::vector<Leg> legs_;
  std::vector<double> s_grid_;
  double y0_ = 0.0;
};

TimeChange time_change(const BackwardState& state);

// Reversed-driver backward equation d/ds k_s = -2/(k_s - W(t-s)); its time-t
// value coincides pathwise with f_t.
Complex solve_bleh_reversed(const DriverPath& driver, Complex z0, double t);
Complex solve_bleh_reversed_prime(const DriverPath& driver, Complex z0, double t);

struct BridgeMoment {
  double y = 0.0;
  double mean_f = 0.0, se_f = 0.0;
  double mean_h = 0.0, se_h = 0.0;
  double mean2_f = 0.0, se2_f = 0.0;
  double mean2_h = 0.0, se2_h = 0.0;
  double ks_stat = 0.0, ks_pvalue = 0.0;
  bool pass = false;
};

struct BridgeReport {
  double t = 0.0;
  int n_paths = 0;
  std::vector<BridgeMoment> rows;
  bool pass = false;
  nlohmann::ordered_json to_json() const;
};

// Samples |f~_t'(iy)| from forward chains and |h_t'(iy)| from backward runs on
// independent drivers; first and second moments must agree within 3 pooled
// standard errors. KS statistic and p-value are reported alongside.
BridgeReport distributional_bridge(const DriverParams& params, double t,
                                   const std::vector<double>& y_list, int n_paths,
                                   double dt, par::Policy policy = par::Policy::OpenMP);

}  // namespace ll
