#include "ll/backward.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ll/stats.hpp"

namespace ll {

namespace {

// One exact step of dh/dt = -2/(h + w): with u = h + w, u^2 decreases by 4 dt
// along the continuous branch staying in the upper half-plane.
inline Complex backward_step(Complex u, double dt) {
  return upper_sqrt(u * u - 4.0 * dt, u.real());
}

}  // namespace

BackwardState solve_mble(const DriverPath& driver, Complex z0, double T) {
  if (!(z0.imag() > 0.0)) throw std::invalid_argument("solve_mble: Im z0 must be > 0");
  if (T > driver.horizon() * (1.0 + 1e-12)) {
    throw std::invalid_argument("solve_mble: horizon exceeds the sampled driver");
  }
  BackwardState state;
  state.z0 = z0;
  state.traj.reserve(driver.times.size());
  Complex h = z0;
  Complex hp{1.0, 0.0};
  for (std::size_t i = 0; i + 1 < driver.times.size() && driver.times[i] < T; ++i) {
    double w = driver.values[i];
    double dt = std::min(driver.times[i + 1], T) - driver.times[i];
    state.traj.push_back({driver.times[i], h, hp, w});
    Complex u = h + w;
    Complex u1 = backward_step(u, dt);
    hp *= u / u1;
    h = u1 - w;
    if (dt <= 0.0) break;
  }
  state.traj.push_back({T, h, hp, driver.value_at(T)});
  return state;
}

TimeChange::TimeChange(const BackwardState& state) {
  y0_ = state.z0.imag();
  s_grid_.push_back(0.0);
  for (std::size_t k = 0; k + 1 < state.traj.size(); ++k) {
    Complex u = state.z_of(k);
    Complex u2 = u * u;
    Leg leg;
    leg.t0 = state.traj[k].t;
    leg.dt = state.traj[k + 1].t - state.traj[k].t;
    leg.s0 = s_grid_.back();
    leg.A = u2.real();
    leg.B = u2.imag();
    legs_.push_back(leg);
    // closed-form int_0^dt ds / |u^2 - 4s|
    double ds;
    if (leg.B != 0.0) {
      double b = std::fabs(leg.B);
      ds = 0.25 * (std::asinh(leg.A / b) - std::asinh((leg.A - 4.0 * leg.dt) / b));
    } else {
      // u purely imaginary: |Z(s)|^2 = 4s - A with A < 0
      ds = 0.25 * std::log((4.0 * leg.dt - leg.A) / (-leg.A));
    }
    s_grid_.push_back(leg.s0 + ds);
  }
}

double TimeChange::S(double t) const {
  if (t <= 0.0) return 0.0;
  // find leg containing t
  std::size_t lo = 0, hi = legs_.size();
  while (lo + 1 < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (legs_[mid].t0 <= t) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const Leg& leg = legs_[lo];
  double local = std::min(t - leg.t0, leg.dt);
  if (local <= 0.0) return leg.s0;
  if (leg.B != 0.0) {
    double b = std::fabs(leg.B);
    return leg.s0 + 0.25 * (std::asinh(leg.A / b) - std::asinh((leg.A - 4.0 * local) / b));
  }
  return leg.s0 + 0.25 * std::log((4.0 * local - leg.A) / (-leg.A));
}

double TimeChange::sigma(double s) const {
  if (s <= 0.0) return 0.0;
  if (s >= s_grid_.back()) return legs_.back().t0 + legs_.back().dt;
  std::size_t lo = 0, hi = legs_.size();
  while (lo + 1 < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (s_grid_[mid] <= s) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const Leg& leg = legs_[lo];
  double ds = s - leg.s0;
  double local;
  if (leg.B != 0.0) {
    double b = std::fabs(leg.B);
    local = (leg.A - b * std::sinh(std::asinh(leg.A / b) - 4.0 * ds)) / 4.0;
  } else {
    local = (-leg.A) * (std::exp(4.0 * ds) - 1.0) / 4.0;
  }
  local = std::clamp(local, 0.0, leg.dt);
  return leg.t0 + local;
}

TimeChange time_change(const BackwardState& state) {
  if (state.traj.size() < 2) {
    throw std::invalid_argument("time_change: trajectory too short; refine the driver grid");
  }
  return TimeChange(state);
}

Complex solve_bleh_reversed(const DriverPath& driver, Complex z0, double t) {
  if (!(z0.imag() > 0.0)) throw std::invalid_argument("solve_bleh_reversed: Im z0 > 0");
  // d/ds k = -2 / (k - W(t-s)): exact steps over the reversed segment list.
  std::size_t last = driver.index_at(t);
  Complex k = z0;
  double upper = t;
  for (std::size_t i = last + 1; i-- > 0;) {
    double lower = driver.times[i];
    double dt = upper - lower;
    if (dt > 0.0) {
      double w = driver.values[i];
      Complex u = k - w;
      k = upper_sqrt(u * u - 4.0 * dt, u.real()) + w;
    }
    upper = lower;
    if (i == 0) break;
  }
  return k;
}

Complex solve_bleh_reversed_prime(const DriverPath& driver, Complex z0, double t) {
  std::size_t last = driver.index_at(t);
  Complex k = z0;
  Complex deriv{1.0, 0.0};
  double upper = t;
  for (std::size_t i = last + 1; i-- > 0;) {
    double lower = driver.times[i];
    double dt = upper - lower;
    if (dt > 0.0) {
      double w = driver.values[i];
      Complex u = k - w;
      Complex u1 = upper_sqrt(u * u - 4.0 * dt, u.real());
      deriv *= u / u1;
      k = u1 + w;
    }
    upper = lower;
    if (i == 0) break;
  }
  return deriv;
}

nlohmann::ordered_json BridgeReport::to_json() const {
  nlohmann::ordered_json rows_j = nlohmann::ordered_json::array();
  for (const BridgeMoment& m : rows) {
    rows_j.push_back({{"y", m.y},
                      {"mean_f", m.mean_f},
                      {"se_f", m.se_f},
                      {"mean_h", m.mean_h},
                      {"se_h", m.se_h},
                      {"mean2_f", m.mean2_f},
                      {"mean2_h", m.mean2_h},
                      {"ks_stat", m.ks_stat},
                      {"ks_pvalue", m.ks_pvalue},
                      {"pass", m.pass}});
  }
  return {{"t", t}, {"n_paths", n_paths}, {"rows", rows_j}, {"pass", pass}};
}

BridgeReport distributional_bridge(const DriverParams& params, double t,
                                   const std::vector<double>& y_list, int n_paths, double dt,
                                   par::Policy policy) {
  if (n_paths < 1000) throw std::invalid_argument("distributional_bridge: need >= 1e3 paths");
  BridgeReport report;
  report.t = t;
  report.n_paths = n_paths;

  std::size_t ny = y_list.size();
  std::vector<std::vector<double>> fwd(ny, std::vector<double>(n_paths));
  std::vector<std::vector<double>> bwd(ny, std::vector<double>(n_paths));

  par::for_each_index(static_cast<std::size_t>(n_paths), policy, [&](std::size_t i) {
    // forward chain and backward run use independent streams
    DriverPath pf = sample_driver(params, t, dt, 2 * i);
    LoewnerChain chain(pf);
    double w = chain.driver_at(t);
    for (std::size_t k = 0; k < ny; ++k) {
      fwd[k][i] = std::abs(evaluate_f_prime(chain, Complex{w, y_list[k]}, t));
    }
    DriverPath pb = sample_driver(params, t, dt, 2 * i + 1);
    for (std::size_t k = 0; k < ny; ++k) {
      BackwardState st = solve_mble(pb, Complex{0.0, y_list[k]}, t);
      bwd[k][i] = std::abs(st.traj.back().hprime);
    }
  });

  report.pass = true;
  for (std::size_t k = 0; k < ny; ++k) {
    BridgeMoment row;
    row.y = y_list[k];
    MomentAccumulator af = accumulate(fwd[k]);
    MomentAccumulator ab = accumulate(bwd[k]);
    row.mean_f = af.mean;
    row.se_f = af.standard_error();
    row.mean_h = ab.mean;
    row.se_h = ab.standard_error();
    std::vector<double> f2(fwd[k]), b2(bwd[k]);
    for (double& v : f2) v *= v;
    for (double& v : b2) v *= v;
    MomentAccumulator af2 = accumulate(f2);
    MomentAccumulator ab2 = accumulate(b2);
    row.mean2_f = af2.mean;
    row.se2_f = af2.standard_error();
    row.mean2_h = ab2.mean;
    row.se2_h = ab2.standard_error();
    KsResult ks = ks_two_sample(fwd[k], bwd[k]);
    row.ks_stat = ks.statistic;
    row.ks_pvalue = ks.p_value;
    double pooled1 = std::hypot(row.se_f, row.se_h);
    double pooled2 = std::hypot(af2.standard_error(), ab2.standard_error());
    row.pass = std::fabs(row.mean_f - row.mean_h) <= 3.0 * pooled1 &&
               std::fabs(row.mean2_f - row.mean2_h) <= 3.0 * pooled2;
    report.pass = report.pass && row.pass;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace ll
