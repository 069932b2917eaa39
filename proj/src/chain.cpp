#include "ll/chain.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "ll/parallel.hpp"

namespace ll {

Complex upper_sqrt(Complex zeta, double tie_sign) {
  Complex s = std::sqrt(zeta);  // principal branch, Re >= 0
  if (std::imag(s) > 0.0) return s;
  if (std::imag(s) < 0.0) return -s;
  return tie_sign < 0.0 ? -s : s;
}

LoewnerChain::LoewnerChain(const DriverPath& path) {
  segments_.reserve(path.times.size());
  cum_.push_back(0.0);
  for (std::size_t i = 0; i + 1 < path.times.size(); ++i) {
    double dt = path.times[i + 1] - path.times[i];
    if (dt <= 0.0) continue;
    segments_.push_back({dt, path.values[i]});
    cum_.push_back(cum_.back() + dt);
  }
  if (segments_.empty()) throw std::invalid_argument("LoewnerChain: empty driver path");
}

LoewnerChain::LoewnerChain(std::vector<Segment> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) throw std::invalid_argument("LoewnerChain: no segments");
  cum_.push_back(0.0);
  for (const Segment& s : segments_) {
    if (!(s.dt > 0.0)) throw std::invalid_argument("LoewnerChain: durations must be > 0");
    cum_.push_back(cum_.back() + s.dt);
  }
}

LoewnerChain::Prefix LoewnerChain::prefix(double t) const {
  if (t < 0.0 || t > horizon() * (1.0 + 1e-12) + 1e-15) {
    throw std::out_of_range("LoewnerChain: time outside horizon");
  }
  t = std::min(t, horizon());
  auto it = std::upper_bound(cum_.begin(), cum_.end(), t);
  std::size_t full = static_cast<std::size_t>(std::distance(cum_.begin(), it)) - 1;
  if (full >= segments_.size()) return {segments_.size(), 0.0};
  double partial = t - cum_[full];
  if (partial <= 1e-15 * std::max(1.0, t)) partial = 0.0;
  return {full, partial};
}

double LoewnerChain::driver_at(double t) const {
  Prefix p = prefix(t);
  if (p.full >= segments_.size()) return segments_.back().w;
  return segments_[p.full].w;
}

double LoewnerChain::driver_left(double t) const {
  Prefix p = prefix(t);
  if (p.partial_dt > 0.0) return segments_[p.full].w;
  return segments_[p.full > 0 ? p.full - 1 : 0].w;
}

double LoewnerChain::driver_sup(double t) const {
  Prefix p = prefix(t);
  double m = 0.0;
  std::size_t upto = p.full + (p.partial_dt > 0.0 ? 1 : 0);
  for (std::size_t i = 0; i < upto && i < segments_.size(); ++i) {
    m = std::max(m, std::fabs(segments_[i].w));
  }
  return m;
}

ElementaryResult elementary_map(Complex z, double w, double dt) {
  double x = z.real() - w;
  double y = z.imag();
  if (y < 0.0) throw std::invalid_argument("elementary_map: point below the real axis");
  // The exact trajectory hits the driving point only from the vertical ray
  // above it, at local time y^2/4.
  if (x == 0.0 && y * y <= 4.0 * dt) {
    return {Complex{w, 0.0}, true, 0.25 * y * y};
  }
  Complex u{x, y};
  Complex zeta = u * u + 4.0 * dt;
  Complex root = upper_sqrt(zeta, x);
  return {Complex{w, 0.0} + root, false, 0.0};
}

Complex elementary_inverse(Complex u, double w, double dt) {
  Complex d = u - w;
  if (d.imag() < 0.0) throw std::invalid_argument("elementary_inverse: point below the real axis");
  Complex zeta = d * d - 4.0 * dt;
  return Complex{w, 0.0} + upper_sqrt(zeta, d.real());
}

FlowResult evaluate_g(const LoewnerChain& chain, Complex z, double t) {
  LoewnerChain::Prefix p = chain.prefix(t);
  const auto& segs = chain.segments();
  const auto& cum = chain.boundary_times();
  Complex cur = z;
  for (std::size_t i = 0; i < p.full; ++i) {
    ElementaryResult r = elementary_map(cur, segs[i].w, segs[i].dt);
    if (r.swallowed) return {r.z, true, cum[i] + r.tau_local};
    cur = r.z;
  }
  if (p.partial_dt > 0.0) {
    ElementaryResult r = elementary_map(cur, segs[p.full].w, p.partial_dt);
    if (r.swallowed) return {r.z, true, cum[p.full] + r.tau_local};
    cur = r.z;
  }
  return {cur, false, 0.0};
}

FlowResult evaluate_g_prime(const LoewnerChain& chain, Complex z, double t) {
  LoewnerChain::Prefix p = chain.prefix(t);
  const auto& segs = chain.segments();
  const auto& cum = chain.boundary_times();
  Complex cur = z;
  Complex deriv{1.0, 0.0};
  auto step = [&](double w, double dt, std::size_t i) -> bool {
    ElementaryResult r = elementary_map(cur, w, dt);
    if (r.swallowed) return false;
    deriv *= (cur - w) / (r.z - w);
    cur = r.z;
    (void)i;
    return true;
  };
  for (std::size_t i = 0; i < p.full; ++i) {
    if (!step(segs[i].w, segs[i].dt, i)) {
      return {Complex{}, true, cum[i] + 0.25 * std::imag(cur) * std::imag(cur)};
    }
  }
  if (p.partial_dt > 0.0) {
    if (!step(segs[p.full].w, p.partial_dt, p.full)) {
      return {Complex{}, true, cum[p.full] + 0.25 * std::imag(cur) * std::imag(cur)};
    }
  }
  return {deriv, false, 0.0};
}

Complex evaluate_f(const LoewnerChain& chain, Complex u, double t) {
  if (u.imag() < 0.0) throw std::invalid_argument("evaluate_f: point below the real axis");
  LoewnerChain::Prefix p = chain.prefix(t);
  const auto& segs = chain.segments();
  Complex cur = u;
  if (p.partial_dt > 0.0) cur = elementary_inverse(cur, segs[p.full].w, p.partial_dt);
  for (std::size_t i = p.full; i-- > 0;) {
    cur = elementary_inverse(cur, segs[i].w, segs[i].dt);
  }
  return cur;
}

Complex evaluate_f_prime(const LoewnerChain& chain, Complex u, double t) {
  LoewnerChain::Prefix p = chain.prefix(t);
  const auto& segs = chain.segments();
  Complex cur = u;
  Complex deriv{1.0, 0.0};
  auto step = [&](double w, double dt) {
    Complex next = elementary_inverse(cur, w, dt);
    deriv *= (cur - w) / (next - w);
    cur = next;
  };
  if (p.partial_dt > 0.0) step(segs[p.full].w, p.partial_dt);
  for (std::size_t i = p.full; i-- > 0;) step(segs[i].w, segs[i].dt);
  return deriv;
}

TraceSample trace_point(const LoewnerChain& chain, double t, const TraceOptions& opts) {
  double w = chain.driver_at(t);
  TraceSample out;
  out.t = t;
  double y = opts.y0;
  Complex prev = evaluate_f(chain, Complex{w, y}, t);
  for (int k = 1; k <= opts.max_levels; ++k) {
    y *= 0.5;
    Complex next = evaluate_f(chain, Complex{w, y}, t);
    double diff = std::abs(next - prev);
    out.gamma = next;
    out.y_used = y;
    out.est_error = diff;
    if (diff < opts.tol) {
      out.converged = true;
      break;
    }
    prev = next;
  }
  if (out.gamma.imag() < 0.0) out.gamma = Complex{out.gamma.real(), 0.0};
  return out;
}

std::vector<TraceSample> trace_extract(const LoewnerChain& chain, std::vector<double> times,
                                       const TraceOptions& opts, bool parallel) {
  std::sort(times.begin(), times.end());
  std::vector<TraceSample> out(times.size());
  par::for_each_index(times.size(),
                      parallel ? par::default_policy() : par::Policy::Serial,
                      [&](std::size_t i) { out[i] = trace_point(chain, times[i], opts); });
  return out;
}

double hull_diameter_bound(const LoewnerChain& chain, double t) {
  // hull is confined to [min W - 2 sqrt(t), max W + 2 sqrt(t)] x [0, 2 sqrt(t)]
  LoewnerChain::Prefix p = chain.prefix(t);
  double wmin = 0.0, wmax = 0.0;
  std::size_t upto = p.full + (p.partial_dt > 0.0 ? 1 : 0);
  for (std::size_t i = 0; i < upto && i < chain.segments().size(); ++i) {
    wmin = std::min(wmin, chain.segments()[i].w);
    wmax = std::max(wmax, chain.segments()[i].w);
  }
  return (wmax - wmin) + 4.0 * std::sqrt(t) + 1e-12;
}

double hcap_estimate(const LoewnerChain& chain, double t, double probe_radius) {
  if (t == 0.0) return 0.0;
  double diam = hull_diameter_bound(chain, t);
  if (!(probe_radius > 2.0 * diam)) {
    throw std::invalid_argument("hcap_estimate: probe radius too small; use >= " +
                                std::to_string(100.0 * diam));
  }
  // Re[z (g(z) - z)] = a1 + O(1/R^2) after mirror pairing kills the a2 term.
  constexpr int kProbes = 12;
  double sum = 0.0;
  double lo = 1e300, hi = -1e300;
  for (int k = 0; k < kProbes; ++k) {
    double theta = 3.14159265358979323846 * (0.15 + 0.7 * (k + 0.5) / kProbes);
    Complex z = probe_radius * Complex{std::cos(theta), std::sin(theta)};
    Complex zm{-z.real(), z.imag()};
    FlowResult g1 = evaluate_g(chain, z, t);
    FlowResult g2 = evaluate_g(chain, zm, t);
    if (g1.swallowed || g2.swallowed) {
      throw std::invalid_argument("hcap_estimate: probe swallowed; radius too small, use >= " +
                                  std::to_string(100.0 * diam));
    }
    double est = 0.5 * (std::real(z * (g1.value - z)) + std::real(zm * (g2.value - zm)));
    sum += est;
    lo = std::min(lo, est);
    hi = std::max(hi, est);
  }
  double mean = sum / kProbes;
  double spread = hi - lo;
  if (spread > 5e-3 * std::max(std::fabs(mean), 1e-12)) {
    throw std::invalid_argument(
        "hcap_estimate: angular spread " + std::to_string(spread) +
        " too large at this radius; use >= " + std::to_string(100.0 * diam));
  }
  return mean;
}

LoewnerChain shifted_chain(const LoewnerChain& chain, double sigma, double* max_residual,
                           bool* snapped) {
  const auto& cum = chain.boundary_times();
  auto it = std::lower_bound(cum.begin(), cum.end(), sigma - 1e-12);
  std::size_t idx = static_cast<std::size_t>(std::distance(cum.begin(), it));
  if (idx >= cum.size()) idx = cum.size() - 1;
  bool snap = std::fabs(cum[idx] - sigma) > 1e-12;
  if (snapped) *snapped = snap;
  double sig = cum[idx];
  double w_sigma = idx < chain.segments().size() ? chain.segments()[idx].w
                                                 : chain.segments().back().w;
  if (idx == chain.segments().size()) {
    throw std::invalid_argument("shifted_chain: sigma at the horizon leaves no segments");
  }

  std::vector<Segment> rest;
  for (std::size_t i = idx; i < chain.segments().size(); ++i) {
    rest.push_back({chain.segments()[i].dt, chain.segments()[i].w - w_sigma});
  }
  LoewnerChain shifted(std::move(rest));

  if (max_residual) {
    // identity g-ring_t(z) = g_{sigma+t}(f_sigma(z + W(sigma))) - W(sigma)
    double worst = 0.0;
    const Complex probes[10] = {{0.3, 1.1}, {-0.7, 0.9}, {1.5, 2.0},  {-2.1, 1.7}, {0.05, 3.0},
                                {0.9, 0.6}, {-0.2, 2.4}, {2.8, 1.25}, {-1.4, 0.75}, {0.6, 1.9}};
    double t_rest = shifted.horizon();
    for (const Complex& z : probes) {
      for (double frac : {0.25, 1.0}) {
        double t = frac * t_rest;
        FlowResult lhs = evaluate_g(shifted, z, t);
        Complex pulled = evaluate_f(chain, z + w_sigma, sig);
        FlowResult rhs = evaluate_g(chain, pulled, sig + t);
        if (lhs.swallowed || rhs.swallowed) continue;
        worst = std::max(worst, std::abs(lhs.value - (rhs.value - w_sigma)));
      }
    }
    *max_residual = worst;
  }
  return shifted;
}

void write_trace_csv(const std::vector<TraceSample>& trace, const std::string& file) {
  std::ofstream out(file);
  out << "t,re_gamma,im_gamma,converged,est_error\n";
  for (const TraceSample& s : trace) {
    out << s.t << ',' << s.gamma.real() << ',' << s.gamma.imag() << ',' << (s.converged ? 1 : 0)
        << ',' << s.est_error << '\n';
  }
}

}  // namespace ll
