#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "ll/driver.hpp"

namespace ll {

using Complex = std::complex<double>;

// Square root branch mapping into the closed upper half-plane. Ties on the
// real axis are broken toward tie_sign.
Complex upper_sqrt(Complex zeta, double tie_sign = 1.0);

struct Segment {
  double dt;  // duration > 0
  double w;   // driver value on the segment
};

// Ordered composition of exact vertical-slit maps over piecewise-constant
// driver segments. g_t = g^(k) o ... o g^(1); half-plane capacity is 2t by
// construction. Immutable after construction; evaluations are pure.
class LoewnerChain {
 public:
  explicit LoewnerChain(const DriverPath& path);
  explicit LoewnerChain(std::vector<Segment> segments);

  const std::vector<Segment>& segments() const { return segments_; }
  double horizon() const { return cum_.back(); }
  double hcap(double t) const { return 2.0 * t; }

  struct Prefix {
    std::size_t full;   // number of complete segments
    double partial_dt;  // remaining duration inside segment `full`
  };
  Prefix prefix(double t) const;
  double driver_at(double t) const;   // cadlag value W(t)
  double driver_left(double t) const;  // W(t-)
  double driver_sup(double t) const;  // sup_{s<=t} |W(s)|
  const std::vector<double>& boundary_times() const { return cum_; }

 private:
  std::vector<Segment> segments_;
  std::vector<double> cum_;  // cumulative times, cum_[0] = 0
};

struct ElementaryResult {
  Complex z;
  bool swallowed = false;
  double tau_local = 0.0;
};

// One exact slit-map step of duration dt with constant driver w:
// z -> w + sqrt((z-w)^2 + 4 dt), branch into the upper half-plane.
ElementaryResult elementary_map(Complex z, double w, double dt);
// Inverse step w-plane -> z-plane: u -> w + sqrt((u-w)^2 - 4 dt).
Complex elementary_inverse(Complex u, double w, double dt);

struct FlowResult {
  Complex value{};
  bool swallowed = false;
  double tau = 0.0;  // blow-up time when swallowed
};

FlowResult evaluate_g(const LoewnerChain& chain, Complex z, double t);
FlowResult evaluate_g_prime(const LoewnerChain& chain, Complex z, double t);
Complex evaluate_f(const LoewnerChain& chain, Complex u, double t);
Complex evaluate_f_prime(const LoewnerChain& chain, Complex u, double t);

struct TraceSample {
  double t = 0.0;
  Complex gamma{};
  double y_used = 0.0;
  bool converged = false;
  double est_error = 0.0;
};

struct TraceOptions {
  double y0 = 1.0;
  double tol = 1e-6;
  int max_levels = 40;
};

// gamma#(t) = lim_{y->0+} f_t(W(t) + iy) along the geometric schedule
// y_k = y0 * 2^-k; stops at tol or the level cap (converged flag records which).
TraceSample trace_point(const LoewnerChain& chain, double t, const TraceOptions& opts = {});
// Batched trace_point over sorted times with a shared prefix lookup; parallel
// over times when requested.
std::vector<TraceSample> trace_extract(const LoewnerChain& chain, std::vector<double> times,
                                       const TraceOptions& opts = {}, bool parallel = true);

// a1 coefficient estimate from Re[z (g_t(z) - z)] averaged over mirror-paired
// probes on |z| = probe_radius. Must return 2t to 0.1% relative when the
// radius dominates the hull diameter; throws with a suggested radius otherwise.
double hcap_estimate(const LoewnerChain& chain, double t, double probe_radius);
double hull_diameter_bound(const LoewnerChain& chain, double t);

// Chain of the mapped-out remainder after time sigma (a segment boundary,
// snapped with a warning flag otherwise), driven by W(sigma + t) - W(sigma).
// max_residual, when given, receives the worst probe residual of the
// composition identity.
LoewnerChain shifted_chain(const LoewnerChain& chain, double sigma,
                           double* max_residual = nullptr, bool* snapped = nullptr);

void write_trace_csv(const std::vector<TraceSample>& trace, const std::string& file);

}  // namespace ll
