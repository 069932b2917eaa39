#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "json.hpp"
#include "ll/chain.hpp"

namespace ll {

struct CrossingReport {
  Complex center{};
  double r0 = 0.0, R0 = 0.0;
  int count = 0;
  std::optional<double> first_infinite_suspect_time;
  nlohmann::ordered_json to_json() const;
};

// Counts maximal subpaths of the polyline traversing between the circles
// |z - z0| = r0 and |z - z0| = R0, via exact segment-circle intersections with
// a 1e-12-scale collinearity guard.
CrossingReport annulus_crossings(const std::vector<Complex>& polyline, Complex z0, double r0,
                                 double R0);

struct KoebeReport {
  int probes_checked = 0;
  int probes_skipped = 0;
  int sandwich_failures = 0;  // item (c): [48/125, 80/27]
  double ratio_min = 0.0, ratio_max = 0.0;
  bool axis_comparability_pass = true;   // item (a), constant 8
  bool horizontal_growth_pass = true;    // item (b), 16 (1+x^2)^3
  bool pass = false;
  nlohmann::ordered_json to_json() const;
};

KoebeReport koebe_check(const LoewnerChain& chain, double t, const std::vector<Complex>& probes);

struct HolderFit {
  double C = 0.0;      // smallest C with |phi'| <= C (y^{theta-1} v 1) on the samples
  double H = 0.0;      // radial modulus constant C/theta
  double slope = 0.0;  // fitted log|phi'| vs log y slope
  bool pass = false;
};

// samples: (y, sup_x |phi'(x+iy)|) at dyadic heights.
HolderFit holder_modulus(const std::vector<std::pair<double, double>>& samples, double theta);

// sup |gamma(u) - gamma(v)| over |u - v| <= h for dyadic h; diagnostic table.
struct IncrementProfile {
  std::vector<double> h;
  std::vector<double> modulus;
};
IncrementProfile trace_increment_profile(const std::vector<TraceSample>& trace, int n_windows);

}  // namespace ll
