#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "ll/levy.hpp"

namespace ll {

struct DriverParams {
  double a = 0.0;       // linear drift
  double kappa = 0.0;   // diffusivity, >= 0
  LevyMeasure nu = LevyMeasure::zero();
  double epsilon = 1.0;    // small-jump cutoff used by the analysis
  double delta_sim = 1.0;  // simulation truncation, 0 < delta_sim <= epsilon <= 1
  bool gaussian_remainder = false;  // fold sub-delta_sim variance into the diffusion
  std::uint64_t seed = 0;

  void validate() const;  // throws std::invalid_argument on bad ranges
  nlohmann::ordered_json to_json() const;
  static DriverParams from_json(const nlohmann::ordered_json& j);
};

struct JumpMark {
  double t;
  double v;
};

// Piecewise-constant cadlag sample of W: values[i] holds on [times[i], times[i+1]).
// Jump marks coincide with grid times, and at a marked time the stored
// increment equals exactly the jump size (continuous increments are booked at
// unmarked grid points only).
struct DriverPath {
  std::vector<double> times;
  std::vector<double> values;
  std::vector<JumpMark> jumps;
  double running_max = 0.0;  // sup_t |W(t)| over the sampled horizon
  DriverParams meta;
  bool remainder_folded = false;

  double horizon() const { return times.back(); }
  std::size_t index_at(double t) const;  // cadlag segment index
  double value_at(double t) const;
  double left_value_at(double t) const;
};

struct SampleOptions {
  std::size_t max_grid_points = std::size_t(1) << 24;
};

// Levy-Ito sampler: drift + sqrt(kappa) * Brownian increments + jumps of size
// > delta_sim as Poisson events (compensated on (delta_sim, 1]), every jump
// landing on a grid point. Throws with the required cap if the grid would
// exceed max_grid_points.
DriverPath sample_driver(const DriverParams& params, double T, double dt,
                         std::uint64_t stream = 0, const SampleOptions& opts = {});

void write_driver_csv(const DriverPath& path, const std::string& file);

}  // namespace ll
