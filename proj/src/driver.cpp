#include "ll/driver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "ll/quadrature.hpp"
#include "ll/rng.hpp"

namespace ll {

void DriverParams::validate() const {
  if (!(kappa >= 0.0)) throw std::invalid_argument("DriverParams: kappa must be >= 0");
  if (!(delta_sim > 0.0 && delta_sim <= epsilon && epsilon <= 1.0)) {
    throw std::invalid_argument("DriverParams: need 0 < delta_sim <= epsilon <= 1");
  }
}

nlohmann::ordered_json DriverParams::to_json() const {
  nlohmann::ordered_json j = nu.to_json();
  j["a"] = a;
  j["kappa"] = kappa;
  j["epsilon"] = epsilon;
  j["delta_sim"] = delta_sim;
  j["gaussian_remainder"] = gaussian_remainder;
  j["seed"] = seed;
  return j;
}

DriverParams DriverParams::from_json(const nlohmann::ordered_json& j) {
  DriverParams p;
  p.nu = LevyMeasure::from_json(j);
  p.a = j.value("a", 0.0);
  p.kappa = j.value("kappa", 0.0);
  p.epsilon = j.value("epsilon", 1.0);
  p.delta_sim = j.value("delta_sim", p.epsilon);
  p.gaussian_remainder = j.value("gaussian_remainder", false);
  p.seed = j.value("seed", std::uint64_t{0});
  p.validate();
  return p;
}

std::size_t DriverPath::index_at(double t) const {
  // largest i with times[i] <= t
  auto it = std::upper_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return 0;
  return static_cast<std::size_t>(std::distance(times.begin(), it)) - 1;
}

double DriverPath::value_at(double t) const { return values[index_at(t)]; }

double DriverPath::left_value_at(double t) const {
  std::size_t i = index_at(t);
  if (i > 0 && times[i] == t) return values[i - 1];
  return values[i];
}

namespace {

struct JumpEvent {
  double t;
  double v;
};

// Jump times by exponential spacings at the truncated intensity; sizes by
// inverse CDF of the truncated tail (stable), by rate-proportional atom choice,
// or by numeric tail inversion (density kind).
std::vector<JumpEvent> sample_jumps(const LevyMeasure& nu, double delta, double T,
                                    CounterRng& rng) {
  std::vector<JumpEvent> events;
  switch (nu.kind()) {
    case LevyMeasure::Kind::Zero:
      break;
    case LevyMeasure::Kind::SymmetricStable: {
      double alpha = nu.stable_alpha();
      double intensity = 2.0 * std::pow(delta, -alpha) / alpha;
      double t = 0.0;
      while (true) {
        t += rng.exponential(intensity);
        if (t >= T) break;
        double mag = delta * std::pow(rng.uniform_pos(), -1.0 / alpha);
        double sign = rng.uniform01() < 0.5 ? -1.0 : 1.0;
        events.push_back({t, sign * mag});
      }
      break;
    }
    case LevyMeasure::Kind::CompoundPoisson: {
      std::vector<Atom> live;
      double intensity = 0.0;
      for (const Atom& a : nu.atoms()) {
        if (std::fabs(a.v) > delta) {
          live.push_back(a);
          intensity += a.rate;
        }
      }
      if (live.empty()) break;
      double t = 0.0;
      while (true) {
        t += rng.exponential(intensity);
        if (t >= T) break;
        double u = rng.uniform01() * intensity;
        double acc = 0.0;
        double v = live.back().v;
        for (const Atom& a : live) {
          acc += a.rate;
          if (u < acc) {
            v = a.v;
            break;
          }
        }
        events.push_back({t, v});
      }
      break;
    }
    case LevyMeasure::Kind::Density: {
      double hi = nu.support_radius();
      double mass_pos = nu.mass(delta, hi);
      double mass_neg = nu.mass(-hi, -delta);
      double intensity = mass_pos + mass_neg;
      if (intensity <= 0.0) break;
      double t = 0.0;
      while (true) {
        t += rng.exponential(intensity);
        if (t >= T) break;
        bool positive = rng.uniform01() * intensity < mass_pos;
        double target = rng.uniform01() * (positive ? mass_pos : mass_neg);
        // invert v -> nu((delta, v]) by bisection
        double lo = delta, up = hi;
        for (int it = 0; it < 60; ++it) {
          double mid = 0.5 * (lo + up);
          double m = positive ? nu.mass(delta, mid) : nu.mass(-mid, -delta);
          (m < target ? lo : up) = mid;
        }
        double mag = 0.5 * (lo + up);
        events.push_back({t, positive ? mag : -mag});
      }
      break;
    }
  }
  std::sort(events.begin(), events.end(), [](const JumpEvent& a, const JumpEvent& b) {
    return a.t < b.t;
  });
  return events;
}

}  // namespace

DriverPath sample_driver(const DriverParams& params, double T, double dt, std::uint64_t stream,
                         const SampleOptions& opts) {
  params.validate();
  if (!(T > 0.0) || !(dt > 0.0)) throw std::invalid_argument("sample_driver: T, dt must be > 0");

  CounterRng rng(params.seed, stream);
  std::vector<JumpEvent> events = sample_jumps(params.nu, params.delta_sim, T, rng);

  std::size_t base_points = static_cast<std::size_t>(std::ceil(T / dt)) + 1;
  if (base_points + events.size() > opts.max_grid_points) {
    throw std::runtime_error(
        "sample_driver: grid of " + std::to_string(base_points + events.size()) +
        " points exceeds the cap; raise max_grid_points to at least " +
        std::to_string(base_points + events.size()) + " or coarsen dt / raise delta_sim");
  }

  // merged strictly-increasing grid: base lattice plus every jump time
  std::vector<double> times;
  times.reserve(base_points + events.size());
  std::vector<double> jump_size;  // 0 for plain grid points
  jump_size.reserve(base_points + events.size());
  std::size_t je = 0;
  for (std::size_t i = 0;; ++i) {
    double tb = std::min(static_cast<double>(i) * dt, T);
    while (je < events.size() && events[je].t < tb - 1e-15) {
      if (!times.empty() && events[je].t <= times.back() + 1e-15) {
        // collision: merge the jump into the existing grid point
        jump_size.back() += events[je].v;
      } else {
        times.push_back(events[je].t);
        jump_size.push_back(events[je].v);
      }
      ++je;
    }
    double sz = 0.0;
    while (je < events.size() && std::fabs(events[je].t - tb) <= 1e-15) {
      sz += events[je].v;
      ++je;
    }
    if (!times.empty() && tb <= times.back() + 1e-15) {
      jump_size.back() += sz;
    } else {
      times.push_back(tb);
      jump_size.push_back(sz);
    }
    if (tb >= T) break;
  }

  // compensator for the band (delta_sim, 1]; jumps above 1 ride uncompensated
  double compensator = params.nu.mean_in_band(params.delta_sim, 1.0);
  double drift = params.a - compensator;

  double kappa_eff = params.kappa;
  bool folded = false;
  if (params.gaussian_remainder) {
    double resid = params.nu.variance_in_band(0.0, params.delta_sim);
    if (resid > 0.0) {
      kappa_eff += resid;
      folded = true;
    }
  }
  double sqrt_kappa = std::sqrt(kappa_eff);

  DriverPath path;
  path.times = std::move(times);
  path.values.resize(path.times.size());
  path.values[0] = 0.0;
  path.meta = params;
  path.remainder_folded = folded;

  // Continuous increments are booked at unmarked grid points (accumulating the
  // elapsed time since the previous unmarked point), so that at a marked time
  // the stored increment equals the jump size exactly.
  double last_cont_time = 0.0;
  double running_max = 0.0;
  for (std::size_t i = 1; i < path.times.size(); ++i) {
    double w = path.values[i - 1];
    if (jump_size[i] != 0.0) {
      w += jump_size[i];
      path.jumps.push_back({path.times[i], jump_size[i]});
    } else {
      double elapsed = path.times[i] - last_cont_time;
      w += drift * elapsed;
      if (sqrt_kappa > 0.0) w += sqrt_kappa * std::sqrt(elapsed) * rng.normal();
      last_cont_time = path.times[i];
    }
    path.values[i] = w;
    running_max = std::max(running_max, std::fabs(w));
  }
  path.running_max = running_max;
  return path;
}

void write_driver_csv(const DriverPath& path, const std::string& file) {
  std::ofstream out(file);
  out << "t,W,is_jump,jump_size\n";
  std::size_t j = 0;
  for (std::size_t i = 0; i < path.times.size(); ++i) {
    bool is_jump = false;
    double sz = 0.0;
    while (j < path.jumps.size() && path.jumps[j].t < path.times[i]) ++j;
    if (j < path.jumps.size() && path.jumps[j].t == path.times[i]) {
      is_jump = true;
      sz = path.jumps[j].v;
    }
    out << path.times[i] << ',' << path.values[i] << ',' << (is_jump ? 1 : 0) << ',' << sz << '\n';
  }
}

}  // namespace ll
