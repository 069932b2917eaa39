#include "ll/levy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ll/quadrature.hpp"

namespace ll {

LevyMeasure LevyMeasure::zero() {
  LevyMeasure m;
  m.kind_ = Kind::Zero;
  m.label_ = "zero";
  return m;
}

LevyMeasure LevyMeasure::symmetric_stable(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw std::invalid_argument("symmetric_stable: alpha must lie in (0,2)");
  }
  LevyMeasure m;
  m.kind_ = Kind::SymmetricStable;
  m.alpha_ = alpha;
  m.label_ = "symmetric-stable(alpha=" + std::to_string(alpha) + ")";
  return m;
}

LevyMeasure LevyMeasure::compound_poisson(std::vector<Atom> atoms) {
  for (const Atom& a : atoms) {
    if (a.v == 0.0) throw std::invalid_argument("compound_poisson: no atom at the origin");
    if (!(a.rate > 0.0)) throw std::invalid_argument("compound_poisson: rates must be > 0");
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& l, const Atom& r) { return l.v < r.v; });
  LevyMeasure m;
  m.kind_ = Kind::CompoundPoisson;
  m.atoms_ = std::move(atoms);
  m.label_ = "compound-poisson(" + std::to_string(m.atoms_.size()) + " atoms)";
  return m;
}

LevyMeasure LevyMeasure::density(std::function<double(double)> dens, double support_radius,
                                 std::string label) {
  if (!(support_radius > 0.0)) throw std::invalid_argument("density: support radius must be > 0");
  LevyMeasure m;
  m.kind_ = Kind::Density;
  m.density_ = std::move(dens);
  m.support_radius_ = support_radius;
  m.label_ = std::move(label);
  return m;
}

double LevyMeasure::density_at(double v) const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::SymmetricStable:
      return std::pow(std::fabs(v), -1.0 - alpha_);
    case Kind::Density:
      return std::fabs(v) <= support_radius_ ? density_(v) : 0.0;
    case Kind::CompoundPoisson:
      throw std::logic_error("density_at: atom measure has no density");
  }
  return 0.0;
}

bool LevyMeasure::symmetric() const {
  switch (kind_) {
    case Kind::Zero:
    case Kind::SymmetricStable:
      return true;
    case Kind::CompoundPoisson: {
      for (const Atom& a : atoms_) {
        bool matched = false;
        for (const Atom& b : atoms_) {
          if (std::fabs(a.v + b.v) < 1e-15 && std::fabs(a.rate - b.rate) < 1e-15) {
            matched = true;
            break;
          }
        }
        if (!matched) return false;
      }
      return true;
    }
    case Kind::Density:
      return false;  // unknown; treated as asymmetric so compensators are computed
  }
  return false;
}

std::string LevyMeasure::describe() const { return label_; }

double LevyMeasure::mass(double a, double b) const {
  if (a > b) std::swap(a, b);
  if (a < 0.0 && b > 0.0) throw std::invalid_argument("mass: interval must not straddle 0");
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::SymmetricStable: {
      // per side: integral of v^{-1-alpha} = (lo^{-alpha} - hi^{-alpha}) / alpha
      double lo = std::min(std::fabs(a), std::fabs(b));
      double hi = std::max(std::fabs(a), std::fabs(b));
      if (lo == 0.0) throw std::invalid_argument("mass: stable measure is infinite at 0");
      return (std::pow(lo, -alpha_) - std::pow(hi, -alpha_)) / alpha_;
    }
    case Kind::CompoundPoisson: {
      double total = 0.0;
      for (const Atom& at : atoms_) {
        if (at.v > a && at.v <= b) total += at.rate;
      }
      return total;
    }
    case Kind::Density:
      return integrate([this](double v) { return density_at(v); }, a, b, 1e-10);
  }
  return 0.0;
}

double LevyMeasure::tail_mass(double delta) const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::SymmetricStable:
      return 2.0 * std::pow(delta, -alpha_) / alpha_;
    case Kind::CompoundPoisson: {
      double total = 0.0;
      for (const Atom& at : atoms_) {
        if (std::fabs(at.v) > delta) total += at.rate;
      }
      return total;
    }
    case Kind::Density:
      return mass(delta, support_radius_) + mass(-support_radius_, -delta);
  }
  return 0.0;
}

double LevyMeasure::mean_in_band(double delta, double eps) const {
  if (!(delta <= eps)) return 0.0;
  switch (kind_) {
    case Kind::Zero:
    case Kind::SymmetricStable:
      return 0.0;  // odd integrand, symmetric measure
    case Kind::CompoundPoisson: {
      double total = 0.0;
      for (const Atom& at : atoms_) {
        double av = std::fabs(at.v);
        if (av > delta && av <= eps) total += at.rate * at.v;
      }
      return total;
    }
    case Kind::Density: {
      double hi = std::min(eps, support_radius_);
      if (hi <= delta) return 0.0;
      auto f = [this](double v) { return v * density_at(v); };
      return integrate(f, delta, hi, 1e-10) + integrate(f, -hi, -delta, 1e-10);
    }
  }
  return 0.0;
}

double LevyMeasure::variance_in_band(double delta, double eps) const {
  if (!(delta < eps)) return 0.0;
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::SymmetricStable:
    case Kind::Density: {
      double hi = kind_ == Kind::Density ? std::min(eps, support_radius_) : eps;
      if (hi <= delta) return 0.0;
      auto f = [this](double v) { return v * v * density_at(v); };
      return integrate(f, delta, hi, 1e-10) + integrate(f, -hi, -delta, 1e-10);
    }
    case Kind::CompoundPoisson: {
      double total = 0.0;
      for (const Atom& at : atoms_) {
        double av = std::fabs(at.v);
        if (av > delta && av <= eps) total += at.rate * at.v * at.v;
      }
      return total;
    }
  }
  return 0.0;
}

double LevyMeasure::variance_measure(double lo, double hi, double cap) const {
  lo = std::max(lo, -cap);
  hi = std::min(hi, cap);
  if (lo >= hi) return 0.0;
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::CompoundPoisson: {
      double total = 0.0;
      for (const Atom& at : atoms_) {
        if (at.v > lo && at.v < hi) total += at.rate * at.v * at.v;
      }
      return total;
    }
    case Kind::SymmetricStable:
    case Kind::Density: {
      auto f = [this](double v) { return v * v * density_at(v); };
      return integrate_split_origin(f, lo, hi, 1e-10);
    }
  }
  return 0.0;
}

nlohmann::ordered_json LevyMeasure::to_json() const {
  nlohmann::ordered_json j;
  switch (kind_) {
    case Kind::Zero:
      j["kind"] = "zero";
      break;
    case Kind::SymmetricStable:
      j["kind"] = "symmetric-stable";
      j["alpha"] = alpha_;
      break;
    case Kind::CompoundPoisson: {
      j["kind"] = "compound-poisson";
      nlohmann::ordered_json atoms = nlohmann::ordered_json::array();
      for (const Atom& a : atoms_) atoms.push_back({{"v", a.v}, {"rate", a.rate}});
      j["atoms"] = atoms;
      break;
    }
    case Kind::Density:
      throw std::invalid_argument("to_json: density measures are not serializable");
  }
  return j;
}

LevyMeasure LevyMeasure::from_json(const nlohmann::ordered_json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "zero") return zero();
  if (kind == "symmetric-stable") return symmetric_stable(j.at("alpha").get<double>());
  if (kind == "compound-poisson") {
    std::vector<Atom> atoms;
    for (const auto& a : j.at("atoms")) {
      atoms.push_back({a.at("v").get<double>(), a.at("rate").get<double>()});
    }
    return compound_poisson(std::move(atoms));
  }
  throw std::invalid_argument("LevyMeasure::from_json: unknown kind '" + kind + "'");
}

double jump_variance(const LevyMeasure& nu, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("jump_variance: eps must be > 0");
  switch (nu.kind()) {
    case LevyMeasure::Kind::Zero:
      return 0.0;
    case LevyMeasure::Kind::CompoundPoisson: {
      double total = 0.0;
      for (const Atom& a : nu.atoms()) {
        if (std::fabs(a.v) <= eps) total += a.rate * a.v * a.v;
      }
      return total;
    }
    case LevyMeasure::Kind::SymmetricStable:
    case LevyMeasure::Kind::Density: {
      double hi = nu.kind() == LevyMeasure::Kind::Density ? std::min(eps, nu.support_radius()) : eps;
      auto f = [&nu](double v) { return v * v * nu.density_at(v); };
      double value;
      try {
        value = integrate(f, 0.0, hi, 1e-10) + integrate(f, -hi, 0.0, 1e-10);
      } catch (const std::runtime_error& e) {
        throw std::runtime_error(std::string("jump_variance: variance integral of '") +
                                 nu.describe() + "' is not integrable near 0: " + e.what());
      }
      if (!std::isfinite(value)) {
        throw std::runtime_error("jump_variance: divergent variance integral for " + nu.describe());
      }
      return value;
    }
  }
  return 0.0;
}

CutoffResult tune_cutoff(const LevyMeasure& nu, double lambda_target) {
  if (!(lambda_target > 0.0)) throw std::invalid_argument("tune_cutoff: target must be > 0");
  if (jump_variance(nu, 1.0) < lambda_target) return {1.0, true};
  double lo = 0.0, hi = 1.0;  // invariant: variance(lo) < target <= variance(hi)
  while (hi - lo > 1e-9) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (jump_variance(nu, mid) < lambda_target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, false};
}

nlohmann::ordered_json AhlforsCertificate::to_json() const {
  return {{"eps_nu", eps_nu},   {"alpha_nu", alpha_nu},     {"c_nu", c_nu},
          {"rho_nu", rho_nu},   {"verified", verified},     {"worst_ratio", worst_ratio},
          {"worst_x", worst_x}, {"worst_rho", worst_rho}};
}

AhlforsCertificate ahlfors_check(const LevyMeasure& nu, double eps_nu, double alpha_nu,
                                 double rho_nu, int probe_density) {
  if (!(eps_nu > 0.0 && eps_nu < 0.5)) throw std::invalid_argument("ahlfors_check: eps_nu in (0,1/2)");
  if (!(rho_nu > 0.0 && rho_nu < 1.0)) throw std::invalid_argument("ahlfors_check: rho_nu in (0,1)");
  if (!(alpha_nu > 0.0)) throw std::invalid_argument("ahlfors_check: alpha_nu > 0");

  AhlforsCertificate cert;
  cert.eps_nu = eps_nu;
  cert.alpha_nu = alpha_nu;
  cert.rho_nu = rho_nu;

  if (nu.is_zero()) {
    cert.verified = true;
    cert.c_nu = 0.0;
    cert.worst_ratio = 0.0;
    return cert;
  }

  // log-spaced radii below rho_nu; centers spanning [-eps_nu, eps_nu] plus
  // atom positions, where the ratio peaks.
  std::vector<double> radii;
  for (int i = 0; i < probe_density; ++i) {
    radii.push_back(rho_nu * std::pow(2.0, -0.5 * (i + 1)));
  }
  std::vector<double> centers;
  int nx = std::max(probe_density, 8);
  for (int i = 0; i <= nx; ++i) {
    centers.push_back(-eps_nu + 2.0 * eps_nu * static_cast<double>(i) / nx);
  }
  if (nu.kind() == LevyMeasure::Kind::CompoundPoisson) {
    for (const Atom& a : nu.atoms()) {
      if (std::fabs(a.v) <= eps_nu) centers.push_back(a.v);
    }
  }

  double worst = 0.0, wx = 0.0, wr = 0.0;
  for (double x : centers) {
    for (double rho : radii) {
      double ball = nu.variance_measure(x - rho, x + rho, eps_nu);
      double ratio = ball / std::pow(rho, alpha_nu);
      if (ratio > worst) {
        worst = ratio;
        wx = x;
        wr = rho;
      }
    }
  }
  cert.worst_ratio = worst;
  cert.worst_x = wx;
  cert.worst_rho = wr;

  // Fit the minimal constant, then declare the certificate verified iff the
  // ratio stays bounded as rho -> 0: the fit on the coarse half of the radii
  // must dominate the fine half.
  double coarse = 0.0, fine = 0.0;
  std::size_t half = radii.size() / 2;
  for (double x : centers) {
    for (std::size_t i = 0; i < radii.size(); ++i) {
      double ratio = nu.variance_measure(x - radii[i], x + radii[i], eps_nu) /
                     std::pow(radii[i], alpha_nu);
      (i < half ? coarse : fine) = std::max(i < half ? coarse : fine, ratio);
    }
  }
  cert.c_nu = worst;
  cert.verified = std::isfinite(worst) && fine <= coarse * (1.0 + 1e-9);
  return cert;
}

}  // namespace ll
