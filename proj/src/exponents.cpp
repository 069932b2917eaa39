#include "ll/exponents.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

namespace ll {

namespace {
// Branch joints at kappa = 4/3 and kappa = 8 cancel catastrophically in
// double; evaluate internally in long double.
using LD = long double;
constexpr double kBoundaryTol = 1e-12;
}  // namespace

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::BackwardMicro: return "backward-micro";
    case Variant::BackwardKappa0Drift: return "backward-kappa0-drift";
    case Variant::ForwardCase1: return "forward-case1";
    case Variant::ForwardCase2: return "forward-case2";
    case Variant::ForwardKappa0Drift: return "forward-kappa0-drift";
  }
  return "?";
}

PqrTriple backward_params_at(double kappa, double lambda_eps, double r) {
  LD k = kappa, l = lambda_eps, rr = r;
  LD p = 0.5L * rr * (k + 4.0L - k * rr);
  LD q = p - 0.5L * rr * (k + l);
  return {r, static_cast<double>(p), static_cast<double>(q)};
}

PqrTriple backward_params(double kappa, double lambda_eps) {
  if (!(kappa >= 0.0)) throw std::invalid_argument("backward_params: kappa >= 0");
  double r = kappa == 0.0 ? 1.0 : std::min(0.25 + 1.0 / kappa, 1.0);
  return backward_params_at(kappa, lambda_eps, r);
}

PqrTriple forward_params_case1(double kappa, double lambda_eps) {
  double r = 0.25 - 2.0 / kappa;
  LD k = kappa, l = lambda_eps, rr = r;
  LD p = 0.5L * rr * (4.0L - k + k * rr);
  LD q = p + 0.5L * rr * (k + l);
  return {r, static_cast<double>(p), static_cast<double>(q)};
}

PqrTriple forward_params_case2_at(double kappa, double lambda_eps, double r) {
  LD k = kappa, l = lambda_eps, rr = r;
  LD p = 0.25L * rr * (8.0L - k + 2.0L * k * rr);
  LD q = p + std::pow(4.0L, 1.0L - rr) * rr * (rr - 1.0L) * l;
  return {r, static_cast<double>(p), static_cast<double>(q)};
}

PqrTriple forward_params_case2(double kappa, double lambda_eps) {
  if (!(kappa > 0.0 && kappa < 8.0)) {
    throw std::invalid_argument("forward_params_case2: kappa in (0,8)");
  }
  return forward_params_case2_at(kappa, lambda_eps, 0.25 - 2.0 / kappa);
}

double lambda_hol_max(double kappa) {
  LD k = kappa;
  LD a = 2.0L - k;
  LD b = (k - 4.0L) * (k - 4.0L) / (2.0L * (k + 4.0L));
  return static_cast<double>(a > b ? a : b);
}

double theta_hol_max(double kappa, double lambda_eps) {
  LD k = kappa, l = lambda_eps;
  if (kappa > 0.0 && kappa <= 4.0 / 3.0) {
    return static_cast<double>(1.0L + 10.0L / (k + l - 12.0L));
  }
  if (kappa == 0.0) {
    return static_cast<double>(1.0L + 10.0L / (l - 12.0L));  // r(0)=1 branch agrees
  }
  LD num = 2.0L * (k - 4.0L) * (k - 4.0L) - 4.0L * (k + 4.0L) * l;
  LD den = (k + 4.0L) * (5.0L * k - 4.0L * l + 36.0L);
  return static_cast<double>(num / den);
}

double lambda_tr_max(double kappa) {
  if (kappa == 8.0) {
    throw UnsupportedPhase("lambda_tr_max: kappa = 8 is outside both trace regimes");
  }
  if (kappa == 0.0) return 7.0 / 128.0;
  if (kappa > 8.0) return 0.5 * (kappa - 8.0);
  LD k = kappa;
  return static_cast<double>(k / std::pow(2.0L, 4.0L / k + 1.5L) * (8.0L - k) / (3.0L * k + 8.0L));
}

double theta_tr_max(double kappa, double lambda_eps) {
  if (!(kappa > 8.0)) throw std::invalid_argument("theta_tr_max: kappa > 8 branch only");
  LD k = kappa, l = lambda_eps;
  return static_cast<double>(2.0L * (k - 8.0L) * (k - 2.0L * (l + 4.0L)) /
                             ((k + 8.0L) * (3.0L * k + 8.0L)));
}

double alpha_tr_max(double kappa, double lambda_eps) {
  if (kappa == 8.0) throw UnsupportedPhase("alpha_tr_max: kappa = 8 unsupported");
  if (!(kappa >= 0.0 && kappa < 8.0)) {
    throw std::invalid_argument("alpha_tr_max: kappa in [0,8) branch only");
  }
  if (kappa == 0.0) return kAlphaKappa0AtP74;
  LD k = kappa, l = lambda_eps;
  LD denom = 2.0L * k * k + std::pow(2.0L, 4.0L / k + 2.5L) * (3.0L * k + 8.0L) * l;
  return static_cast<double>((8.0L - k) * (8.0L - k) / denom *
                             (1.0L - l / static_cast<LD>(lambda_tr_max(kappa))));
}

double varsigma(double r, double alpha) { return -2.0 * r / (alpha - 2.0 * r); }

double vartheta_tr(double alpha, double kappa) {
  if (kappa == 8.0) throw UnsupportedPhase("vartheta_tr: kappa = 8 unsupported");
  if (!(kappa >= 0.0 && kappa < 8.0)) {
    throw std::invalid_argument("vartheta_tr: kappa in [0,8) branch only");
  }
  LD al = alpha, k = kappa;
  if (kappa == 0.0) {
    return static_cast<double>(8.0L * al / (15.0L * (al + 2.0L)));
  }
  LD v = 32.0L * al * (8.0L - k) / ((k + 48.0L + 64.0L / k) * (2.0L * al * k + 8.0L - k));
  return static_cast<double>(v > 1.0L ? 1.0L : v);
}

double lambda_kappa0_backward_max(double p) { return 7.0 - 2.0 * p; }
double theta_kappa0_backward(double p) { return (p - 3.0) / p; }
double theta_kappa0_forward(double p, double alpha) {
  return 2.0 * alpha / ((alpha + 2.0) * (2.0 - p));
}
double alpha_kappa0_forward(double p) { return -2.0 * p / (p + 2.0); }

double beta_exponent_backward(double theta, double p, double q) {
  return (1.0 - 2.0 * theta) * p + (1.0 - theta) * q;
}
double beta_exponent_forward(double theta, double p, double q) {
  return (1.0 - theta) * p + q;
}

double holder_exponent_inverse_map_sharp(double kappa) {
  double s = 4.0 * kappa + 2.0 * std::sqrt(2.0) * std::sqrt(kappa * (kappa + 2.0) * (kappa + 8.0));
  return 1.0 - s / ((4.0 + kappa) * (4.0 + kappa));
}

double holder_exponent_capacity_param_sharp(double kappa) {
  return 1.0 - kappa / (2.0 * kappa + 24.0 - 8.0 * std::sqrt(kappa + 8.0));
}

namespace {

struct Ineq {
  std::string name;
  double value;  // must be <= 0
};

GateResult check_inequalities(const std::vector<Ineq>& ineqs) {
  GateResult res;
  res.pass = true;
  for (const Ineq& q : ineqs) {
    if (q.value > kBoundaryTol) {
      res.pass = false;
      res.first_violation = q.name;
      return res;
    }
    if (std::fabs(q.value) <= kBoundaryTol) res.boundary = true;
  }
  return res;
}

}  // namespace

GateResult gate_check(Variant variant, double kappa, double lambda_eps, double r_or_p,
                      std::optional<double> alpha) {
  switch (variant) {
    case Variant::BackwardMicro: {
      double r = r_or_p;
      return check_inequalities({
          {"r > 0", -r},
          {"r <= 1", r - 1.0},
          {"lambda_eps < lambda_hol_max(kappa)", lambda_eps - lambda_hol_max(kappa)},
      });
    }
    case Variant::BackwardKappa0Drift: {
      double p = r_or_p;
      return check_inequalities({
          {"p > 0", -p},
          {"p < 7/2", p - 3.5},
          {"lambda_eps < 2p", lambda_eps - 2.0 * p},
          {"lambda_eps < 7 - 2p", lambda_eps - (7.0 - 2.0 * p)},
      });
    }
    case Variant::ForwardCase1: {
      double r = r_or_p;
      return check_inequalities({
          {"kappa > 8", 8.0 - kappa},
          {"r > 0", -r},
          {"r <= 1", r - 1.0},
          {"lambda_eps < (kappa-8)/2", lambda_eps - 0.5 * (kappa - 8.0)},
      });
    }
    case Variant::ForwardCase2: {
      if (kappa == 8.0) throw UnsupportedPhase("gate_check: kappa = 8 unsupported");
      double r = r_or_p;
      PqrTriple pq = forward_params_case2_at(kappa, lambda_eps, r);
      double w = std::pow(2.0, 3.0 - 2.0 * r) * r * (r - 1.0) * lambda_eps;
      double ineq1 =
          -2.0 * pq.p - 2.0 * pq.q + r * (kappa * (2.0 * r - 1.0) + 8.0) + w;
      double ineq2 = 2.0 * pq.p - 2.0 * pq.q + r * kappa + w;
      std::vector<Ineq> ineqs = {
          {"kappa < 8", kappa - 8.0},
          {"r < 0", r},
          {"p < 0", pq.p},
          {"drift x^2 coefficient <= 0", ineq1},
          {"drift y^2 coefficient <= 0", ineq2},
          {"lambda_eps < lambda_tr_max(kappa)", lambda_eps - lambda_tr_max(kappa)},
      };
      if (alpha) {
        ineqs.push_back({"alpha < alpha_tr_max(kappa, lambda_eps)",
                         *alpha - alpha_tr_max(kappa, lambda_eps)});
        ineqs.push_back({"alpha > 0", -*alpha});
      }
      return check_inequalities(ineqs);
    }
    case Variant::ForwardKappa0Drift: {
      double p = r_or_p;
      std::vector<Ineq> ineqs = {
          {"p > -2", -2.0 - p},
          {"p < 0", p},
          {"-2p - 7 + 64 lambda_eps <= 0", -2.0 * p - 7.0 + 64.0 * lambda_eps},
          {"2p + 64 lambda_eps <= 0", 2.0 * p + 64.0 * lambda_eps},
      };
      if (alpha) {
        ineqs.push_back({"alpha < alpha(p)", *alpha - alpha_kappa0_forward(p)});
        ineqs.push_back({"alpha > 0", -*alpha});
      }
      return check_inequalities(ineqs);
    }
  }
  return {};
}

nlohmann::ordered_json ExponentLedger::to_json() const {
  return {{"kappa", kappa},       {"lambda_eps", lambda_eps}, {"r_star", r_star},
          {"p", p},               {"q", q},                   {"lambda_hol", lambda_hol},
          {"theta_hol", theta_hol}, {"lambda_tr", lambda_tr}, {"theta_tr", theta_tr},
          {"alpha_tr", alpha_tr}, {"vartheta", vartheta},     {"alpha", alpha},
          {"kappa0_p", kappa0_p}, {"kappa0_theta", kappa0_theta},
          {"kappa0_alpha", kappa0_alpha}, {"hol_gate", hol_gate}, {"tr_gate", tr_gate}};
}

ExponentLedger ExponentLedger::build(double kappa, double lambda_eps,
                                     std::optional<double> alpha) {
  ExponentLedger led;
  led.kappa = kappa;
  led.lambda_eps = lambda_eps;
  PqrTriple bp = backward_params(kappa, lambda_eps);
  led.r_star = bp.r;
  led.p = bp.p;
  led.q = bp.q;
  led.lambda_hol = lambda_hol_max(kappa);
  led.theta_hol = theta_hol_max(kappa, lambda_eps);
  led.hol_gate = kappa != 4.0 && lambda_eps < led.lambda_hol;
  double nan = std::numeric_limits<double>::quiet_NaN();
  if (kappa == 8.0) {
    led.lambda_tr = nan;
    led.theta_tr = nan;
    led.alpha_tr = nan;
    led.vartheta = nan;
    led.tr_gate = false;
  } else {
    led.lambda_tr = lambda_tr_max(kappa);
    led.tr_gate = lambda_eps < led.lambda_tr;
    if (kappa > 8.0) {
      led.theta_tr = theta_tr_max(kappa, lambda_eps);
      led.alpha_tr = nan;
      led.vartheta = nan;
    } else {
      led.theta_tr = nan;
      led.alpha_tr = alpha_tr_max(kappa, lambda_eps);
      led.alpha = alpha.value_or(0.5 * led.alpha_tr);
      led.vartheta = vartheta_tr(led.alpha, kappa);
    }
  }
  led.kappa0_p = kKappa0ForwardP;
  led.kappa0_alpha = alpha_kappa0_forward(kKappa0ForwardP);
  led.kappa0_theta = theta_kappa0_forward(kKappa0ForwardP, led.kappa0_alpha * 0.5);
  return led;
}

std::vector<PrintedConstantCheck> printed_constant_checks(double tol) {
  auto near = [tol](double a, double b) { return std::fabs(a - b) <= tol; };
  std::vector<PrintedConstantCheck> checks;
  auto add = [&](const std::string& name, double expected, double actual) {
    checks.push_back({name, expected, actual, near(expected, actual)});
  };
  // Richardson step kills the 1/kappa term, leaving O(1/kappa^2) ~ 1e-14.
  auto limit_at_infinity = [](double (*fn)(double, double)) {
    double big = 1e8;
    return 2.0 * fn(2.0 * big, 0.0) - fn(big, 0.0);
  };
  add("lambda_tr_max(0) = 7/128", kLambdaTrKappa0, lambda_tr_max(0.0));
  add("alpha_kappa0_forward(-7/4) = 14", kAlphaKappa0AtP74, alpha_kappa0_forward(-7.0 / 4.0));
  // sup over alpha > 0 of theta_kappa0_forward(-7/4, alpha) = 2/(2-p) = 8/15
  add("sup vartheta_kappa0 = 8/15", kVarthetaKappa0Sup, 2.0 / (2.0 - kKappa0ForwardP));
  add("lim theta_hol_max(kappa->0, 0) = 1/6", kThetaHolLimitKappa0, theta_hol_max(0.0, 0.0));
  add("lim theta_hol_max(kappa->inf, 0) = 2/5", kThetaHolLimitKappaInf,
      limit_at_infinity(&theta_hol_max));
  add("lim theta_tr_max(kappa->inf, 0) = 2/3", kThetaTrLimitKappaInf,
      limit_at_infinity(&theta_tr_max));
  add("lambda_hol_max(4) = 0", 0.0, lambda_hol_max(4.0));
  {
    double worst = -1e300;
    for (double l : {0.0, 0.25, 1.0, 4.0}) worst = std::max(worst, theta_hol_max(4.0, l));
    checks.push_back({"theta_hol_max(4, .) <= 0", 0.0, worst, worst <= tol});
  }
  return checks;
}

void write_figure_tables(const std::string& out_dir, int n_samples) {
  auto open = [&](const std::string& name) {
    std::ofstream f(out_dir + "/" + name);
    f.precision(15);
    return f;
  };

  {  // theta_hol_max over kappa for lambda = c * lambda_hol_max
    std::ofstream f = open("theta_hol_curves.csv");
    f << "kappa,lambda_frac,lambda_eps,theta_hol\n";
    for (double c : {0.0, 0.2, 0.4, 0.6, 0.8}) {
      for (int i = 0; i < n_samples; ++i) {
        double k = 16.0 * (i + 1) / n_samples;
        double l = c * lambda_hol_max(k);
        f << k << ',' << c << ',' << l << ',' << theta_hol_max(k, l) << '\n';
      }
    }
  }
  {
    std::ofstream f = open("lambda_hol.csv");
    f << "kappa,lambda_hol\n";
    for (int i = 0; i < n_samples; ++i) {
      double k = 16.0 * (i + 1) / n_samples;
      f << k << ',' << lambda_hol_max(k) << '\n';
    }
  }
  {  // trace thresholds, kappa > 8
    std::ofstream f = open("theta_tr_curves.csv");
    f << "kappa,lambda_frac,lambda_eps,theta_tr\n";
    for (double c : {0.0, 0.2, 0.4, 0.6, 0.8}) {
      for (int i = 0; i < n_samples; ++i) {
        double k = 8.0 + 24.0 * (i + 1) / n_samples;
        double l = c * lambda_tr_max(k);
        f << k << ',' << c << ',' << l << ',' << theta_tr_max(k, l) << '\n';
      }
    }
  }
  {  // alpha_tr and vartheta curves, kappa in (0,8)
    std::ofstream f = open("alpha_tr_curves.csv");
    f << "kappa,lambda_frac,lambda_eps,alpha_tr\n";
    for (double c : {0.0, 0.25, 0.5, 0.75}) {
      for (int i = 0; i + 1 < n_samples; ++i) {
        double k = 8.0 * (i + 1) / n_samples;
        double l = c * lambda_tr_max(k);
        f << k << ',' << c << ',' << l << ',' << alpha_tr_max(k, l) << '\n';
      }
    }
    std::ofstream g = open("vartheta_curves.csv");
    g << "kappa,lambda_frac,alpha_frac,vartheta\n";
    for (double lc : {0.0, 0.25}) {
      for (double c : {0.2, 0.4, 0.6, 0.8}) {
        for (int i = 0; i + 1 < n_samples; ++i) {
          double k = 8.0 * (i + 1) / n_samples;
          double l = lc * lambda_tr_max(k);
          double a = c * alpha_tr_max(k, l);
          g << k << ',' << lc << ',' << c << ',' << vartheta_tr(a, k) << '\n';
        }
      }
    }
  }
  {  // sharp comparison curves
    std::ofstream f = open("sharp_comparison.csv");
    f << "kappa,theta_hol_ours,theta_hol_sharp,half_theta_tr_ours,theta_capacity_sharp\n";
    for (int i = 0; i < n_samples; ++i) {
      double k = 16.0 * (i + 1) / n_samples;
      double half_tr;
      if (k == 8.0) {
        half_tr = 0.0;
      } else if (k > 8.0) {
        half_tr = 0.5 * theta_tr_max(k, 0.0);
      } else {
        // continuous-driver heuristic (8-k)^2 / (k(k+48)+64)
        half_tr = (8.0 - k) * (8.0 - k) / (k * (k + 48.0) + 64.0);
      }
      f << k << ',' << theta_hol_max(k, 0.0) << ',' << holder_exponent_inverse_map_sharp(k) << ','
        << half_tr << ',' << holder_exponent_capacity_param_sharp(k) << '\n';
    }
  }
}

}  // namespace ll
