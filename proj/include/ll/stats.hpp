#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace ll {

// Streaming (count, mean, M2) accumulator with associative merge, so Monte
// Carlo reductions can happen per-worker and combine in deterministic order.
struct MomentAccumulator {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }

  void merge(const MomentAccumulator& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    double total = static_cast<double>(n + o.n);
    double d = o.mean - mean;
    mean += d * static_cast<double>(o.n) / total;
    m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) / total;
    n += o.n;
  }

  double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
  double stddev() const { return std::sqrt(variance()); }
  double standard_error() const {
    return n > 0 ? stddev() / std::sqrt(static_cast<double>(n)) : 0.0;
  }
};

MomentAccumulator accumulate(const std::vector<double>& xs);

// Wilson score interval for a binomial proportion.
struct WilsonInterval {
  double lower;
  double upper;
};
WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z);

// Two-sample Kolmogorov-Smirnov statistic and asymptotic p-value.
struct KsResult {
  double statistic;
  double p_value;
};
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace ll
