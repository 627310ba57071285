#include "affecta/binomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "affecta/errors.hpp"

namespace affecta {

namespace {

void check_domain(int k, int n, double p) {
  if (n < 0 || k < 0 || k > n) throw ArgumentError("binomial: require 0 <= k <= n");
  if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("binomial: p must lie in [0,1]");
}

double log_pmf(int i, int n, double log_p, double log_q) {
  const double log_choose = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0);
  return log_choose + i * log_p + (n - i) * log_q;
}

// Σ_{i=lo..hi} pmf(i), 0 <= lo, hi <= n, p strictly inside (0,1).
double sum_pmf(int lo, int hi, int n, double p) {
  if (lo > hi) return 0.0;
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  double peak = -std::numeric_limits<double>::infinity();
  for (int i = lo; i <= hi; ++i) peak = std::max(peak, log_pmf(i, n, log_p, log_q));
  double acc = 0.0;
  for (int i = lo; i <= hi; ++i) acc += std::exp(log_pmf(i, n, log_p, log_q) - peak);
  return std::min(1.0, std::exp(peak + std::log(acc)));
}

}  // namespace

double binomial_tail(int k, int n, double p) {
  check_domain(k, n, p);
  if (k == 0) return 1.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  return sum_pmf(k, n, n, p);
}

double binomial_tail_strictly_less(int k, int n, double p) {
  check_domain(k, n, p);
  if (k == 0) return 0.0;
  if (p == 0.0) return 1.0;
  if (p == 1.0) return 0.0;
  return sum_pmf(0, k - 1, n, p);
}

double binomial_tail_normal_approx(int k, int n, double p) {
  check_domain(k, n, p);
  const double mean = n * p;
  const double sd = std::sqrt(n * p * (1.0 - p));
  if (sd == 0.0) return k - 0.5 <= mean ? 1.0 : 0.0;
  const double z = (k - 0.5 - mean) / sd;
  return 0.5 * std::erfc(z / std::sqrt(2.0));
}

}  // namespace affecta
