#pragma once

#include <cstddef>
#include <string>

#include "orthosel/rng.hpp"

namespace orthosel {

// Q(t) = P(Z^2 > t) for standard normal Z: the chi-square(1) tail function,
// computed as erfc(sqrt(t/2)). Negative t throws.
double chi2_tail(double t);

// Density of chi-square(1): exp(-t/2)/sqrt(2*pi*t) for t > 0.
double chi2_density(double t);

// Q^{-1}(u) for u in (0,1], by bisection-bracketed Newton; Q^{-1}(1) = 0.
double chi2_tail_inverse(double u);

// The small-u asymptote 2*log(1/u) of Q^{-1}(u), u in (0,1).
double log_tail_approx(double u);

// Compared quantities for the threshold-level law |y|^2_(k+1) vs its plug-in
// and logarithmic approximations, at one (n, k) point.
struct TailCheckReport {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t replicas = 0;
  double mc_mean = 0.0;     // Monte Carlo mean of |y|^2_(k+1) / sigma2
  double plug_in = 0.0;     // Q^{-1}((k+1)/n)
  double log_approx = 0.0;  // 2*log(n/(k+1))
};

std::string tail_report_csv_header();
std::string tail_report_csv_row(const TailCheckReport& report);

// Monte Carlo mean of n*U_(k+1) (ascending uniform order statistics) over
// `replicas` samples of n uniforms. Per-replica derived streams; the
// reduction runs in replica order, so the value is independent of the thread
// count.
double uniform_order_check(std::size_t n, std::size_t k, std::size_t replicas,
                           const SeedSpec& seed, int threads = 0);

// Simulates y = sigma * noise (pure noise, mu = 0) and reports the Monte
// Carlo mean of |y|^2_(k+1)/sigma2 next to the plug-in and log approximations.
TailCheckReport threshold_law_check(std::size_t n, std::size_t k,
                                    std::size_t replicas, double sigma2,
                                    const SeedSpec& seed, int threads = 0);

}  // namespace orthosel
