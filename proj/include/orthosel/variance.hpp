#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "orthosel/rng.hpp"
#include "orthosel/sample.hpp"
#include "orthosel/selection.hpp"

namespace orthosel {

// Slope heuristic defaults: on the window (0.05, 0.3)*n the per-k slope of
// E[-RSS] for pure noise stays within [1.33, 1.68] sigma2, and its affine
// average is close to 1.5.
inline constexpr double kDefaultAlpha = 1.5;
inline constexpr double kDefaultWindowLo = 0.05;
inline constexpr double kDefaultWindowHi = 0.3;

// Affine fit of -RSS(k) against k over [k_lo, k_hi], and the variance
// estimate sigma2_hat = max(slope/alpha, 0) derived from it. fit_slope fills
// slope/intercept/window only; estimate_sigma2 populates the rest.
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t k_lo = 0;
  std::size_t k_hi = 0;
  double alpha = 0.0;
  double sigma2_hat = 0.0;
};

std::string slope_fit_csv_header();
std::string slope_fit_csv_row(std::size_t n, const SlopeFit& fit);

// Signals a sample too sparse or short for the slope heuristic
// (sigma2_hat clamped to 0, nothing to plug into the Cp criterion).
struct DegenerateVarianceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// RSS of the soft path at every k in 0..n (suffix-sum form, O(n log n)).
std::vector<double> rss_curve(const Sample& sample);

// Ordinary least squares of -curve[k] on k over k in [k_lo, k_hi] inclusive;
// needs at least 3 points inside 0..n.
SlopeFit fit_slope(std::span<const double> curve, std::size_t k_lo,
                   std::size_t k_hi);

// Monte Carlo estimate of alpha(n): mean fitted slope of -RSS(k) on pure
// standard normal noise over the fractional window [ceil(f_lo*n),
// floor(f_hi*n)].
double calibrate_alpha(std::size_t n, std::size_t replicas, double f_lo,
                       double f_hi, const SeedSpec& seed, int threads = 0);

// Slope fit on the sample's own -RSS curve with sigma2_hat = max(slope/alpha,
// 0). Reads only the data, alpha and the window, never a true sigma2.
SlopeFit estimate_sigma2(const Sample& sample, double alpha, double f_lo,
                         double f_hi);

// Mallows-Cp selection with the slope-heuristic variance plugged in.
// Throws DegenerateVarianceError when sigma2_hat == 0.
SelectionResult data_driven_cp_select(const Sample& sample, double alpha,
                                      double f_lo, double f_hi);

}  // namespace orthosel
