#include "orthosel/variance.hpp"

#include <algorithm>
#include <cmath>

#include "orthosel/criteria.hpp"
#include "orthosel/csv.hpp"
#include "orthosel/parallel.hpp"

namespace orthosel {

namespace {

struct Window {
  std::size_t lo, hi;
};

Window fractional_window(std::size_t n, double f_lo, double f_hi) {
  if (!(f_lo > 0.0 && f_lo < f_hi && f_hi <= 1.0))
    throw std::invalid_argument("window fractions must satisfy 0 < lo < hi <= 1");
  const auto lo = static_cast<std::size_t>(
      std::ceil(f_lo * static_cast<double>(n)));
  const auto hi = static_cast<std::size_t>(
      std::floor(f_hi * static_cast<double>(n)));
  return Window{lo, hi};
}

}  // namespace

std::string slope_fit_csv_header() {
  return "n,k_lo,k_hi,slope,intercept,alpha,sigma2_hat";
}

std::string slope_fit_csv_row(std::size_t n, const SlopeFit& fit) {
  return std::to_string(n) + "," + std::to_string(fit.k_lo) + "," +
         std::to_string(fit.k_hi) + "," + format_double(fit.slope) + "," +
         format_double(fit.intercept) + "," + format_double(fit.alpha) + "," +
         format_double(fit.sigma2_hat);
}

std::vector<double> rss_curve(const Sample& sample) {
  return soft_rss_curve(abs_order_statistics(sample));
}

SlopeFit fit_slope(std::span<const double> curve, std::size_t k_lo,
                   std::size_t k_hi) {
  if (!(k_lo < k_hi) || k_hi >= curve.size() || k_hi - k_lo + 1 < 3)
    throw std::invalid_argument("fit_slope: window needs >= 3 points in 0..n");

  const std::size_t count = k_hi - k_lo + 1;
  const double mean_k =
      0.5 * (static_cast<double>(k_lo) + static_cast<double>(k_hi));
  double mean_v = 0.0;
  for (std::size_t k = k_lo; k <= k_hi; ++k) mean_v += -curve[k];
  mean_v /= static_cast<double>(count);

  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = k_lo; k <= k_hi; ++k) {
    const double dk = static_cast<double>(k) - mean_k;
    sxy += dk * (-curve[k] - mean_v);
    sxx += dk * dk;
  }
  SlopeFit fit;
  fit.k_lo = k_lo;
  fit.k_hi = k_hi;
  fit.slope = sxy / sxx;
  fit.intercept = mean_v - fit.slope * mean_k;
  return fit;
}

double calibrate_alpha(std::size_t n, std::size_t replicas, double f_lo,
                       double f_hi, const SeedSpec& seed, int threads) {
  if (n < 32) throw std::invalid_argument("calibrate_alpha: n must be >= 32");
  if (replicas < 1)
    throw std::invalid_argument("calibrate_alpha: replicas must be >= 1");
  const Window window = fractional_window(n, f_lo, f_hi);

  std::vector<double> slopes(replicas);
  parallel_for(replicas, threads, [&](std::size_t r) {
    Rng rng(derive_stream(seed, r));
    std::vector<double> noise(n);
    for (auto& v : noise) v = rng.next_gaussian();
    const auto curve = soft_rss_curve(abs_order_statistics(
        Sample{std::move(noise), std::nullopt}));
    slopes[r] = fit_slope(curve, window.lo, window.hi).slope;
  });
  double acc = 0.0;
  for (double s : slopes) acc += s;
  return acc / static_cast<double>(replicas);
}

SlopeFit estimate_sigma2(const Sample& sample, double alpha, double f_lo,
                         double f_hi) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("estimate_sigma2: alpha must be > 0");
  const Window window = fractional_window(sample.size(), f_lo, f_hi);
  const auto curve = rss_curve(sample);
  SlopeFit fit = fit_slope(curve, window.lo, window.hi);
  fit.alpha = alpha;
  fit.sigma2_hat = std::max(fit.slope / alpha, 0.0);
  return fit;
}

SelectionResult data_driven_cp_select(const Sample& sample, double alpha,
                                      double f_lo, double f_hi) {
  const SlopeFit fit = estimate_sigma2(sample, alpha, f_lo, f_hi);
  if (!(fit.sigma2_hat > 0.0))
    throw DegenerateVarianceError(
        "data_driven_cp_select: slope-heuristic variance is 0");
  return select_k(sample, fit.sigma2_hat, PenaltySpec::mallows_cp());
}

}  // namespace orthosel
