#include "orthosel/thresholding.hpp"

#include <cmath>
#include <stdexcept>

namespace orthosel {

double soft_threshold(double x, double t) {
  const double ax = std::abs(x);
  if (ax <= t) return 0.0;
  return x > 0 ? ax - t : -(ax - t);
}

double hard_threshold(double x, double t) {
  return std::abs(x) > t ? x : 0.0;
}

namespace {

ThresholdEstimate path_estimate(const Sample& sample, const OrderStats& stats,
                                std::size_t k, ThresholdKind kind) {
  const double t = threshold_level(stats, k);  // range-checks k
  ThresholdEstimate est;
  est.k = k;
  est.level = t;
  est.kind = kind;
  est.values.resize(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i)
    est.values[i] = kind == ThresholdKind::Soft
                        ? soft_threshold(sample.values[i], t)
                        : hard_threshold(sample.values[i], t);
  return est;
}

// Golden-section minimization on [lo, hi]; requires unimodality there.
double golden_min(double lo, double hi, double tol, auto&& f) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

// Scalar problem behind penalized_lgamma_fit after sign reduction:
// minimize f(m) = (b - m)^2 + 2*lambda2*m^gamma over m in [0, b], b = |y|.
// m = 0 is always a local minimum (the penalty has infinite slope at 0).
// f'(m)/2 = m - b + lambda2*gamma*m^(gamma-1) is decreasing-then-increasing
// with its minimum at m_tilde, so f is unimodal on [m_tilde, b] and any
// interior minimum lives there.
double lgamma_scalar(double b, double lambda2, double gamma) {
  if (b == 0.0 || lambda2 == 0.0) return b;
  const double m_tilde =
      std::pow(lambda2 * gamma * (1.0 - gamma), 1.0 / (2.0 - gamma));
  if (m_tilde >= b) return 0.0;  // derivative positive on (0,b]: 0 wins
  const auto objective = [&](double m) {
    return (b - m) * (b - m) + 2.0 * lambda2 * std::pow(m, gamma);
  };
  const double m_star = golden_min(m_tilde, b, 1e-10, objective);
  return objective(m_star) < b * b ? m_star : 0.0;
}

}  // namespace

ThresholdEstimate soft_path_estimate(const Sample& sample,
                                     const OrderStats& stats, std::size_t k) {
  return path_estimate(sample, stats, k, ThresholdKind::Soft);
}

ThresholdEstimate hard_path_estimate(const Sample& sample,
                                     const OrderStats& stats, std::size_t k) {
  return path_estimate(sample, stats, k, ThresholdKind::Hard);
}

ThresholdEstimate soft_path_estimate(const Sample& sample, std::size_t k) {
  return soft_path_estimate(sample, abs_order_statistics(sample), k);
}

ThresholdEstimate hard_path_estimate(const Sample& sample, std::size_t k) {
  return hard_path_estimate(sample, abs_order_statistics(sample), k);
}

std::vector<double> penalized_l1_fit(const Sample& sample, double lambda2) {
  if (!(lambda2 >= 0.0))
    throw std::invalid_argument("penalized_l1_fit: lambda2 must be >= 0");
  std::vector<double> fit(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i)
    fit[i] = soft_threshold(sample.values[i], lambda2);
  return fit;
}

std::vector<double> penalized_lgamma_fit(const Sample& sample,
                                         const PenalizedFitSpec& spec) {
  if (spec.loss != PenalizedLoss::Quadratic)
    throw std::invalid_argument("penalized_lgamma_fit: quadratic loss only");
  if (!(spec.gamma > 0.0 && spec.gamma <= 1.0))
    throw std::domain_error("penalized_lgamma_fit: gamma must be in (0,1]");
  if (!(spec.lambda2 >= 0.0))
    throw std::invalid_argument("penalized_lgamma_fit: lambda2 must be >= 0");
  if (spec.gamma == 1.0) return penalized_l1_fit(sample, spec.lambda2);
  std::vector<double> fit(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double y = sample.values[i];
    const double m = lgamma_scalar(std::abs(y), spec.lambda2, spec.gamma);
    fit[i] = y < 0 ? -m : m;
  }
  return fit;
}

std::vector<double> penalized_lad_fit(const Sample& sample, double lambda2) {
  if (!(lambda2 >= 0.0))
    throw std::invalid_argument("penalized_lad_fit: lambda2 must be >= 0");
  const bool keep = 2.0 * lambda2 < 1.0;
  std::vector<double> fit(sample.size(), 0.0);
  if (keep) fit = sample.values;
  return fit;
}

}  // namespace orthosel
