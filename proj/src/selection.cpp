#include "orthosel/selection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace orthosel {

namespace {

std::size_t argmin_prefix(std::span<const double> values, std::size_t count) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < count; ++k)
    if (values[k] < values[best]) best = k;
  return best;
}

}  // namespace

SelectionResult select_k(const Sample& sample, double sigma2,
                         const PenaltySpec& spec, std::size_t k_max) {
  const auto stats = abs_order_statistics(sample);
  const std::size_t n = sample.size();
  const std::size_t hi = std::min(k_max, n);

  SelectionResult result;
  result.curve = criterion_curve(sample, stats, sigma2, spec);
  result.k_hat = argmin_prefix(result.curve.values, hi + 1);
  result.estimate = spec.family == PenaltyFamily::MallowsCp
                        ? soft_path_estimate(sample, stats, result.k_hat)
                        : hard_path_estimate(sample, stats, result.k_hat);
  return result;
}

SelectionResult complexity_select(const Sample& sample, const PenaltySpec& spec,
                                  double sigma2) {
  const auto stats = abs_order_statistics(sample);
  const std::size_t n = sample.size();

  const std::vector<double> rss_soft = soft_rss_curve(stats);
  // prefix[k] = sum of the k largest |y|, so ||mu_hat_k||_1 = prefix[k] - k*t_k
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t r = 0; r < n; ++r)
    prefix[r + 1] = prefix[r] + stats.abs_desc[r];

  CriterionCurve curve;
  curve.kind = CurveKind::SoftCp;
  curve.sigma2_used = sigma2;
  curve.values.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = threshold_level(stats, k);
    const double l1 = prefix[k] - static_cast<double>(k) * t;
    curve.values[k] = rss_soft[k] + 2.0 * t * l1 +
                      deterministic_penalty(spec, k, n, sigma2);
  }

  SelectionResult result;
  result.k_hat = argmin_prefix(curve.values, n + 1);
  result.curve = std::move(curve);
  result.estimate = soft_path_estimate(sample, stats, result.k_hat);
  return result;
}

std::vector<double> path_risk_curve(const Sample& sample,
                                    std::span<const double> mu_true,
                                    ThresholdKind kind) {
  const std::size_t n = sample.size();
  if (mu_true.size() != n)
    throw std::invalid_argument("path_risk_curve: mu_true length differs");
  const auto stats = abs_order_statistics(sample);
  std::vector<double> risks(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = threshold_level(stats, k);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double est = kind == ThresholdKind::Soft
                             ? soft_threshold(sample.values[i], t)
                             : hard_threshold(sample.values[i], t);
      const double r = est - mu_true[i];
      acc += r * r;
    }
    risks[k] = acc;
  }
  return risks;
}

std::size_t oracle_k(const Sample& sample, std::span<const double> mu_true,
                     ThresholdKind kind) {
  const auto risks = path_risk_curve(sample, mu_true, kind);
  return argmin_prefix(risks, risks.size());
}

}  // namespace orthosel
