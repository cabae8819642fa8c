#include "orthosel/criteria.hpp"

#include <cmath>
#include <stdexcept>

#include "orthosel/thresholding.hpp"

namespace orthosel {

namespace {

void check_k(std::size_t k, std::size_t n, const char* who) {
  if (k > n) throw std::out_of_range(std::string(who) + ": k out of 0..n");
}

void check_sigma2(double sigma2, const char* who) {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
    throw std::invalid_argument(std::string(who) + ": sigma2 must be > 0");
}

void check_table(const PenaltySpec& spec, std::size_t n) {
  if (spec.table.size() != n + 1)
    throw std::invalid_argument("custom penalty table must have n+1 entries");
}

}  // namespace

PenaltySpec PenaltySpec::mallows_cp() {
  return PenaltySpec{PenaltyFamily::MallowsCp, 1.0, 0.0, {}};
}

PenaltySpec PenaltySpec::birge_massart(double C, double Cprime) {
  if (!(C > 0.0)) throw std::invalid_argument("BirgeMassart requires C > 0");
  return PenaltySpec{PenaltyFamily::BirgeMassart, C, Cprime, {}};
}

PenaltySpec PenaltySpec::fdr(double Cprime) {
  return PenaltySpec{PenaltyFamily::Fdr, 1.0, Cprime, {}};
}

PenaltySpec PenaltySpec::random_soft() {
  return PenaltySpec{PenaltyFamily::RandomSoft, 1.0, 0.0, {}};
}

PenaltySpec PenaltySpec::custom_table(std::vector<double> values) {
  for (double v : values)
    if (!std::isfinite(v))
      throw std::invalid_argument("custom penalty table entries must be finite");
  return PenaltySpec{PenaltyFamily::CustomTable, 1.0, 0.0, std::move(values)};
}

double rss(const Sample& sample, std::span<const double> estimate) {
  if (estimate.size() != sample.size())
    throw std::invalid_argument("rss: estimate length differs from sample");
  double acc = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double r = sample.values[i] - estimate[i];
    acc += r * r;
  }
  return acc;
}

double mallows_cp(const Sample& sample, const OrderStats& stats, std::size_t k,
                  double sigma2) {
  check_k(k, sample.size(), "mallows_cp");
  check_sigma2(sigma2, "mallows_cp");
  const auto est = soft_path_estimate(sample, stats, k);
  const double n = static_cast<double>(sample.size());
  return rss(sample, est.values) - n * sigma2 +
         2.0 * static_cast<double>(k) * sigma2;
}

double mallows_cp(const Sample& sample, std::size_t k, double sigma2) {
  return mallows_cp(sample, abs_order_statistics(sample), k, sigma2);
}

double deterministic_penalty(const PenaltySpec& spec, std::size_t k,
                             std::size_t n, double sigma2) {
  check_k(k, n, "deterministic_penalty");
  check_sigma2(sigma2, "deterministic_penalty");
  switch (spec.family) {
    case PenaltyFamily::BirgeMassart:
    case PenaltyFamily::Fdr: {
      if (k == 0) return 0.0;
      const double kk = static_cast<double>(k);
      const double log_term = std::log(static_cast<double>(n) / kk);
      return 2.0 * kk * sigma2 * spec.C * (log_term + spec.Cprime);
    }
    case PenaltyFamily::CustomTable:
      check_table(spec, n);
      return spec.table[k];
    case PenaltyFamily::MallowsCp:
    case PenaltyFamily::RandomSoft:
      throw std::invalid_argument(
          "deterministic_penalty: family has no deterministic pen(k)");
  }
  throw std::invalid_argument("deterministic_penalty: unknown family");
}

double hard_criterion(const Sample& sample, std::size_t k, double sigma2,
                      const PenaltySpec& spec) {
  check_k(k, sample.size(), "hard_criterion");
  check_sigma2(sigma2, "hard_criterion");
  const double pen = deterministic_penalty(spec, k, sample.size(), sigma2);
  const auto est = hard_path_estimate(sample, k);
  const double n = static_cast<double>(sample.size());
  return rss(sample, est.values) - n * sigma2 + pen;
}

double random_soft_penalty(const Sample& sample, std::size_t k, double sigma2) {
  check_k(k, sample.size(), "random_soft_penalty");
  check_sigma2(sigma2, "random_soft_penalty");
  const double t = threshold_level(abs_order_statistics(sample), k);
  const double kk = static_cast<double>(k);
  return kk * t * t + 2.0 * kk * sigma2;
}

double rss_gap(const Sample& sample, std::size_t k) {
  const auto stats = abs_order_statistics(sample);
  const double t = threshold_level(stats, k);  // range-checks k
  double gap = 0.0;
  for (double y : sample.values)
    if (std::abs(y) > t) gap += t * t;
  return gap;
}

std::vector<double> soft_rss_curve(const OrderStats& stats) {
  const std::size_t n = stats.size();
  // suffix[r] = sum_{j >= r} a_j^2
  std::vector<double> suffix(n + 1, 0.0);
  for (std::size_t r = n; r-- > 0;)
    suffix[r] = suffix[r + 1] + stats.abs_desc[r] * stats.abs_desc[r];
  std::vector<double> curve(n + 1);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = stats.abs_desc[k];
    curve[k] = static_cast<double>(k) * t * t + suffix[k];
  }
  curve[n] = 0.0;
  return curve;
}

std::vector<double> hard_rss_curve(const OrderStats& stats) {
  const std::size_t n = stats.size();
  std::vector<double> suffix(n + 1, 0.0);
  for (std::size_t r = n; r-- > 0;)
    suffix[r] = suffix[r + 1] + stats.abs_desc[r] * stats.abs_desc[r];
  // first_run[r]: first rank holding the value at rank r, so ties at the
  // level (killed by the strict indicator) stay inside the residual.
  std::vector<double> curve(n + 1);
  std::size_t run_start = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0 && stats.abs_desc[k] != stats.abs_desc[k - 1]) run_start = k;
    curve[k] = suffix[run_start];
  }
  curve[n] = 0.0;
  return curve;
}

CriterionCurve criterion_curve(const Sample& sample, const OrderStats& stats,
                               double sigma2, const PenaltySpec& spec) {
  check_sigma2(sigma2, "criterion_curve");
  const std::size_t n = sample.size();
  const double ns2 = static_cast<double>(n) * sigma2;
  CriterionCurve curve;
  curve.sigma2_used = sigma2;
  switch (spec.family) {
    case PenaltyFamily::MallowsCp: {
      curve.kind = CurveKind::SoftCp;
      curve.values = soft_rss_curve(stats);
      for (std::size_t k = 0; k <= n; ++k)
        curve.values[k] += -ns2 + 2.0 * static_cast<double>(k) * sigma2;
      return curve;
    }
    case PenaltyFamily::RandomSoft: {
      curve.kind = CurveKind::HardPenalized;
      curve.values = hard_rss_curve(stats);
      for (std::size_t k = 0; k <= n; ++k) {
        const double t = threshold_level(stats, k);
        const double kk = static_cast<double>(k);
        curve.values[k] += -ns2 + kk * t * t + 2.0 * kk * sigma2;
      }
      return curve;
    }
    case PenaltyFamily::BirgeMassart:
    case PenaltyFamily::Fdr:
    case PenaltyFamily::CustomTable: {
      if (spec.family == PenaltyFamily::CustomTable) check_table(spec, n);
      curve.kind = CurveKind::HardPenalized;
      curve.values = hard_rss_curve(stats);
      for (std::size_t k = 0; k <= n; ++k)
        curve.values[k] += -ns2 + deterministic_penalty(spec, k, n, sigma2);
      return curve;
    }
  }
  throw std::invalid_argument("criterion_curve: unknown family");
}

}  // namespace orthosel
