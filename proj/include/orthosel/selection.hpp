#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "orthosel/criteria.hpp"
#include "orthosel/sample.hpp"
#include "orthosel/thresholding.hpp"

namespace orthosel {

// The chosen model size together with the curve it minimized and the path
// estimate at k_hat (soft path for MallowsCp, hard path otherwise).
struct SelectionResult {
  std::size_t k_hat = 0;
  CriterionCurve curve;
  ThresholdEstimate estimate;
};

inline constexpr std::size_t kFullRange = std::numeric_limits<std::size_t>::max();

// Minimizes the criterion curve over k in 0..min(n, k_max), smallest argmin
// on ties. k_max exists for callers that must keep the search inside the
// regime where a penalty family is meaningful; the default searches 0..n.
SelectionResult select_k(const Sample& sample, double sigma2,
                         const PenaltySpec& spec, std::size_t k_max = kFullRange);

// Joint complexity-penalized selection: for each k the inner minimizer over
// mu of ||y - mu||^2 + 2*t_k*||mu||_1 is the soft path estimate, and the
// outer argmin over k runs on the full objective
//   RSS(mu_hat_k) + 2*t_k*||mu_hat_k||_1 + pen(k)
// with pen from a deterministic family. Smallest-k tie-break.
SelectionResult complexity_select(const Sample& sample, const PenaltySpec& spec,
                                  double sigma2);

// ||path_estimate(k) - mu_true||^2 for every k in 0..n, direct evaluation.
std::vector<double> path_risk_curve(const Sample& sample,
                                    std::span<const double> mu_true,
                                    ThresholdKind kind);

// Hindsight-best k: smallest argmin of the risk curve for the given kind.
std::size_t oracle_k(const Sample& sample, std::span<const double> mu_true,
                     ThresholdKind kind);

}  // namespace orthosel
