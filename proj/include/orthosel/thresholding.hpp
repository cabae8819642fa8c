#pragma once

#include <cstddef>
#include <vector>

#include "orthosel/sample.hpp"

namespace orthosel {

// eta(x,t)  = x 1{|x|>t} (1 - t/|x|)   -- shrink by t, kill at or below t
// eta'(x,t) = x 1{|x|>t}               -- keep unchanged, kill at or below t
// The indicator is strict in both: |x| == t maps to 0.
double soft_threshold(double x, double t);
double hard_threshold(double x, double t);

enum class ThresholdKind { Soft, Hard };

// One point of the k-indexed estimator path: values[i] = eta(y_i, t_k) or
// eta'(y_i, t_k) with t_k the (k+1)-th largest |y| (0 at k = n).
struct ThresholdEstimate {
  std::vector<double> values;
  std::size_t k = 0;
  double level = 0.0;
  ThresholdKind kind = ThresholdKind::Soft;
};

ThresholdEstimate soft_path_estimate(const Sample& sample, std::size_t k);
ThresholdEstimate hard_path_estimate(const Sample& sample, std::size_t k);

// Overloads reusing precomputed order statistics (path sweeps call these in a
// loop; resorting per k would be quadratic).
ThresholdEstimate soft_path_estimate(const Sample& sample,
                                     const OrderStats& stats, std::size_t k);
ThresholdEstimate hard_path_estimate(const Sample& sample,
                                     const OrderStats& stats, std::size_t k);

enum class PenalizedLoss { Quadratic, AbsoluteDeviation };

// Parameters of the coordinate-wise penalized fits: weight lambda2 (the
// objective carries 2*lambda2), exponent gamma in (0,1] for the l^gamma
// penalty, and the loss.
struct PenalizedFitSpec {
  double lambda2 = 0.0;
  double gamma = 1.0;
  PenalizedLoss loss = PenalizedLoss::Quadratic;
};

// argmin_mu ||y - mu||^2 + 2*lambda2*||mu||_1, solved exactly coordinate-wise
// by soft thresholding at level lambda2.
std::vector<double> penalized_l1_fit(const Sample& sample, double lambda2);

// argmin_mu ||y - mu||^2 + 2*lambda2*sum |mu_i|^gamma for gamma in (0,1].
// gamma = 1 delegates to penalized_l1_fit; gamma < 1 compares m = 0 against
// the unique interior local minimum (golden-section on the unimodal branch).
std::vector<double> penalized_lgamma_fit(const Sample& sample,
                                         const PenalizedFitSpec& spec);

// argmin_mu ||y - mu||_1 + 2*lambda2*||mu||_1: keep-or-kill per coordinate,
// y_i survives iff 2*lambda2 < 1 (the tie 2*lambda2 == 1 kills).
std::vector<double> penalized_lad_fit(const Sample& sample, double lambda2);

}  // namespace orthosel
