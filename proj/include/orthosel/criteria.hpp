#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "orthosel/sample.hpp"

namespace orthosel {

enum class PenaltyFamily { MallowsCp, BirgeMassart, Fdr, RandomSoft, CustomTable };

// Tagged choice of selection criterion family. BirgeMassart carries
// pen(k) = 2*k*sigma2*C*(log(n/k) + Cprime); Fdr is the C = 1 member of that
// family; CustomTable supplies pen(k) for every k in 0..n directly.
struct PenaltySpec {
  PenaltyFamily family = PenaltyFamily::MallowsCp;
  double C = 1.0;
  double Cprime = 0.0;
  std::vector<double> table;

  static PenaltySpec mallows_cp();
  static PenaltySpec birge_massart(double C, double Cprime);
  static PenaltySpec fdr(double Cprime);
  static PenaltySpec random_soft();
  static PenaltySpec custom_table(std::vector<double> values);
};

enum class CurveKind { SoftCp, HardPenalized };

// A criterion evaluated at every k in 0..n.
struct CriterionCurve {
  std::vector<double> values;
  CurveKind kind = CurveKind::SoftCp;
  double sigma2_used = 0.0;
};

// sum (y_i - estimate_i)^2; lengths must match.
double rss(const Sample& sample, std::span<const double> estimate);

// Cp(mu_hat_k) = ||y - mu_hat_k||^2 - n*sigma2 + 2*k*sigma2, evaluated at the
// soft path estimate. This is the definitional per-k route; curve sweeps go
// through criterion_curve which uses suffix sums.
double mallows_cp(const Sample& sample, std::size_t k, double sigma2);
double mallows_cp(const Sample& sample, const OrderStats& stats, std::size_t k,
                  double sigma2);

// pen(k) for the deterministic families (BirgeMassart, Fdr, CustomTable).
// pen(0) = 0 for all families; BirgeMassart at k = n is 2*n*sigma2*C*Cprime.
// MallowsCp/RandomSoft passed here is a wrong-family error.
double deterministic_penalty(const PenaltySpec& spec, std::size_t k,
                             std::size_t n, double sigma2);

// C'p(mu_tilde_k) = ||y - mu_tilde_k||^2 - n*sigma2 + pen(k) at the hard path
// estimate.
double hard_criterion(const Sample& sample, std::size_t k, double sigma2,
                      const PenaltySpec& spec);

// pen(k) = k*|y|^2_(k+1) + 2*k*sigma2. The data-dependent part reads only the
// order statistics, never sigma2.
double random_soft_penalty(const Sample& sample, std::size_t k, double sigma2);

// ||y - mu_hat_k||^2 - ||y - mu_tilde_k||^2, accumulated per coordinate: the
// two residuals agree exactly where both paths kill, and differ by exactly
// t_k^2 where both keep, so the gap is (#kept)*t_k^2. A subtraction of the
// two full sums would lose the identity to cancellation when k*t_k^2 is far
// below ||y||^2.
double rss_gap(const Sample& sample, std::size_t k);

// ||y - mu_hat_k||^2 and ||y - mu_tilde_k||^2 for every k in 0..n in one
// O(n log n) pass over suffix sums of squared order statistics. Exact under
// ties (a coordinate equal to the level is killed by both paths).
std::vector<double> soft_rss_curve(const OrderStats& stats);
std::vector<double> hard_rss_curve(const OrderStats& stats);

// Full criterion curve for any family (SoftCp for MallowsCp, HardPenalized
// otherwise).
CriterionCurve criterion_curve(const Sample& sample, const OrderStats& stats,
                               double sigma2, const PenaltySpec& spec);

}  // namespace orthosel
