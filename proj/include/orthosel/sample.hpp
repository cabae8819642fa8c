#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace orthosel {

// An observed response vector y of length n, with the noise variance when it
// is known. Immutable by convention once built; everything downstream treats
// it as read-only.
struct Sample {
  std::vector<double> values;
  std::optional<double> sigma2;

  std::size_t size() const { return values.size(); }
};

// Validating constructor: n >= 1, every entry finite, sigma2 >= 0 when given.
// Throws std::invalid_argument.
Sample make_sample(std::vector<double> values,
                   std::optional<double> sigma2 = std::nullopt);

// |y| sorted in decreasing order together with the sorting permutation:
// abs_desc[r] == |values[perm[r]]|. Ties broken by smaller original index.
struct OrderStats {
  std::vector<double> abs_desc;
  std::vector<std::size_t> perm;

  std::size_t size() const { return abs_desc.size(); }
};

OrderStats abs_order_statistics(const Sample& sample);

// Threshold level t_k = |y|_(k+1) for k < n; t_n = 0 (full fit).
// k outside 0..n throws std::out_of_range.
double threshold_level(const OrderStats& stats, std::size_t k);

}  // namespace orthosel
