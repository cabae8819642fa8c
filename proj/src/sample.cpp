#include "orthosel/sample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace orthosel {

Sample make_sample(std::vector<double> values, std::optional<double> sigma2) {
  if (values.empty()) throw std::invalid_argument("sample must have n >= 1");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]))
      throw std::invalid_argument("sample value at index " + std::to_string(i) +
                                  " is not finite");
  }
  if (sigma2 && (!(*sigma2 >= 0.0) || !std::isfinite(*sigma2)))
    throw std::invalid_argument("sigma2 must be finite and >= 0");
  return Sample{std::move(values), sigma2};
}

OrderStats abs_order_statistics(const Sample& sample) {
  const std::size_t n = sample.size();
  OrderStats stats;
  stats.perm.resize(n);
  std::iota(stats.perm.begin(), stats.perm.end(), std::size_t{0});
  std::sort(stats.perm.begin(), stats.perm.end(),
            [&](std::size_t i, std::size_t j) {
              const double ai = std::abs(sample.values[i]);
              const double aj = std::abs(sample.values[j]);
              if (ai != aj) return ai > aj;
              return i < j;
            });
  stats.abs_desc.resize(n);
  for (std::size_t r = 0; r < n; ++r)
    stats.abs_desc[r] = std::abs(sample.values[stats.perm[r]]);
  return stats;
}

double threshold_level(const OrderStats& stats, std::size_t k) {
  const std::size_t n = stats.size();
  if (k > n) throw std::out_of_range("threshold_level: k out of 0..n");
  return k == n ? 0.0 : stats.abs_desc[k];
}

}  // namespace orthosel
