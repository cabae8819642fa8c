#include "orthosel/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "orthosel/csv.hpp"
#include "orthosel/parallel.hpp"

namespace orthosel {

double chi2_tail(double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("chi2_tail: t must be >= 0");
  return std::erfc(std::sqrt(0.5 * t));
}

double chi2_density(double t) {
  if (t <= 0.0) return 0.0;
  return std::exp(-0.5 * t) / std::sqrt(2.0 * std::numbers::pi * t);
}

double chi2_tail_inverse(double u) {
  if (!(u > 0.0 && u <= 1.0))
    throw std::invalid_argument("chi2_tail_inverse: u must be in (0,1]");
  if (u == 1.0) return 0.0;

  // Q(t) <= exp(-t/2) for t >= 1, so -2*log(u) brackets from above.
  double lo = 0.0;
  double hi = std::max(1.0, -2.0 * std::log(u));
  while (chi2_tail(hi) > u) hi *= 2.0;

  // a few bisection rounds to land in Newton's basin
  for (int i = 0; i < 20; ++i) {
    const double mid = 0.5 * (lo + hi);
    (chi2_tail(mid) > u ? lo : hi) = mid;
  }
  double t = 0.5 * (lo + hi);
  for (int i = 0; i < 60; ++i) {
    const double residual = chi2_tail(t) - u;
    if (residual > 0.0)
      lo = t;
    else
      hi = t;
    const double density = chi2_density(t);
    double next = density > 0.0 ? t + residual / density : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == t) break;
    t = next;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
  }
  return t;
}

double log_tail_approx(double u) {
  if (!(u > 0.0 && u < 1.0))
    throw std::invalid_argument("log_tail_approx: u must be in (0,1)");
  return 2.0 * std::log(1.0 / u);
}

std::string tail_report_csv_header() {
  return "n,k,replicas,mc_mean,plug_in,log_approx";
}

std::string tail_report_csv_row(const TailCheckReport& r) {
  return std::to_string(r.n) + "," + std::to_string(r.k) + "," +
         std::to_string(r.replicas) + "," + format_double(r.mc_mean) + "," +
         format_double(r.plug_in) + "," + format_double(r.log_approx);
}

double uniform_order_check(std::size_t n, std::size_t k, std::size_t replicas,
                           const SeedSpec& seed, int threads) {
  if (k >= n) throw std::out_of_range("uniform_order_check: need 0 <= k < n");
  if (replicas < 1)
    throw std::invalid_argument("uniform_order_check: replicas must be >= 1");

  std::vector<double> per_replica(replicas);
  parallel_for(replicas, threads, [&](std::size_t r) {
    Rng rng(derive_stream(seed, r));
    std::vector<double> u(n);
    for (auto& v : u) v = rng.next_unit();
    std::nth_element(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(k),
                     u.end());
    per_replica[r] = static_cast<double>(n) * u[k];
  });
  double acc = 0.0;
  for (double v : per_replica) acc += v;
  return acc / static_cast<double>(replicas);
}

TailCheckReport threshold_law_check(std::size_t n, std::size_t k,
                                    std::size_t replicas, double sigma2,
                                    const SeedSpec& seed, int threads) {
  if (k >= n) throw std::out_of_range("threshold_law_check: need 0 <= k < n");
  if (replicas < 1)
    throw std::invalid_argument("threshold_law_check: replicas must be >= 1");
  if (!(sigma2 > 0.0))
    throw std::invalid_argument("threshold_law_check: sigma2 must be > 0");

  const double sigma = std::sqrt(sigma2);
  std::vector<double> per_replica(replicas);
  parallel_for(replicas, threads, [&](std::size_t r) {
    Rng rng(derive_stream(seed, r));
    std::vector<double> abs_y(n);
    for (auto& v : abs_y) v = std::abs(sigma * rng.next_gaussian());
    // (k+1)-th largest = k-th from the top
    std::nth_element(abs_y.begin(), abs_y.begin() + static_cast<std::ptrdiff_t>(k),
                     abs_y.end(), std::greater<double>());
    per_replica[r] = abs_y[k] * abs_y[k] / sigma2;
  });
  double acc = 0.0;
  for (double v : per_replica) acc += v;

  TailCheckReport report;
  report.n = n;
  report.k = k;
  report.replicas = replicas;
  report.mc_mean = acc / static_cast<double>(replicas);
  report.plug_in = chi2_tail_inverse(static_cast<double>(k + 1) /
                                     static_cast<double>(n));
  report.log_approx = 2.0 * std::log(static_cast<double>(n) /
                                     static_cast<double>(k + 1));
  return report;
}

}  // namespace orthosel
