#include <doctest.h>

#include <cmath>

#include "orthosel/criteria.hpp"
#include "orthosel/rng.hpp"
#include "orthosel/thresholding.hpp"
#include "support/oracles.hpp"

using namespace orthosel;

namespace {

std::vector<double> random_values(Rng& rng, std::size_t n) {
  std::vector<double> values(n);
  for (auto& v : values) v = rng.next_gaussian();
  return values;
}

}  // namespace

TEST_CASE("rss basics") {
  const auto sample = make_sample({3.0, 1.0, 2.0});
  CHECK(rss(sample, sample.values) == 0.0);
  CHECK(rss(make_sample({1.0, 2.0}), std::vector<double>{0.0, 0.0}) == 5.0);
  const auto est = soft_path_estimate(sample, 1);
  CHECK(rss(sample, est.values) == 9.0);  // (3-1)^2 + 1 + 4
  CHECK_THROWS_AS(rss(sample, std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("mallows_cp worked values") {
  const auto sample = make_sample({3.0, 1.0, 2.0});
  CHECK(mallows_cp(sample, 3, 1.0) == doctest::Approx(3.0));   // RSS=0 -> n*sigma2
  CHECK(mallows_cp(sample, 1, 1.0) == doctest::Approx(8.0));   // 9 - 3 + 2
  const auto zeros = make_sample({0.0, 0.0, 0.0, 0.0});
  for (std::size_t k = 0; k <= 4; ++k)
    CHECK(mallows_cp(zeros, k, 2.0) ==
          doctest::Approx(-4.0 * 2.0 + 2.0 * static_cast<double>(k) * 2.0));
  CHECK_THROWS_AS(mallows_cp(sample, 4, 1.0), std::out_of_range);
  CHECK_THROWS_AS(mallows_cp(sample, 1, 0.0), std::invalid_argument);
}

TEST_CASE("deterministic penalty families") {
  const std::size_t n = 16;
  SUBCASE("birge-massart endpoints") {
    const auto spec = PenaltySpec::birge_massart(1.5, 0.75);
    CHECK(deterministic_penalty(spec, 0, n, 1.0) == 0.0);
    CHECK(deterministic_penalty(spec, n, n, 2.0) ==
          doctest::Approx(2.0 * 16.0 * 2.0 * 1.5 * 0.75));
    CHECK(deterministic_penalty(spec, 4, n, 1.0) ==
          doctest::Approx(2.0 * 4.0 * 1.5 * (std::log(4.0) + 0.75)));
  }
  SUBCASE("fdr is the C = 1 member") {
    const auto fdr = PenaltySpec::fdr(0.0);
    for (std::size_t k = 1; k < n; ++k)
      CHECK(deterministic_penalty(fdr, k, n, 1.0) ==
            doctest::Approx(2.0 * static_cast<double>(k) *
                            std::log(static_cast<double>(n) /
                                     static_cast<double>(k))));
  }
  SUBCASE("custom table is a lookup") {
    std::vector<double> table(n + 1);
    for (std::size_t k = 0; k <= n; ++k) table[k] = 3.0 * static_cast<double>(k);
    const auto spec = PenaltySpec::custom_table(table);
    CHECK(deterministic_penalty(spec, 5, n, 1.0) == 15.0);
    CHECK_THROWS_AS(deterministic_penalty(spec, 5, n + 1, 1.0),
                    std::invalid_argument);
  }
  SUBCASE("wrong families are rejected") {
    CHECK_THROWS_AS(deterministic_penalty(PenaltySpec::mallows_cp(), 1, n, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(deterministic_penalty(PenaltySpec::random_soft(), 1, n, 1.0),
                    std::invalid_argument);
  }
  SUBCASE("birge-massart needs C > 0") {
    CHECK_THROWS_AS(PenaltySpec::birge_massart(0.0, 1.0), std::invalid_argument);
  }
}

TEST_CASE("hard criterion worked values") {
  const auto pen0 = PenaltySpec::custom_table(std::vector<double>(4, 0.0));
  const auto zeros = make_sample({0.0, 0.0, 0.0});
  for (std::size_t k = 0; k <= 3; ++k)
    CHECK(hard_criterion(zeros, k, 1.0, pen0) == doctest::Approx(-3.0));

  const auto sample = make_sample({3.0, 1.0, 2.0});
  CHECK(hard_criterion(sample, 1, 1.0, pen0) == doctest::Approx(2.0));  // 5 - 3

  const auto bm = PenaltySpec::birge_massart(2.0, 0.25);
  const double expected = -3.0 * (1.0 - 2.0 * 2.0 * 0.25);
  CHECK(hard_criterion(sample, 3, 1.0, bm) == doctest::Approx(expected));
}

TEST_CASE("random soft penalty") {
  const auto sample = make_sample({3.0, 1.0, 2.0});
  CHECK(random_soft_penalty(sample, 0, 1.0) == 0.0);
  CHECK(random_soft_penalty(sample, 1, 1.0) == doctest::Approx(6.0));  // 4 + 2
  CHECK(random_soft_penalty(sample, 3, 1.0) == doctest::Approx(6.0));  // 2n
}

TEST_CASE("the data-dependent penalty part never reads sigma") {
  Rng rng(SeedSpec{30, 0});
  std::vector<double> values(24);
  for (auto& v : values) v = rng.next_gaussian();
  const auto sample = make_sample(values);
  const auto stats = abs_order_statistics(sample);
  for (std::size_t k = 0; k <= 24; ++k) {
    const double kk = static_cast<double>(k);
    const double t = threshold_level(stats, k);
    const double data_part = kk * t * t;
    // for any sigma the penalty is the same data part plus 2*k*sigma2
    CHECK(random_soft_penalty(sample, k, 1.0) == data_part + 2.0 * kk * 1.0);
    CHECK(random_soft_penalty(sample, k, 9.0) == data_part + 2.0 * kk * 9.0);
  }
}

TEST_CASE("rss gap equals k times the squared threshold level") {
  const auto sample = make_sample({3.0, 1.0, 2.0});
  CHECK(rss_gap(sample, 0) == 0.0);
  CHECK(rss_gap(sample, 1) == doctest::Approx(4.0));
  CHECK(rss_gap(sample, 3) == 0.0);

  Rng rng(SeedSpec{31, 0});
  for (int round = 0; round < 40; ++round) {
    const auto sample2 = make_sample(random_values(rng, 48));
    const auto stats = abs_order_statistics(sample2);
    for (std::size_t k = 0; k <= sample2.size(); ++k) {
      const double t = threshold_level(stats, k);
      const double expected = static_cast<double>(k) * t * t;
      const double gap = rss_gap(sample2, k);
      CHECK(std::abs(gap - expected) <= 1e-12 * std::max(1e-300, expected));
      // and the naive two-sum route agrees at its own round-off scale
      const double naive =
          rss(sample2, soft_path_estimate(sample2, stats, k).values) -
          rss(sample2, hard_path_estimate(sample2, stats, k).values);
      CHECK(std::abs(gap - naive) <= 1e-9 * (1.0 + std::abs(naive)));
    }
  }
}

TEST_CASE("soft Cp equals the hard criterion plus the random penalty") {
  Rng rng(SeedSpec{32, 0});
  const auto pen0 = PenaltySpec::custom_table(std::vector<double>(33, 0.0));
  for (int round = 0; round < 50; ++round) {
    const auto sample = make_sample(random_values(rng, 32));
    for (std::size_t k = 0; k <= 32; ++k) {
      const double cp = mallows_cp(sample, k, 1.0);
      const double sum = hard_criterion(sample, k, 1.0, pen0) +
                         random_soft_penalty(sample, k, 1.0);
      CHECK(std::abs(cp - sum) <= 1e-9 * (1.0 + std::abs(cp)));
    }
  }
}

TEST_CASE("rss curves match the direct per-k evaluation") {
  Rng rng(SeedSpec{33, 0});
  const auto sample = make_sample(random_values(rng, 256));
  const auto stats = abs_order_statistics(sample);
  const auto soft = soft_rss_curve(stats);
  const auto hard = hard_rss_curve(stats);
  for (std::size_t k = 0; k <= sample.size(); ++k) {
    const double t = threshold_level(stats, k);
    const double soft_direct =
        test_oracles::direct_path_rss(sample.values, t, true);
    const double hard_direct =
        test_oracles::direct_path_rss(sample.values, t, false);
    CHECK(std::abs(soft[k] - soft_direct) <= 1e-10 * (1.0 + soft_direct));
    CHECK(std::abs(hard[k] - hard_direct) <= 1e-10 * (1.0 + hard_direct));
  }
}

TEST_CASE("rss curves handle ties through the strict indicator") {
  const auto sample = make_sample({2.0, -2.0, 1.0});
  const auto stats = abs_order_statistics(sample);
  const auto soft = soft_rss_curve(stats);
  const auto hard = hard_rss_curve(stats);
  for (std::size_t k = 0; k <= 3; ++k) {
    const double t = threshold_level(stats, k);
    CHECK(soft[k] ==
          doctest::Approx(test_oracles::direct_path_rss(sample.values, t, true)));
    CHECK(hard[k] ==
          doctest::Approx(test_oracles::direct_path_rss(sample.values, t, false)));
  }
}

TEST_CASE("soft RSS decreases with the stated increment") {
  Rng rng(SeedSpec{34, 0});
  const auto sample = make_sample(random_values(rng, 64));
  const auto stats = abs_order_statistics(sample);
  const auto soft = soft_rss_curve(stats);
  for (std::size_t k = 0; k < sample.size(); ++k) {
    CHECK(soft[k + 1] <= soft[k] + 1e-12);
    const double tk = threshold_level(stats, k);
    const double tk1 = threshold_level(stats, k + 1);
    const double expected =
        static_cast<double>(k + 1) * (tk * tk - tk1 * tk1);
    CHECK(soft[k] - soft[k + 1] ==
          doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("criterion curves agree with the per-k operations") {
  Rng rng(SeedSpec{35, 0});
  const auto sample = make_sample(random_values(rng, 40));
  const auto stats = abs_order_statistics(sample);
  const double sigma2 = 1.7;

  const auto cp_curve =
      criterion_curve(sample, stats, sigma2, PenaltySpec::mallows_cp());
  CHECK(cp_curve.kind == CurveKind::SoftCp);
  const auto bm = PenaltySpec::birge_massart(1.2, 0.3);
  const auto bm_curve = criterion_curve(sample, stats, sigma2, bm);
  CHECK(bm_curve.kind == CurveKind::HardPenalized);
  const auto rs_curve =
      criterion_curve(sample, stats, sigma2, PenaltySpec::random_soft());

  const auto pen0 = PenaltySpec::custom_table(std::vector<double>(41, 0.0));
  for (std::size_t k = 0; k <= 40; ++k) {
    CHECK(std::abs(cp_curve.values[k] - mallows_cp(sample, stats, k, sigma2)) <=
          1e-9 * (1.0 + std::abs(cp_curve.values[k])));
    CHECK(std::abs(bm_curve.values[k] - hard_criterion(sample, k, sigma2, bm)) <=
          1e-9 * (1.0 + std::abs(bm_curve.values[k])));
    const double rs_direct = hard_criterion(sample, k, sigma2, pen0) +
                             random_soft_penalty(sample, k, sigma2);
    CHECK(std::abs(rs_curve.values[k] - rs_direct) <=
          1e-9 * (1.0 + std::abs(rs_direct)));
  }
}

TEST_CASE("adding a constant to a criterion curve keeps the argmin") {
  Rng rng(SeedSpec{36, 0});
  const auto sample = make_sample(random_values(rng, 32));
  const auto stats = abs_order_statistics(sample);
  const auto curve =
      criterion_curve(sample, stats, 1.0, PenaltySpec::mallows_cp());
  const auto argmin = [](const std::vector<double>& v) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < v.size(); ++k)
      if (v[k] < v[best]) best = k;
    return best;
  };
  auto shifted = curve.values;
  for (auto& v : shifted) v += 32.0;  // drop the -n*sigma2 term
  CHECK(argmin(curve.values) == argmin(shifted));
}
