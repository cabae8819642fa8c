#include <doctest.h>

#include <cmath>

#include "orthosel/rng.hpp"
#include "orthosel/thresholding.hpp"
#include "support/oracles.hpp"

using namespace orthosel;

TEST_CASE("scalar soft threshold") {
  CHECK(soft_threshold(2.0, 1.0) == 1.0);
  CHECK(soft_threshold(-3.0, 1.0) == -2.0);
  CHECK(soft_threshold(0.5, 1.0) == 0.0);
  CHECK(soft_threshold(1.0, 1.0) == 0.0);  // boundary kills
}

TEST_CASE("scalar hard threshold") {
  CHECK(hard_threshold(2.0, 1.0) == 2.0);
  CHECK(hard_threshold(0.5, 1.0) == 0.0);
  CHECK(hard_threshold(1.0, 1.0) == 0.0);  // strict indicator
  CHECK(hard_threshold(-2.0, 1.0) == -2.0);
}

TEST_CASE("shrinkage orderings hold for random inputs") {
  Rng rng(SeedSpec{21, 0});
  for (int i = 0; i < 2000; ++i) {
    const double x = 4.0 * rng.next_gaussian();
    const double t = 2.0 * rng.next_unit();
    CHECK(std::abs(soft_threshold(x, t)) <= std::abs(x));
    CHECK(std::abs(soft_threshold(x, t)) <= std::abs(hard_threshold(x, t)));
    const double s = soft_threshold(x, t);
    CHECK((s == 0.0 || std::signbit(s) == std::signbit(x)));
  }
}

TEST_CASE("soft path endpoints and the worked three-point example") {
  const auto sample = make_sample({3.0, 1.0, 2.0});
  SUBCASE("k = 0 is the zero vector") {
    const auto est = soft_path_estimate(sample, 0);
    CHECK(est.values == std::vector<double>{0.0, 0.0, 0.0});
    CHECK(est.level == 3.0);
  }
  SUBCASE("k = n returns y") {
    const auto est = soft_path_estimate(sample, 3);
    CHECK(est.values == sample.values);
    CHECK(est.level == 0.0);
  }
  SUBCASE("k = 1 soft-thresholds at the second order statistic") {
    const auto est = soft_path_estimate(sample, 1);
    CHECK(est.values == std::vector<double>{1.0, 0.0, 0.0});
    // the same vector minimizes ||y - mu||^2 + 2*2*||mu||_1 per coordinate
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(std::abs(test_oracles::grid_l1(sample.values[i], 2.0, 1e-4) -
                     est.values[i]) <= 1e-3);
  }
  SUBCASE("k out of range") {
    CHECK_THROWS_AS(soft_path_estimate(sample, 4), std::out_of_range);
  }
}

TEST_CASE("hard path keeps the largest coordinates unshrunk") {
  const auto sample = make_sample({3.0, 1.0, 2.0});
  CHECK(hard_path_estimate(sample, 1).values == std::vector<double>{3.0, 0.0, 0.0});
  CHECK(hard_path_estimate(sample, 3).values == std::vector<double>{3.0, 1.0, 2.0});
  CHECK(hard_path_estimate(sample, 0).values == std::vector<double>{0.0, 0.0, 0.0});
}

TEST_CASE("support nesting and scale equivariance along the soft path") {
  Rng rng(SeedSpec{22, 0});
  std::vector<double> values(24);
  for (auto& v : values) v = rng.next_gaussian();
  const auto sample = make_sample(values);
  const auto stats = abs_order_statistics(sample);

  for (std::size_t k = 0; k < sample.size(); ++k) {
    const auto lo = soft_path_estimate(sample, stats, k);
    const auto hi = soft_path_estimate(sample, stats, k + 1);
    for (std::size_t i = 0; i < sample.size(); ++i)
      if (lo.values[i] != 0.0) CHECK(hi.values[i] != 0.0);
  }

  for (double c : {2.0, -3.0}) {
    auto scaled = values;
    for (auto& v : scaled) v *= c;
    const auto scaled_sample = make_sample(scaled);
    for (std::size_t k : {std::size_t{0}, std::size_t{5}, sample.size()}) {
      const auto base = soft_path_estimate(sample, k);
      const auto est = soft_path_estimate(scaled_sample, k);
      for (std::size_t i = 0; i < sample.size(); ++i)
        CHECK(est.values[i] ==
              doctest::Approx(c * base.values[i]).epsilon(1e-13));
    }
  }
}

TEST_CASE("exactly k coordinates survive when magnitudes are distinct") {
  Rng rng(SeedSpec{23, 0});
  std::vector<double> values(16);
  for (auto& v : values) v = rng.next_gaussian();
  const auto sample = make_sample(values);
  for (std::size_t k = 0; k <= sample.size(); ++k) {
    for (ThresholdKind kind : {ThresholdKind::Soft, ThresholdKind::Hard}) {
      const auto est = kind == ThresholdKind::Soft
                           ? soft_path_estimate(sample, k)
                           : hard_path_estimate(sample, k);
      const auto nonzero = static_cast<std::size_t>(
          std::count_if(est.values.begin(), est.values.end(),
                        [](double v) { return v != 0.0; }));
      CHECK(nonzero == k);
    }
  }
}

TEST_CASE("penalized l1 fit matches the grid oracle") {
  SUBCASE("lambda2 = 0 is the identity") {
    const auto sample = make_sample({0.3, -1.2, 4.0});
    CHECK(penalized_l1_fit(sample, 0.0) == sample.values);
  }
  SUBCASE("worked example") {
    CHECK(penalized_l1_fit(make_sample({3.0, 1.0, 2.0}), 2.0) ==
          std::vector<double>{1.0, 0.0, 0.0});
  }
  SUBCASE("penalty dominating kills everything") {
    CHECK(penalized_l1_fit(make_sample({3.0, -1.0, 2.0}), 3.5) ==
          std::vector<double>{0.0, 0.0, 0.0});
  }
  SUBCASE("random instances against the brute-force grid") {
    Rng rng(SeedSpec{24, 0});
    for (int round = 0; round < 25; ++round) {
      std::vector<double> values(8);
      for (auto& v : values) v = rng.next_gaussian();
      const double lambda2 = 4.0 * rng.next_unit();
      const auto fit = penalized_l1_fit(make_sample(values), lambda2);
      for (std::size_t i = 0; i < values.size(); ++i) {
        const double oracle = test_oracles::grid_l1(values[i], lambda2, 1e-4);
        CHECK(std::abs(fit[i] - oracle) <= 1e-3);
      }
    }
  }
}

TEST_CASE("penalized l^gamma fit") {
  SUBCASE("gamma = 1 equals the l1 fit exactly") {
    Rng rng(SeedSpec{25, 0});
    std::vector<double> values(12);
    for (auto& v : values) v = rng.next_gaussian();
    const auto sample = make_sample(values);
    for (double lambda2 : {0.0, 0.4, 2.0}) {
      const auto a = penalized_lgamma_fit(sample, {lambda2, 1.0});
      const auto b = penalized_l1_fit(sample, lambda2);
      CHECK(a == b);
    }
  }
  SUBCASE("lambda2 = 0 is the identity") {
    const auto sample = make_sample({1.0, -0.5});
    CHECK(penalized_lgamma_fit(sample, {0.0, 0.5}) == sample.values);
  }
  SUBCASE("frozen scalar example: y = 2, gamma = 0.5, lambda2 = 0.5") {
    // dense 1e-6 grid on [0,2] gives m* = 1.814402, objective 1.381444
    const auto fit = penalized_lgamma_fit(make_sample({2.0}), {0.5, 0.5});
    CHECK(fit[0] == doctest::Approx(1.814402).epsilon(1e-5));
    const double obj = (2.0 - fit[0]) * (2.0 - fit[0]) + std::sqrt(fit[0]);
    CHECK(obj == doctest::Approx(1.381444019234753).epsilon(1e-9));
  }
  SUBCASE("gamma out of range") {
    CHECK_THROWS_AS(penalized_lgamma_fit(make_sample({1.0}), {0.5, 0.0}),
                    std::domain_error);
    CHECK_THROWS_AS(penalized_lgamma_fit(make_sample({1.0}), {0.5, 1.5}),
                    std::domain_error);
  }
  SUBCASE("random instances against the brute-force grid") {
    Rng rng(SeedSpec{26, 0});
    for (double gamma : {0.5, 0.8}) {
      for (int round = 0; round < 10; ++round) {
        std::vector<double> values(6);
        for (auto& v : values) v = rng.next_gaussian();
        const double lambda2 = 2.0 * rng.next_unit();
        const auto fit =
            penalized_lgamma_fit(make_sample(values), {lambda2, gamma});
        for (std::size_t i = 0; i < values.size(); ++i) {
          const double oracle =
              test_oracles::grid_lgamma(values[i], lambda2, gamma, 1e-4);
          CHECK(std::abs(fit[i] - oracle) <= 1e-3);
        }
      }
    }
  }
}

TEST_CASE("penalized absolute deviation is keep-or-kill") {
  const auto sample = make_sample({1.5, -0.2, 3.0});
  CHECK(penalized_lad_fit(sample, 0.25) == sample.values);
  CHECK(penalized_lad_fit(sample, 0.75) == std::vector<double>{0.0, 0.0, 0.0});
  // flat objective at 2*lambda2 == 1: tie resolves to the sparser 0
  CHECK(penalized_lad_fit(sample, 0.5) == std::vector<double>{0.0, 0.0, 0.0});

  Rng rng(SeedSpec{27, 0});
  for (int round = 0; round < 20; ++round) {
    const double y = 3.0 * rng.next_gaussian();
    const double lambda2 = rng.next_unit();
    if (std::abs(2.0 * lambda2 - 1.0) < 1e-3) continue;  // grid can't see ties
    const double fit = penalized_lad_fit(make_sample({y}), lambda2)[0];
    CHECK(std::abs(fit - test_oracles::grid_lad(y, lambda2, 1e-4)) <= 1e-3);
  }
}
