#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "latmcts/target.hpp"
#include "support/oracles.hpp"
#include "support/stats.hpp"

using namespace latmcts;

TEST_CASE("delta sampling returns the point mass") {
  const auto dist = TargetDistribution::delta({7, 3}, 9);
  Rng rng(11);
  for (int i = 0; i < 100; ++i) CHECK(sample_target(dist, rng) == Position{7, 3});
}

TEST_CASE("degenerate gaussian equals delta at the rounded mean, draw for draw") {
  const auto gauss = TargetDistribution::gaussian(0.0, 20);  // mean (10, 10)
  Rng rng(5);
  for (int i = 0; i < 200; ++i) CHECK(sample_target(gauss, rng) == Position{10, 10});

  // and it consumes no randomness, so downstream draws match the delta case
  Rng a(99), b(99);
  (void)sample_target(gauss, a);
  (void)sample_target(TargetDistribution::delta({10, 10}, 20), b);
  CHECK(a.next_u64() == b.next_u64());

  // half-coordinates round up
  const auto half = TargetDistribution::gaussian(10.5, 2.5, 0.0, 20);
  Rng rng2(5);
  CHECK(sample_target(half, rng2) == Position{11, 3});
}

TEST_CASE("uniform sampling is uniform over all cells (chi-square)") {
  const int side = 4;
  const auto dist = TargetDistribution::uniform(side);
  Rng rng(12345);
  const long draws = 100000;
  std::vector<long> counts(static_cast<size_t>(side * side), 0);
  for (long i = 0; i < draws; ++i) {
    const Position p = sample_target(dist, rng);
    ++counts[oracle::cell_index(side, p)];
  }
  const std::vector<double> expected(counts.size(), static_cast<double>(draws) / 16.0);
  const double stat = teststat::chi_square_stat(counts, expected);
  CHECK(stat < teststat::chi_square_crit(0.01, 15));
}

TEST_CASE("gaussian samples always land in [1,N], even with means at the boundary") {
  for (double mean_x : {1.0, 0.4, 39.7}) {
    const auto dist = TargetDistribution::gaussian(mean_x, 1.0, 30.0, 8);
    Rng rng(777);
    for (int i = 0; i < 20000; ++i) {
      const Position p = sample_target(dist, rng);
      REQUIRE(p.x >= 1);
      REQUIRE(p.x <= 8);
      REQUIRE(p.y >= 1);
      REQUIRE(p.y <= 8);
    }
  }
}

TEST_CASE("boundary-mean gaussian matches the wrapped-rounded pmf (chi-square)") {
  const int side = 8;
  const double mean = 1.0, sigma = 3.0;
  const auto dist = TargetDistribution::gaussian(mean, mean, sigma, side);
  const auto pmf = oracle::wrapped_round_gauss_pmf(side, mean, sigma);

  Rng rng(4242);
  const long draws = 100000;
  std::vector<long> counts(static_cast<size_t>(side), 0);
  for (long i = 0; i < draws; ++i) ++counts[static_cast<size_t>(sample_target(dist, rng).x - 1)];

  std::vector<double> expected(pmf.size());
  for (size_t i = 0; i < pmf.size(); ++i) expected[i] = pmf[i] * static_cast<double>(draws);
  const double stat = teststat::chi_square_stat(counts, expected);
  CHECK(stat < teststat::chi_square_crit(0.01, side - 1));
}

TEST_CASE("identical seeds give identical sample sequences") {
  for (const auto& dist : {TargetDistribution::uniform(13),
                           TargetDistribution::gaussian(4.0, 13),
                           TargetDistribution::delta({3, 9}, 13)}) {
    Rng a(2024), b(2024);
    for (int i = 0; i < 50; ++i) REQUIRE(sample_target(dist, a) == sample_target(dist, b));
  }
}

TEST_CASE("histogram of a delta distribution concentrates all draws") {
  Rng rng(1);
  const auto counts = histogram(TargetDistribution::delta({2, 2}, 5), 100, rng);
  long total = 0;
  for (int y = 1; y <= 5; ++y)
    for (int x = 1; x <= 5; ++x) {
      total += counts.at({x, y});
      if (Position{x, y} == Position{2, 2})
        CHECK(counts.at({x, y}) == 100);
      else
        CHECK(counts.at({x, y}) == 0);
    }
  CHECK(total == 100);
}

TEST_CASE("uniform histogram on N=40 passes chi-square against 1/N^2") {
  const int side = 40;
  Rng rng(2025);
  const long draws = 10000;
  const auto counts = histogram(TargetDistribution::uniform(side), draws, rng);
  std::vector<long> flat;
  flat.reserve(static_cast<size_t>(side * side));
  long total = 0;
  for (int y = 1; y <= side; ++y)
    for (int x = 1; x <= side; ++x) {
      flat.push_back(counts.at({x, y}));
      total += counts.at({x, y});
    }
  CHECK(total == draws);
  const std::vector<double> expected(flat.size(), static_cast<double>(draws) / (side * side));
  const double stat = teststat::chi_square_stat(flat, expected);
  CHECK(stat < teststat::chi_square_crit(0.01, side * side - 1));
}

TEST_CASE("gaussian sigma=2 concentrates 95% of mass within torus distance 6 of center") {
  const int side = 40;
  const double sigma = 2.0;
  const auto pmf_x = oracle::wrapped_round_gauss_pmf(side, side / 2.0, sigma);

  // exact mass of the product pmf inside the radius-6 diamond around (20,20)
  double exact_mass = 0.0;
  for (int x = 1; x <= side; ++x)
    for (int y = 1; y <= side; ++y)
      if (torus_l1({x, y}, {20, 20}, side) <= 6)
        exact_mass += pmf_x[static_cast<size_t>(x - 1)] * pmf_x[static_cast<size_t>(y - 1)];
  CHECK(exact_mass >= 0.95);

  const long draws = 10000;
  Rng rng(31337);
  const auto counts = histogram(TargetDistribution::gaussian(sigma, side), draws, rng);
  long inside = 0, total = 0;
  for (int x = 1; x <= side; ++x)
    for (int y = 1; y <= side; ++y) {
      total += counts.at({x, y});
      if (torus_l1({x, y}, {20, 20}, side) <= 6) inside += counts.at({x, y});
    }
  CHECK(total == draws);
  const double frac = static_cast<double>(inside) / static_cast<double>(draws);
  const double se = std::sqrt(exact_mass * (1.0 - exact_mass) / static_cast<double>(draws));
  CHECK(frac >= 0.95);
  CHECK(std::abs(frac - exact_mass) <= 4.0 * se);
}

TEST_CASE("distribution validation") {
  CHECK_THROWS_AS(TargetDistribution::delta({0, 1}, 5).validate(), std::invalid_argument);
  CHECK_THROWS_AS(TargetDistribution::gaussian(-1.0, 5).validate(), std::invalid_argument);
  CHECK_NOTHROW(TargetDistribution::gaussian(0.0, 5).validate());
  CHECK_NOTHROW(TargetDistribution::uniform(5).validate());
  Rng rng(3);
  CHECK_THROWS_AS(histogram(TargetDistribution::uniform(5), 0, rng), std::invalid_argument);
}
