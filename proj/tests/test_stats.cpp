#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "randflight/stats.hpp"

using namespace randflight;
using Catch::Approx;

TEST_CASE("normal quantile against reference values") {
  // frozen from scipy.stats.norm.ppf
  struct Ref {
    double p;
    double z;
  };
  const Ref refs[] = {
      {0.5, 0.0},
      {0.975, 1.959963984540054},
      {0.025, -1.9599639845400545},
      {0.9995, 3.2905267314919255},
      {0.999995, 4.417173413467605},
      {0.99999, 4.264890793923841},
      {0.3, -0.5244005127080409},
      {0.7, 0.5244005127080407},
      {0.841344746068543, 1.0},
      {1e-9, -5.9978070150076865},
      {1.0 - 1e-9, 5.997807019601637},
  };
  for (const auto& ref : refs)
    CHECK(normal_quantile(ref.p) == Approx(ref.z).margin(1e-11));
}

TEST_CASE("normal quantile symmetry and monotonicity") {
  for (double p = 0.02; p < 0.5; p += 0.017)
    CHECK(normal_quantile(p) == Approx(-normal_quantile(1.0 - p)).margin(1e-12));
  double prev = normal_quantile(1e-6);
  for (double p = 1e-4; p < 1.0; p += 1e-3) {
    const double z = normal_quantile(p);
    REQUIRE(z > prev);
    prev = z;
  }
}

TEST_CASE("normal quantile domain") {
  CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(normal_quantile(1.0), std::domain_error);
  CHECK_THROWS_AS(normal_quantile(-0.3), std::domain_error);
}

TEST_CASE("wilson interval endpoints are exact") {
  const auto zero = wilson_interval(0, 50, 0.99);
  CHECK(zero.first == 0.0);
  CHECK(zero.second > 0.0);
  CHECK(zero.second < 1.0);
  const auto full = wilson_interval(50, 50, 0.99);
  CHECK(full.second == 1.0);
  CHECK(full.first > 0.0);
}

TEST_CASE("wilson interval against a reference implementation") {
  // frozen from statsmodels proportion_confint(500, 1000, 0.05, 'wilson')
  const auto [lo, hi] = wilson_interval(500, 1000, 0.95);
  CHECK(lo == Approx(0.4690696003681042).margin(1e-12));
  CHECK(hi == Approx(0.5309303996318958).margin(1e-12));
  // and one at the suite default level
  const auto [lo2, hi2] = wilson_interval(333641, 1000000, 0.999);
  CHECK(lo2 == Approx(0.33209128185984277).margin(1e-12));
  CHECK(hi2 == Approx(0.3351943206273122).margin(1e-12));
}

TEST_CASE("wilson interval contains the sample proportion (property)") {
  for (std::uint64_t trials : {1ull, 2ull, 7ull, 100ull, 999ull}) {
    for (std::uint64_t successes = 0; successes <= trials;
         successes += (trials / 7) + 1) {
      const auto [lo, hi] = wilson_interval(successes, trials, 0.999);
      const double p_hat = double(successes) / double(trials);
      REQUIRE(lo >= 0.0);
      REQUIRE(hi <= 1.0);
      REQUIRE(lo <= p_hat + 1e-15);
      REQUIRE(hi >= p_hat - 1e-15);
    }
  }
}

TEST_CASE("wilson interval input validation") {
  CHECK_THROWS_AS(wilson_interval(1, 0, 0.95), std::invalid_argument);
  CHECK_THROWS_AS(wilson_interval(11, 10, 0.95), std::invalid_argument);
  CHECK_THROWS_AS(wilson_interval(1, 10, 0.0), std::domain_error);
  CHECK_THROWS_AS(wilson_interval(1, 10, 1.0), std::domain_error);
}
