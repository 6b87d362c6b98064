#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "randflight/step_distribution.hpp"

using namespace randflight;
using Catch::Approx;

TEST_CASE("canonical text forms round-trip") {
  for (const char* text :
       {"constant:1", "uniform:0.5,1.5", "exp:1", "lognormal:0,0.5",
        "twopoint:1,3,0.25", "constant:7.25", "exp:0.125",
        "lognormal:-0.5,2"}) {
    const auto dist = parse_step_distribution(text);
    CHECK(to_string(dist) == text);
    CHECK(parse_step_distribution(to_string(dist)) == dist);
  }
}

TEST_CASE("parse rejects malformed and out-of-domain inputs") {
  for (const char* text :
       {"", "constant", "constant:", "constant:x", "gauss:1", "uniform:1",
        "uniform:1,2,3", "uniform:2,1", "uniform:0,1", "exp:0", "exp:-1",
        "lognormal:0,0", "twopoint:1,3,0", "twopoint:1,3,1",
        "twopoint:0,3,0.5", "constant:1 ", "constant:inf7"}) {
    INFO(text);
    CHECK_THROWS_AS(parse_step_distribution(text), std::invalid_argument);
  }
}

TEST_CASE("quantile hits the documented medians and atoms") {
  CHECK(quantile(StepDistribution::uniform_interval(0.5, 1.5), 0.5) == 1.0);
  CHECK(quantile(StepDistribution::exponential(1.0), 0.5) ==
        Approx(std::log(2.0)).margin(1e-15));
  const auto two_point = StepDistribution::two_point(1.0, 3.0, 0.25);
  CHECK(quantile(two_point, 0.1) == 1.0);   // below the atom mass p
  CHECK(quantile(two_point, 0.25) == 1.0);  // boundary sits on the atom
  CHECK(quantile(two_point, 0.26) == 3.0);
  // reversed value order: the smaller value still comes first
  const auto reversed = StepDistribution::two_point(3.0, 1.0, 0.25);
  CHECK(quantile(reversed, 0.1) == 1.0);
  CHECK(quantile(reversed, 0.76) == 3.0);
  CHECK(quantile(StepDistribution::log_normal(0.0, 0.5), 0.5) ==
        Approx(1.0).margin(1e-12));
}

TEST_CASE("quantile domain is the open unit interval") {
  const auto dist = StepDistribution::exponential(1.0);
  CHECK_THROWS_AS(quantile(dist, 0.0), std::domain_error);
  CHECK_THROWS_AS(quantile(dist, 1.0), std::domain_error);
  CHECK_THROWS_AS(quantile(dist, -0.5), std::domain_error);
  CHECK_THROWS_AS(quantile(dist, 2.0), std::domain_error);
}

TEST_CASE("quantile is monotone in u for every family (property)") {
  RandomStream gen(StreamSeed{606, {}});
  std::vector<StepDistribution> dists;
  for (int i = 0; i < 40; ++i) {
    const double a = 0.1 + 3.0 * gen.next_unit();
    const double b = a + 0.1 + 3.0 * gen.next_unit();
    const double p = 0.05 + 0.9 * gen.next_unit();
    dists.push_back(StepDistribution::constant(a));
    dists.push_back(StepDistribution::uniform_interval(a, b));
    dists.push_back(StepDistribution::exponential(a));
    dists.push_back(StepDistribution::log_normal(a - 1.5, 0.1 + a / 4));
    dists.push_back(StepDistribution::two_point(a, b, p));
  }
  for (const auto& dist : dists) {
    for (int i = 0; i < 50; ++i) {
      double u1 = gen.next_open_unit();
      double u2 = gen.next_open_unit();
      if (u1 > u2) std::swap(u1, u2);
      REQUIRE(quantile(dist, u1) <= quantile(dist, u2));
    }
  }
}

TEST_CASE("samples are strictly positive and finite over 10^6 draws") {
  const StepDistribution dists[] = {
      StepDistribution::constant(1.0),
      StepDistribution::uniform_interval(0.5, 1.5),
      StepDistribution::exponential(2.0),
      StepDistribution::log_normal(0.0, 0.5),
      StepDistribution::two_point(1.0, 3.0, 0.25),
  };
  std::uint64_t key = 0;
  for (const auto& dist : dists) {
    RandomStream stream = derive_stream(StreamSeed{707, {}}, key++);
    double min_seen = 1e300;
    bool all_ok = true;
    for (int i = 0; i < 1000000; ++i) {
      const double x = sample_length(dist, stream);
      all_ok = all_ok && std::isfinite(x) && x > 0.0;
      min_seen = std::min(min_seen, x);
    }
    INFO(to_string(dist));
    CHECK(all_ok);
    CHECK(min_seen > 0.0);
  }
}

TEST_CASE("sample means sit within 5 sigma of the law means") {
  struct Case {
    StepDistribution dist;
    double mean;
    double variance;
  };
  const Case cases[] = {
      {StepDistribution::uniform_interval(0.5, 1.5), 1.0, 1.0 / 12.0},
      {StepDistribution::exponential(2.0), 0.5, 0.25},
      {StepDistribution::two_point(1.0, 3.0, 0.25), 2.5, 0.75},
      {StepDistribution::log_normal(0.0, 0.5), std::exp(0.125),
       (std::exp(0.25) - 1.0) * std::exp(0.25)},
  };
  const int n = 1000000;
  std::uint64_t key = 0;
  for (const auto& c : cases) {
    RandomStream stream = derive_stream(StreamSeed{808, {}}, key++);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += sample_length(c.dist, stream);
    const double tol = 5.0 * std::sqrt(c.variance / n);
    INFO(to_string(c.dist));
    CHECK(sum / n == Approx(c.mean).margin(tol));
  }
  // the constant law is exact, not just concentrated
  RandomStream stream = derive_stream(StreamSeed{808, {}}, key);
  const auto one = StepDistribution::constant(1.0);
  for (int i = 0; i < 1000; ++i) REQUIRE(sample_length(one, stream) == 1.0);
}

TEST_CASE("every sample consumes exactly one draw") {
  const StepDistribution dists[] = {
      StepDistribution::constant(2.0),
      StepDistribution::exponential(1.0),
      StepDistribution::log_normal(0.0, 1.0),
  };
  for (const auto& dist : dists) {
    RandomStream a(StreamSeed{909, {}});
    RandomStream b(StreamSeed{909, {}});
    (void)sample_length(dist, a);
    (void)b.next_u64();
    CHECK(a.next_u64() == b.next_u64());
  }
}

TEST_CASE("sampled angles are uniform on [0, 2pi)") {
  RandomStream stream(StreamSeed{1010, {}});
  const int n = 1000000;
  double sum = 0.0;
  int below_pi = 0;
  bool in_range = true;
  for (int i = 0; i < n; ++i) {
    const double a = sample_angle(stream).radians();
    in_range = in_range && a >= 0.0 && a < kTwoPi;
    sum += a;
    below_pi += a < kPi;
  }
  CHECK(in_range);
  const double mean_tol = 5.0 * std::sqrt(kTwoPi * kTwoPi / 12.0 / n);
  CHECK(sum / n == Approx(kPi).margin(mean_tol));
  const double frac_tol = 5.0 * std::sqrt(0.25 / n);
  CHECK(double(below_pi) / n == Approx(0.5).margin(frac_tol));
}
