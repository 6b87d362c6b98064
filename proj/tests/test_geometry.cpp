#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "randflight/geometry.hpp"
#include "randflight/random_stream.hpp"

using namespace randflight;
using Catch::Approx;

namespace {

// test-local generator for property checks
struct Gen {
  RandomStream stream;
  explicit Gen(std::uint64_t root) : stream(StreamSeed{root, {}}) {}
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * stream.next_unit();
  }
};

}  // namespace

TEST_CASE("angles normalize into [0, 2pi)") {
  CHECK(Angle(0.0).radians() == 0.0);
  CHECK(Angle(7.0 * kPi).radians() == Approx(kPi).margin(1e-12));
  CHECK(Angle(-kPi / 2).radians() == Approx(1.5 * kPi).margin(1e-12));
  CHECK(Angle(kTwoPi).radians() == 0.0);
  CHECK(Angle(-1e-18).radians() < kTwoPi);
  CHECK_THROWS_AS(Angle(std::numeric_limits<double>::infinity()),
                  std::domain_error);
  CHECK_THROWS_AS(Angle(std::nan("")), std::domain_error);
}

TEST_CASE("combine_pair matches the collinear and right-angle cases") {
  CHECK(combine_pair(1.0, 1.0, Angle(0.0)) == 2.0);
  CHECK(combine_pair(1.0, 1.0, Angle(kPi)) == 0.0);
  CHECK(combine_pair(3.0, 4.0, Angle(kPi / 2)) == Approx(5.0).margin(1e-12));
}

TEST_CASE("combine_pair rejects bad lengths") {
  CHECK_THROWS_AS(combine_pair(0.0, 1.0, Angle(1.0)), std::domain_error);
  CHECK_THROWS_AS(combine_pair(1.0, -2.0, Angle(1.0)), std::domain_error);
  CHECK_THROWS_AS(
      combine_pair(std::numeric_limits<double>::infinity(), 1.0, Angle(1.0)),
      std::domain_error);
}

TEST_CASE("combine_pair envelope and symmetries (property)") {
  Gen gen(101);
  for (int i = 0; i < 5000; ++i) {
    const double a = gen.uniform(1e-3, 10.0);
    const double b = gen.uniform(1e-3, 10.0);
    const double theta = gen.uniform(0.0, kTwoPi);
    const double d = combine_pair(a, b, Angle(theta));
    REQUIRE(d >= std::abs(a - b));
    REQUIRE(d <= a + b);
    REQUIRE(combine_pair(b, a, Angle(theta)) == d);
    REQUIRE(combine_pair(a, b, Angle(kTwoPi - theta)) ==
            Approx(d).margin(1e-12));
  }
}

TEST_CASE("walk_distance handles the degenerate shapes") {
  CHECK(walk_distance({}, {}) == 0.0);

  const std::vector<double> two{1.0, 1.0};
  const std::vector<Angle> back{Angle(0.0), Angle(kPi)};
  CHECK(walk_distance(two, back) == Approx(0.0).margin(1e-15));

  const std::vector<double> four(4, 1.0);
  const std::vector<Angle> square{Angle(0.0), Angle(kPi / 2), Angle(kPi),
                                  Angle(1.5 * kPi)};
  CHECK(walk_distance(four, square) == Approx(0.0).margin(1e-15));

  const std::vector<double> one{0.75};
  const std::vector<Angle> dir{Angle(1.234)};
  CHECK(walk_distance(one, dir) == 0.75);  // single step is exact
}

TEST_CASE("walk_distance rejects malformed input") {
  const std::vector<double> lengths{1.0, 2.0};
  const std::vector<Angle> angles{Angle(0.0)};
  CHECK_THROWS_AS(walk_distance(lengths, angles), std::invalid_argument);
  const std::vector<double> bad{1.0, 0.0};
  const std::vector<Angle> two_angles{Angle(0.0), Angle(1.0)};
  CHECK_THROWS_AS(walk_distance(bad, two_angles), std::domain_error);
}

TEST_CASE("two-step walk equals combine_pair (property)") {
  Gen gen(202);
  for (int i = 0; i < 2000; ++i) {
    const double a = gen.uniform(0.1, 5.0);
    const double b = gen.uniform(0.1, 5.0);
    const double theta = gen.uniform(0.0, kTwoPi);
    const std::vector<double> lengths{a, b};
    const std::vector<Angle> angles{Angle(0.0), Angle(theta)};
    REQUIRE(walk_distance(lengths, angles) ==
            Approx(combine_pair(a, b, Angle(theta))).margin(1e-12));
  }
}

TEST_CASE("triangle_event_probability matches the known values") {
  CHECK(triangle_event_probability({2.0, 1.0, 1.0}) == 1.0);  // a = b + c
  CHECK(triangle_event_probability({5.0, 1.0, 1.0}) == 1.0);
  CHECK(triangle_event_probability({1.0, 5.0, 1.0}) == 0.0);
  CHECK(triangle_event_probability({1.0, 1.0, 5.0}) == 0.0);
  CHECK(triangle_event_probability({1.0, 1.0, 1.0}) ==
        Approx(1.0 / 3.0).margin(1e-15));
  CHECK(triangle_event_probability({std::sqrt(2.0), 1.0, 1.0}) ==
        Approx(0.5).margin(1e-12));
  CHECK_THROWS_AS(triangle_event_probability({0.0, 1.0, 1.0}),
                  std::domain_error);
  CHECK_THROWS_AS(TriangleSides(1.0, -1.0, 1.0), std::domain_error);
}

TEST_CASE("the three dominance terms always sum to 1 (property)") {
  Gen gen(303);
  auto sum3 = [](double a, double b, double c) {
    return triangle_event_probability({a, b, c}) +
           triangle_event_probability({b, a, c}) +
           triangle_event_probability({c, a, b});
  };
  for (int i = 0; i < 5000; ++i) {
    const double a = gen.uniform(0.05, 5.0);
    const double b = gen.uniform(0.05, 5.0);
    const double c = gen.uniform(0.05, 5.0);
    REQUIRE(sum3(a, b, c) == Approx(1.0).margin(1e-12));
  }
  // exactly degenerate and nearly degenerate triples
  CHECK(sum3(1.0, 1.0, 2.0) == 1.0);
  CHECK(sum3(3.0, 1.0, 1.0) == 1.0);
  CHECK(sum3(1.0, 1.0, 2.0 - 1e-13) == Approx(1.0).margin(1e-12));
  CHECK(sum3(1.0, 1.0, 2.0 + 1e-13) == 1.0);
  CHECK(sum3(1e-6, 1e-6, 2e-6 - 1e-19) == Approx(1.0).margin(1e-12));
}

TEST_CASE("scale invariance of the dominance probability") {
  Gen gen(404);
  for (int i = 0; i < 1000; ++i) {
    // proper triangles only: u, v > 0 sides from a simplex-ish draw
    const double a = gen.uniform(0.5, 2.0);
    const double b = gen.uniform(0.5, 2.0);
    const double c = gen.uniform(std::abs(a - b) + 1e-3, a + b - 1e-3);
    const double p = triangle_event_probability({a, b, c});
    for (double lambda : {1e-6, 1.0, 1e6}) {
      REQUIRE(triangle_event_probability(
                  {lambda * a, lambda * b, lambda * c}) ==
              Approx(p).margin(1e-12));
    }
  }
}

TEST_CASE("interior angles of the classic triangles") {
  const auto equilateral = interior_angles({1.0, 1.0, 1.0});
  CHECK(equilateral.alpha.radians() == Approx(kPi / 3).margin(1e-15));
  CHECK(equilateral.beta.radians() == Approx(kPi / 3).margin(1e-15));
  CHECK(equilateral.gamma.radians() == Approx(kPi / 3).margin(1e-15));

  const auto right = interior_angles({std::sqrt(2.0), 1.0, 1.0});
  CHECK(right.alpha.radians() == Approx(kPi / 2).margin(1e-12));
  CHECK(right.beta.radians() == Approx(kPi / 4).margin(1e-12));
  CHECK(right.gamma.radians() == Approx(kPi / 4).margin(1e-12));

  const auto pythagorean = interior_angles({3.0, 4.0, 5.0});
  CHECK(pythagorean.alpha.radians() + pythagorean.beta.radians() +
            pythagorean.gamma.radians() ==
        Approx(kPi).margin(1e-12));

  CHECK_THROWS_AS(interior_angles({2.0, 1.0, 1.0}), std::domain_error);
  CHECK_THROWS_AS(interior_angles({1.0, 1.0, 2.5}), std::domain_error);
}

TEST_CASE("angle sum and branch consistency (property)") {
  Gen gen(505);
  for (int i = 0; i < 2000; ++i) {
    const double a = gen.uniform(0.5, 2.0);
    const double b = gen.uniform(0.5, 2.0);
    const double c = gen.uniform(std::abs(a - b) + 1e-3, a + b - 1e-3);
    const auto angles = interior_angles({a, b, c});
    REQUIRE(angles.alpha.radians() + angles.beta.radians() +
                angles.gamma.radians() ==
            Approx(kPi).margin(1e-12));
    // each interior angle is pi times the matching dominance probability
    REQUIRE(angles.alpha.radians() ==
            Approx(kPi * triangle_event_probability({a, b, c}))
                .margin(1e-12));
    REQUIRE(angles.beta.radians() ==
            Approx(kPi * triangle_event_probability({b, a, c}))
                .margin(1e-12));
    REQUIRE(angles.gamma.radians() ==
            Approx(kPi * triangle_event_probability({c, a, b}))
                .margin(1e-12));
  }
}
