// Two random walkers leave the origin; who ends up farther?  Estimates the
// probability for a few (m, n) pairs and prints it next to m/(m+n).

#include <cstdio>

#include "randflight/randflight.hpp"

int main() {
  using namespace randflight;
  const StreamSeed seed{2024, {}};
  const auto dist = StepDistribution::exponential(1.0);

  std::printf("%4s %4s %12s %12s\n", "m", "n", "estimate", "m/(m+n)");
  for (auto [m, n] : {std::pair{1, 2}, {2, 3}, {3, 1}, {4, 4}, {5, 2}}) {
    const auto est = estimate_farther_probability(
        ComparisonSpec(m, n, dist), 200'000, seed.child(m * 16 + n),
        default_shard_count());
    std::printf("%4d %4d %12.5f %12.5f\n", m, n, est.p_hat,
                double(m) / (m + n));
  }
  return 0;
}
