// The three dominance probabilities of any positive triple sum to 1: prints
// the closed-form terms for a few triples, plus a Monte Carlo cross-check.

#include <cstdio>

#include "randflight/randflight.hpp"

int main() {
  using namespace randflight;

  std::printf("closed form:\n");
  for (auto [a, b, c] : {std::tuple{1.0, 1.0, 1.0}, {2.0, 3.0, 4.0},
                         {5.0, 1.0, 1.0}, {0.3, 0.4, 0.6}}) {
    const double pa = triangle_event_probability({a, b, c});
    const double pb = triangle_event_probability({b, a, c});
    const double pc = triangle_event_probability({c, a, b});
    std::printf("  (%g, %g, %g): %.6f + %.6f + %.6f = %.12f\n", a, b, c, pa,
                pb, pc, pa + pb + pc);
  }

  std::printf("Monte Carlo, random sources:\n");
  const std::array<DistanceSource, 3> sources{
      walk_source(2, StepDistribution::constant(1.0)),
      draw_source(StepDistribution::exponential(1.0)),
      draw_source(StepDistribution::uniform_interval(0.5, 1.5))};
  const auto report = run_lemma_suite({&sources, 1}, 200'000, {7, {}});
  const auto& check = report.checks.front();
  std::printf("  %s: sum = %.5f in [%.5f, %.5f]\n", check.dist.c_str(),
              *check.p_hat, *check.ci_low, *check.ci_high);
  return 0;
}
