#pragma once
// Monte Carlo engine for walk-distance experiments.
//
// Reproducibility contract: every trial derives its own substream from the
// experiment seed and the global trial index, so the counted result is a
// pure function of (spec, trials, seed) — independent of shard count and
// thread scheduling.  Shards partition [0, trials) into contiguous blocks
// (the last absorbs the remainder) and exist only to bound parallelism;
// their (successes, ties) counts aggregate by plain integer addition.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <variant>
#include <vector>

#include "randflight/geometry.hpp"
#include "randflight/random_stream.hpp"
#include "randflight/stats.hpp"
#include "randflight/step_distribution.hpp"

namespace randflight {

/// An n-step walk with independent uniform directions and step lengths
/// drawn from `dist`; steps == 0 is legal and yields distance 0.
struct WalkSpec {
  std::uint64_t steps;
  StepDistribution dist;
  friend bool operator==(const WalkSpec&, const WalkSpec&) = default;
};

/// Either the end distance of a k-step walk or a single raw draw.
using DistanceSource = std::variant<WalkSpec, StepDistribution>;

inline DistanceSource walk_source(std::uint64_t steps, StepDistribution dist) {
  return WalkSpec{steps, std::move(dist)};
}
inline DistanceSource draw_source(StepDistribution dist) {
  return DistanceSource(std::move(dist));
}

/// The two-walker comparison: m steps against n steps, one step law.
/// The closed-form answer m/(m+n) needs m+n > 2; that hypothesis is a
/// queryable flag, not a construction error.
struct ComparisonSpec {
  std::uint64_t m;
  std::uint64_t n;
  StepDistribution dist;

  ComparisonSpec(std::uint64_t m_, std::uint64_t n_, StepDistribution dist_)
      : m(m_), n(n_), dist(std::move(dist_)) {
    if (m + n < 1)
      throw std::invalid_argument("ComparisonSpec: m + n must be >= 1");
  }

  bool theorem_applies() const noexcept { return m + n > 2; }
};

/// Binomial proportion estimate with its Wilson interval and the seed that
/// reproduces it.  Ties are counted separately for diagnosis; they never
/// count as successes.
struct ProportionEstimate {
  std::uint64_t successes;
  std::uint64_t trials;
  std::uint64_t ties;
  double p_hat;
  double ci_low;
  double ci_high;
  double level;
  StreamSeed seed;

  double half_width() const noexcept { return 0.5 * (ci_high - ci_low); }
};

inline ProportionEstimate make_proportion_estimate(std::uint64_t successes,
                                                   std::uint64_t trials,
                                                   std::uint64_t ties,
                                                   double level,
                                                   StreamSeed seed) {
  auto [low, high] = wilson_interval(successes, trials, level);
  const double p_hat = double(successes) / double(trials);
  // The score interval contains p_hat analytically; the clamps keep that
  // invariant under floating-point rounding as well.
  return ProportionEstimate{successes,
                            trials,
                            ties,
                            p_hat,
                            std::min(low, p_hat),
                            std::max(high, p_hat),
                            level,
                            std::move(seed)};
}

/// Logical parallelism clamped to [1, 64]: the default shard count.
inline unsigned default_shard_count() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1u : std::min(hc, 64u);
}

namespace detail {

enum class TrialOutcome : unsigned char { miss, success, tie };

struct TrialCounts {
  std::uint64_t successes = 0;
  std::uint64_t ties = 0;
};

// Fixed experiment keys: estimators with the same seed stay decorrelated.
inline constexpr std::uint64_t kFartherKey = 1;
inline constexpr std::uint64_t kReturnKey = 2;
inline constexpr std::uint64_t kDominanceKey = 3;

inline void require_run_params(std::uint64_t trials, unsigned shards) {
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  if (shards == 0) throw std::invalid_argument("shards must be >= 1");
}

// Runs `trial(t)` for t in [0, trials) partitioned into `shards` contiguous
// blocks, executed by at most hardware-concurrency worker threads.  `trial`
// must be pure (it is invoked concurrently).
template <class TrialFn>
TrialCounts run_sharded(std::uint64_t trials, unsigned shards,
                        const TrialFn& trial) {
  const std::uint64_t block = trials / shards;
  std::vector<TrialCounts> per_shard(shards);

  auto run_block = [&](unsigned k) {
    const std::uint64_t begin = block * k;
    const std::uint64_t end = (k + 1 == shards) ? trials : block * (k + 1);
    TrialCounts counts;
    for (std::uint64_t t = begin; t < end; ++t) {
      switch (trial(t)) {
        case TrialOutcome::success:
          ++counts.successes;
          break;
        case TrialOutcome::tie:
          ++counts.ties;
          break;
        case TrialOutcome::miss:
          break;
      }
    }
    per_shard[k] = counts;
  };

  const unsigned workers =
      std::min(shards, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (unsigned k = 0; k < shards; ++k) run_block(k);
  } else {
    std::atomic<unsigned> next{0};
    auto drain = [&] {
      for (unsigned k; (k = next.fetch_add(1)) < shards;) run_block(k);
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 0; w + 1 < workers; ++w) pool.emplace_back(drain);
    drain();
    for (auto& th : pool) th.join();
  }

  TrialCounts total;
  for (const auto& c : per_shard) {
    total.successes += c.successes;
    total.ties += c.ties;
  }
  return total;
}

// Per-step draw order is length first, direction second; each step consumes
// exactly two stream values (the single-step walk still draws its unused
// direction so consumption depends only on the step count).
template <class Law>
double simulate_walk_steps(std::uint64_t steps, const Law& law,
                           RandomStream& stream) {
  if (steps == 0) return 0.0;
  if (steps == 1) {
    const double len = quantile(law, stream.next_open_unit());
    (void)sample_angle(stream);
    return len;  // a one-step walk ends exactly one length away
  }
  double x = 0.0;
  double y = 0.0;
  for (std::uint64_t k = 0; k < steps; ++k) {
    const double len = quantile(law, stream.next_open_unit());
    const double ang = sample_angle(stream).radians();
    x += len * std::cos(ang);
    y += len * std::sin(ang);
  }
  return std::sqrt(x * x + y * y);
}

}  // namespace detail

/// Draws the walk of `spec` from `stream` and returns its end distance;
/// equivalent to feeding the same draws through walk_distance.
inline double simulate_walk_distance(const WalkSpec& spec,
                                     RandomStream& stream) {
  return std::visit(
      [&](const auto& law) {
        return detail::simulate_walk_steps(spec.steps, law, stream);
      },
      spec.dist.variant());
}

/// One realization of a distance source.
inline double sample_source(const DistanceSource& src, RandomStream& stream) {
  if (const auto* walk = std::get_if<WalkSpec>(&src))
    return simulate_walk_distance(*walk, stream);
  return sample_length(std::get<StepDistribution>(src), stream);
}

/// Text form of a source: draw(<dist>) or walk<k>(<dist>).
inline std::string to_string(const DistanceSource& src) {
  if (const auto* walk = std::get_if<WalkSpec>(&src))
    return "walk" + std::to_string(walk->steps) + "(" +
           to_string(walk->dist) + ")";
  return "draw(" + to_string(std::get<StepDistribution>(src)) + ")";
}

inline DistanceSource parse_distance_source(std::string_view text) {
  const std::size_t open = text.find('(');
  if (open == std::string_view::npos || text.empty() || text.back() != ')')
    throw std::invalid_argument(
        "source must look like draw(<dist>) or walk<k>(<dist>), got '" +
        std::string(text) + "'");
  const std::string_view head = text.substr(0, open);
  const std::string_view inner = text.substr(open + 1, text.size() - open - 2);
  if (head == "draw") return draw_source(parse_step_distribution(inner));
  if (head.starts_with("walk")) {
    const std::string_view digits = head.substr(4);
    std::uint64_t steps = 0;
    const char* first = digits.data();
    const char* last = digits.data() + digits.size();
    auto [ptr, ec] = std::from_chars(first, last, steps);
    if (ec == std::errc() && ptr == last && !digits.empty())
      return walk_source(steps, parse_step_distribution(inner));
  }
  throw std::invalid_argument("unknown source '" + std::string(text) + "'");
}

/// Estimates Pr(D_m > D_n) for two independent walkers sharing one step
/// law.  The strict event counts; exact ties are tallied separately.
///
/// Walker substreams are keyed by sorted step count (the shorter walk draws
/// from key 0), so swapping m and n under the same seed realizes identical
/// walk pairs and the success counts of the two orientations are exact
/// complements up to ties.
inline ProportionEstimate estimate_farther_probability(
    const ComparisonSpec& spec, std::uint64_t trials, const StreamSeed& seed,
    unsigned shards, double level = 0.999) {
  detail::require_run_params(trials, shards);
  const std::uint64_t h = derive_state(seed.fold(), detail::kFartherKey);
  const bool first_is_low = spec.m <= spec.n;
  const std::uint64_t key_first = first_is_low ? 0 : 1;
  const std::uint64_t key_second = first_is_low ? 1 : 0;
  const WalkSpec first{spec.m, spec.dist};
  const WalkSpec second{spec.n, spec.dist};

  const auto counts = detail::run_sharded(
      trials, shards, [&](std::uint64_t t) {
        const std::uint64_t ht = derive_state(h, t);
        RandomStream sm =
            RandomStream::from_state(derive_state(ht, key_first));
        RandomStream sn =
            RandomStream::from_state(derive_state(ht, key_second));
        const double dm = simulate_walk_distance(first, sm);
        const double dn = simulate_walk_distance(second, sn);
        if (dm > dn) return detail::TrialOutcome::success;
        return dm == dn ? detail::TrialOutcome::tie
                        : detail::TrialOutcome::miss;
      });
  return make_proportion_estimate(counts.successes, trials, counts.ties,
                                  level, seed);
}

/// Estimates Pr(distance of walk < radius), strict event.
inline ProportionEstimate estimate_return_probability(
    const WalkSpec& spec, double radius, std::uint64_t trials,
    const StreamSeed& seed, unsigned shards, double level = 0.999) {
  detail::require_run_params(trials, shards);
  if (!std::isfinite(radius) || radius <= 0.0)
    throw std::invalid_argument("radius must be finite and > 0");
  const std::uint64_t h = derive_state(seed.fold(), detail::kReturnKey);

  const auto counts = detail::run_sharded(
      trials, shards, [&](std::uint64_t t) {
        const std::uint64_t ht = derive_state(h, t);
        RandomStream walk = RandomStream::from_state(derive_state(ht, 0));
        const double d = simulate_walk_distance(spec, walk);
        if (d < radius) return detail::TrialOutcome::success;
        return d == radius ? detail::TrialOutcome::tie
                           : detail::TrialOutcome::miss;
      });
  return make_proportion_estimate(counts.successes, trials, counts.ties,
                                  level, seed);
}

/// Estimates Pr(lhs > s1 (+) s2 (+) ...): per trial the lhs source is drawn
/// once, each rest source is realized as a step length and given its own
/// independent uniform direction, and the lhs value is compared against the
/// norm of the resultant (strict event).
inline ProportionEstimate estimate_dominance_probability(
    const DistanceSource& lhs, std::span<const DistanceSource> rest,
    std::uint64_t trials, const StreamSeed& seed, unsigned shards,
    double level = 0.999) {
  detail::require_run_params(trials, shards);
  if (rest.empty())
    throw std::invalid_argument(
        "estimate_dominance_probability: rest must be non-empty");
  const std::uint64_t h = derive_state(seed.fold(), detail::kDominanceKey);

  const auto counts = detail::run_sharded(
      trials, shards, [&](std::uint64_t t) {
        const std::uint64_t ht = derive_state(h, t);
        RandomStream ls = RandomStream::from_state(derive_state(ht, 0));
        const double lhs_value = sample_source(lhs, ls);
        double x = 0.0;
        double y = 0.0;
        for (std::size_t j = 0; j < rest.size(); ++j) {
          RandomStream rs =
              RandomStream::from_state(derive_state(ht, 1 + j));
          const double len = sample_source(rest[j], rs);
          const double ang = sample_angle(rs).radians();
          x += len * std::cos(ang);
          y += len * std::sin(ang);
        }
        const double resultant = std::sqrt(x * x + y * y);
        if (lhs_value > resultant) return detail::TrialOutcome::success;
        return lhs_value == resultant ? detail::TrialOutcome::tie
                                      : detail::TrialOutcome::miss;
      });
  return make_proportion_estimate(counts.successes, trials, counts.ties,
                                  level, seed);
}

}  // namespace randflight
