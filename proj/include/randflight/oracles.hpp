#pragma once
// Ground truth for the Monte Carlo engine.
//
// Two independent routes: the closed forms m/(m+n) and 1/(n+1), and a
// deterministic nested quadrature over the walks' relative step angles that
// never touches the closed forms.  The innermost angle of a quadrature is
// integrated exactly through the triangle construction (the conditional
// probability given every other angle is a closed form), which keeps the
// numerical dimension one below the number of relative angles and the
// integrand continuous.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "randflight/geometry.hpp"

namespace randflight {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  int max_depth = 40;
};

/// Pr(D_m > D_n) = m/(m+n); requires the hypothesis m + n > 2.
inline double exact_farther_probability(std::uint64_t m, std::uint64_t n) {
  if (m + n <= 2)
    throw std::invalid_argument(
        "exact_farther_probability: hypothesis m + n > 2 violated");
  return double(m) / double(m + n);
}

/// Pr(n-step unit walk ends inside the unit circle) = 1/(n+1); needs n > 1.
inline double exact_return_probability(std::uint64_t n) {
  if (n <= 1)
    throw std::invalid_argument(
        "exact_return_probability: hypothesis n > 1 violated");
  return 1.0 / double(n + 1);
}

namespace detail {

// Pr(a > b (+) c) for fixed lengths, tolerating zero values: walk partial
// sums can vanish, which makes the combination deterministic.
inline double dominance_probability_fixed(double a, double b, double c) {
  if (a <= 0.0) return 0.0;
  if (b == 0.0 || c == 0.0) return a > b + c ? 1.0 : 0.0;
  return triangle_event_probability(TriangleSides{a, b, c});
}

// 15-point Kronrod rule with embedded 7-point Gauss (QUADPACK dqk15).  The
// returned error uses QUADPACK's rescaled estimate, which stays honest on
// the derivative jumps these dominance integrands carry.
struct Gk15Result {
  double value;
  double error;
};

template <class F>
Gk15Result gk15(const F& f, double lo, double hi) {
  static constexpr double xgk[8] = {
      0.991455371120813, 0.949107912342759, 0.864864423359769,
      0.741531185599394, 0.586087235467691, 0.405845151377397,
      0.207784955007898, 0.0};
  static constexpr double wgk[8] = {
      0.022935322010529, 0.063092092629979, 0.104790010322250,
      0.140653259715526, 0.169004726639268, 0.190350578064785,
      0.204432940075299, 0.209482141084728};
  static constexpr double wg[4] = {0.129484966168870, 0.279705391489277,
                                   0.381830050505119, 0.417959183673469};

  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double resg = wg[3] * fc;
  double resk = wgk[7] * fc;
  double fv[15];
  fv[7] = fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * xgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv[j] = f1;
    fv[14 - j] = f2;
    resk += wgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += wg[j / 2] * (f1 + f2);
  }
  const double mean = 0.5 * resk;
  double resasc = 0.0;
  for (int j = 0; j < 8; ++j) resasc += wgk[j] * std::abs(fv[j] - mean);
  for (int j = 8; j < 15; ++j) resasc += wgk[14 - j] * std::abs(fv[j] - mean);
  resasc *= std::abs(half);

  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  return {resk * half, err};
}

// Globally adaptive Gauss-Kronrod: repeatedly bisect the interval with the
// largest estimated error until the total drops under tol.  Interval picks
// break ties on the left endpoint, so evaluation order and the result are
// deterministic.
template <class F>
double adaptive_gk(const F& f, double lo, double hi, double tol,
                   int max_depth) {
  struct Interval {
    double lo, hi, value, error;
    int depth;
  };
  constexpr std::size_t kMaxIntervals = 4000;
  constexpr int kSeedIntervals = 8;  // a lone GK panel over a full period
                                     // can alias; start partitioned
  std::vector<Interval> intervals;
  intervals.reserve(256);
  auto make = [&](double a, double b, int depth) {
    const auto r = gk15(f, a, b);
    return Interval{a, b, r.value, r.error, depth};
  };
  double total_err = 0.0;
  for (int k = 0; k < kSeedIntervals; ++k) {
    const double a = lo + (hi - lo) * k / kSeedIntervals;
    const double b =
        (k + 1 == kSeedIntervals) ? hi : lo + (hi - lo) * (k + 1) / kSeedIntervals;
    intervals.push_back(make(a, b, 0));
    total_err += intervals.back().error;
  }
  while (total_err > tol && intervals.size() < kMaxIntervals) {
    // worst splittable interval; ties break on the left endpoint so the
    // refinement order (and the summed result) is deterministic
    std::size_t worst = intervals.size();
    for (std::size_t i = 0; i < intervals.size(); ++i) {
      if (intervals[i].depth >= max_depth) continue;
      if (worst == intervals.size() ||
          intervals[i].error > intervals[worst].error ||
          (intervals[i].error == intervals[worst].error &&
           intervals[i].lo < intervals[worst].lo))
        worst = i;
    }
    if (worst == intervals.size()) break;
    const Interval split = intervals[worst];
    const double mid = 0.5 * (split.lo + split.hi);
    const Interval left = make(split.lo, mid, split.depth + 1);
    const Interval right = make(mid, split.hi, split.depth + 1);
    total_err += left.error + right.error - split.error;
    intervals[worst] = left;
    intervals.push_back(right);
  }
  // deterministic summation order: sort by left endpoint
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  double value = 0.0;
  for (const auto& iv : intervals) value += iv.value;
  return value;
}

// Mean of g over [0, 2*pi)^dims under the product uniform measure.
// Sequential and deterministic; inner dimensions run at a tighter tolerance
// so their noise stays below the outer error estimate.
template <class G>
double mean_over_angles_impl(std::array<double, 3>& angles, int index,
                             int dims, double tol, int depth, const G& g) {
  if (index == dims)
    return g(std::span<const double>(angles.data(), std::size_t(dims)));
  auto f = [&](double theta) {
    angles[index] = theta;
    return mean_over_angles_impl(angles, index + 1, dims, tol / 50.0, depth,
                                 g);
  };
  return adaptive_gk(f, 0.0, kTwoPi, tol * kTwoPi, depth) / kTwoPi;
}

template <class G>
double mean_over_angles(int dims, double tol, int depth, const G& g) {
  std::array<double, 3> angles{};
  return mean_over_angles_impl(angles, 0, dims, tol, depth, g);
}

// End distance of a constant-length walk whose first step points along the
// x axis; rel_angles are the remaining steps' directions.
inline double constant_walk_distance(double length,
                                     std::span<const double> rel_angles) {
  double x = 1.0;
  double y = 0.0;
  for (double theta : rel_angles) {
    x += std::cos(theta);
    y += std::sin(theta);
  }
  return length * std::sqrt(x * x + y * y);
}

}  // namespace detail

/// Brute-force oracle for Pr(l1 (+) ... (+) ln < radius) at fixed step
/// lengths, integrating over the n-1 relative angles (first direction
/// pinned by rotational invariance; the last angle in closed form).
/// Absolute error: <= cfg.abs_tol for n == 2, <= 1e-6 for n in {3, 4}.
inline double quadrature_return_probability(std::size_t n,
                                            std::span<const double> lengths,
                                            double radius,
                                            QuadratureConfig cfg = {}) {
  if (n < 2 || n > 4)
    throw std::invalid_argument(
        "quadrature_return_probability: n must be in {2, 3, 4}");
  if (lengths.size() != n)
    throw std::invalid_argument(
        "quadrature_return_probability: lengths.size() must equal n");
  for (double l : lengths) detail::require_positive(l, "step length");
  detail::require_positive(radius, "radius");

  if (n == 2)
    return detail::dominance_probability_fixed(radius, lengths[0],
                                               lengths[1]);

  const int dims = int(n) - 2;
  const double tol = std::max(cfg.abs_tol, dims == 1 ? 1e-10 : 1e-8);
  return detail::mean_over_angles(
      dims, tol, cfg.max_depth, [&](std::span<const double> angles) {
        double x = lengths[0];
        double y = 0.0;
        for (int i = 0; i < dims; ++i) {
          x += lengths[std::size_t(i) + 1] * std::cos(angles[std::size_t(i)]);
          y += lengths[std::size_t(i) + 1] * std::sin(angles[std::size_t(i)]);
        }
        const double partial = std::sqrt(x * x + y * y);
        return detail::dominance_probability_fixed(radius, partial,
                                                   lengths[n - 1]);
      });
}

/// Brute-force oracle for Pr(D_m > D_n) with constant step length,
/// integrating over the two walks' relative angles; supported while
/// (m-1) + (n-1) <= 3.  Absolute error <= 1e-6 (<= 1e-9 when only one
/// relative angle is involved).
inline double quadrature_farther_probability(std::uint64_t m, std::uint64_t n,
                                             double length,
                                             QuadratureConfig cfg = {}) {
  const std::uint64_t spec_dims = (m > 0 ? m - 1 : 0) + (n > 0 ? n - 1 : 0);
  if (spec_dims > 3)
    throw std::invalid_argument(
        "quadrature_farther_probability: (m-1)+(n-1) must be <= 3");
  detail::require_positive(length, "step length");

  if (m == 0) return 0.0;  // D_0 = 0 never strictly exceeds anything
  if (n == 0) return 1.0;  // D_m > 0 almost surely for m >= 1
  if (m == 1 && n == 1) return 0.0;  // equal constants, strict event

  // Orient so the longer walk carries the numeric dimensions: with m >= n
  // the shorter walk reduces to a closed form and the integrand keeps wide
  // active bands (narrow-window integrands defeat node-based refinement).
  // Exact because D_n is atom-free for n >= 2, so ties have probability 0.
  if (m < n) return 1.0 - quadrature_farther_probability(n, m, length, cfg);

  if (n >= 2) {
    // Condition on walk n's last direction: given everything else the event
    // is Pr(d_m > partial (+) length).
    const int dims_m = int(m) - 1;
    const int dims = dims_m + int(n) - 2;
    const double tol = dims <= 1 ? 1e-10 : 1e-8;
    return detail::mean_over_angles(
        dims, std::max(cfg.abs_tol, tol), cfg.max_depth,
        [&](std::span<const double> angles) {
          const double dm =
              detail::constant_walk_distance(length, angles.first(dims_m));
          const double partial = detail::constant_walk_distance(
              length, angles.subspan(std::size_t(dims_m)));
          return detail::dominance_probability_fixed(dm, partial, length);
        });
  }

  // n == 1, m >= 2: complement through walk m's last direction; the tie
  // D_m == length has probability zero here.
  const int dims = int(m) - 2;
  const double tol = dims <= 1 ? 1e-10 : 1e-8;
  const double p_less = detail::mean_over_angles(
      dims, std::max(cfg.abs_tol, tol), cfg.max_depth,
      [&](std::span<const double> angles) {
        const double partial = detail::constant_walk_distance(length, angles);
        return detail::dominance_probability_fixed(length, partial, length);
      });
  return 1.0 - p_less;
}

/// Independent check of triangle_event_probability: measures the angle set
/// {theta : combine_pair(b, c, theta) < a} by bisection on the monotone
/// half-period [0, pi].  No inverse trigonometry involved.
inline double bisection_dominance_probability(double a, double b, double c) {
  detail::require_positive(a, "side a");
  detail::require_positive(b, "side b");
  detail::require_positive(c, "side c");
  if (combine_pair(b, c, Angle(0.0)) < a) return 1.0;   // a > b + c
  if (combine_pair(b, c, Angle(kPi)) >= a) return 0.0;  // a <= |b - c|
  double lo = 0.0;
  double hi = kPi;  // invariant: combine(lo) >= a > combine(hi)
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (combine_pair(b, c, Angle(mid)) >= a)
      lo = mid;
    else
      hi = mid;
  }
  const double theta_star = 0.5 * (lo + hi);
  return (kPi - theta_star) / kPi;
}

}  // namespace randflight
