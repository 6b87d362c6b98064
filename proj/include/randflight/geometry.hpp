#pragma once
// Exact geometry of planar random-direction steps: the fixed-angle pair
// combination, the end-to-origin distance of a whole walk, and the
// closed-form probability that one length beats a two-step combination,
// derived from the interior angles of the triangle built on the three
// lengths.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>

namespace randflight {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

namespace detail {

inline void require_positive(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0.0)
    throw std::domain_error(std::string(what) + " must be finite and > 0");
}

// Interior angle opposite side a, via half-angle tangents:
//
//   tan^2(alpha/2) = ((a-b+c)(a+b-c)) / ((b+c-a)(a+b+c))
//
// Unlike the arccos form, this keeps the angle-sum identity tight even for
// nearly degenerate triples; factors that round negative clamp to 0, which
// lands exactly on the degenerate values 0 and pi.
inline double opposite_angle(double a, double b, double c) noexcept {
  const double v = std::max(0.0, a - b + c);
  const double w = std::max(0.0, a + b - c);
  const double u = std::max(0.0, b + c - a);
  const double s = a + b + c;
  return 2.0 * std::atan2(std::sqrt(v * w), std::sqrt(u * s));
}

}  // namespace detail

/// Direction or interior angle in radians, normalized into [0, 2*pi).
class Angle {
 public:
  Angle() = default;

  explicit Angle(double radians) {
    if (!std::isfinite(radians))
      throw std::domain_error("angle must be finite");
    double r = std::fmod(radians, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r -= kTwoPi;  // the add above can round up to 2*pi
    radians_ = r;
  }

  double radians() const noexcept { return radians_; }

  friend bool operator==(const Angle&, const Angle&) = default;

 private:
  double radians_ = 0.0;
};

/// |a*e_0 + b*e_theta|: the distance after stepping a then b with relative
/// direction theta.  The radicand is clamped at 0 (cancellation when
/// theta ~ pi and a ~ b) and the result at the exact envelope [|a-b|, a+b].
inline double combine_pair(double a, double b, Angle theta) {
  detail::require_positive(a, "step length");
  detail::require_positive(b, "step length");
  const double radicand =
      a * a + b * b + 2.0 * a * b * std::cos(theta.radians());
  const double d = std::sqrt(std::max(0.0, radicand));
  return std::clamp(d, std::abs(a - b), a + b);
}

/// Euclidean norm of sum_k lengths[k] * (cos angles[k], sin angles[k]).
/// Cartesian accumulation is the definition here; chaining combine_pair at
/// fixed angles would mis-track the relative directions.  Zero steps give 0
/// and a single step returns its length exactly.
inline double walk_distance(std::span<const double> lengths,
                            std::span<const Angle> angles) {
  if (lengths.size() != angles.size())
    throw std::invalid_argument("walk_distance: lengths/angles size mismatch");
  for (double l : lengths) detail::require_positive(l, "step length");
  if (lengths.empty()) return 0.0;
  if (lengths.size() == 1) return lengths[0];
  double x = 0.0;
  double y = 0.0;
  for (std::size_t k = 0; k < lengths.size(); ++k) {
    x += lengths[k] * std::cos(angles[k].radians());
    y += lengths[k] * std::sin(angles[k].radians());
  }
  return std::sqrt(x * x + y * y);
}

/// Three strictly positive side lengths.  Degenerate and non-triangle
/// triples are legal; only positivity is enforced.
struct TriangleSides {
  double a;
  double b;
  double c;

  TriangleSides(double a_, double b_, double c_) : a(a_), b(b_), c(c_) {
    detail::require_positive(a, "side a");
    detail::require_positive(b, "side b");
    detail::require_positive(c, "side c");
  }
};

/// Pr(a > b (+) c): the probability that a static length a exceeds the
/// combination of b and c under a uniformly random relative direction.
/// Equals alpha/pi with alpha the angle opposite a in the triangle with
/// sides (a, b, c); 1 or 0 on the degenerate branches where one side
/// reaches the sum of the others.  Boundary ties take the closed upper
/// branch: a == b + c yields 1.
inline double triangle_event_probability(const TriangleSides& t) {
  if (t.a >= t.b + t.c) return 1.0;
  if (t.b >= t.a + t.c || t.c >= t.a + t.b) return 0.0;
  return detail::opposite_angle(t.a, t.b, t.c) / kPi;
}

struct InteriorAngles {
  Angle alpha;  // opposite a
  Angle beta;   // opposite b
  Angle gamma;  // opposite c
};

/// Law-of-cosines interior angles of a proper triangle, opposite a, b, c
/// respectively.  Degenerate triples are rejected; use
/// triangle_event_probability for those.
inline InteriorAngles interior_angles(const TriangleSides& t) {
  if (t.a >= t.b + t.c || t.b >= t.a + t.c || t.c >= t.a + t.b)
    throw std::domain_error(
        "interior_angles: sides do not form a proper triangle");
  return {Angle(detail::opposite_angle(t.a, t.b, t.c)),
          Angle(detail::opposite_angle(t.b, t.a, t.c)),
          Angle(detail::opposite_angle(t.c, t.a, t.b))};
}

}  // namespace randflight
