#pragma once
// Small statistics kernel: the standard normal quantile and the Wilson
// score interval for binomial proportions.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>

namespace randflight {

/// Standard normal quantile (inverse CDF), Wichura's AS 241 / PPND16
/// rational approximation.  Absolute error is below 1e-9 everywhere on
/// (0, 1); in practice near machine precision.
inline double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("normal_quantile: p must be in (0, 1)");

  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
              6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
            1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
          1.3314166789178437745e2) * r + 3.3871328727963666080e0);
    const double den =
        (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
              3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
            5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
          4.2313330701600911252e1) * r + 1.0);
    return q * num / den;
  }

  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double z;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
            3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
          4.63033784615654529590e0) * r + 1.42343711074968357734e0);
    const double den =
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
          2.05319162663775882187e0) * r + 1.0);
    z = num / den;
  } else {
    r -= 5.0;
    const double num =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
          5.46378491116411436990e0) * r + 6.65790464350110377720e0);
    const double den =
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
    z = num / den;
  }
  return (q < 0.0) ? -z : z;
}

/// Wilson score interval for `successes` out of `trials` at confidence
/// `level`.  Contained in [0, 1]; the bound is exact at the 0 and n
/// endpoints.
inline std::pair<double, double> wilson_interval(std::uint64_t successes,
                                                 std::uint64_t trials,
                                                 double level) {
  if (trials == 0)
    throw std::invalid_argument("wilson_interval: trials must be >= 1");
  if (successes > trials)
    throw std::invalid_argument("wilson_interval: successes exceed trials");
  if (!(level > 0.0 && level < 1.0))
    throw std::domain_error("wilson_interval: level must be in (0, 1)");

  const double n = double(trials);
  const double p_hat = double(successes) / n;
  const double z = normal_quantile(0.5 * (1.0 + level));
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p_hat + z2 / (2.0 * n)) / denom;
  const double half =
      (z / denom) * std::sqrt(p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n));

  const double low = (successes == 0) ? 0.0 : std::max(0.0, center - half);
  const double high =
      (successes == trials) ? 1.0 : std::min(1.0, center + half);
  return {low, high};
}

}  // namespace randflight
