#pragma once
// Strictly positive step-length laws and their inverse-transform sampling.
//
// Every draw consumes exactly one 64-bit value from the stream, including
// the constant law, so sampling is quantile-coupled: two laws driven by the
// same stream see the same underlying uniforms in the same positions.

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "randflight/geometry.hpp"
#include "randflight/random_stream.hpp"
#include "randflight/stats.hpp"

namespace randflight {

struct ConstantStep {
  double value;
  friend bool operator==(const ConstantStep&, const ConstantStep&) = default;
};
struct UniformIntervalStep {
  double lo;
  double hi;
  friend bool operator==(const UniformIntervalStep&,
                         const UniformIntervalStep&) = default;
};
struct ExponentialStep {
  double rate;
  friend bool operator==(const ExponentialStep&,
                         const ExponentialStep&) = default;
};
struct LogNormalStep {
  double mu;
  double sigma;
  friend bool operator==(const LogNormalStep&, const LogNormalStep&) = default;
};
struct TwoPointStep {
  double v1;
  double v2;
  double p;  // mass on v1
  friend bool operator==(const TwoPointStep&, const TwoPointStep&) = default;
};

/// Tagged step-length law with strictly positive support.  Construct via
/// the named factories (which validate parameters) or parse the canonical
/// text form, e.g. "constant:1", "uniform:0.5,1.5", "exp:1",
/// "lognormal:0,0.5", "twopoint:1,3,0.25".
class StepDistribution {
 public:
  using Variant = std::variant<ConstantStep, UniformIntervalStep,
                               ExponentialStep, LogNormalStep, TwoPointStep>;

  static StepDistribution constant(double c) {
    detail::require_positive(c, "constant step");
    return StepDistribution(ConstantStep{c});
  }
  static StepDistribution uniform_interval(double lo, double hi) {
    detail::require_positive(lo, "uniform lower bound");
    if (!std::isfinite(hi) || hi <= lo)
      throw std::domain_error("uniform interval requires 0 < lo < hi");
    return StepDistribution(UniformIntervalStep{lo, hi});
  }
  static StepDistribution exponential(double rate) {
    detail::require_positive(rate, "exponential rate");
    return StepDistribution(ExponentialStep{rate});
  }
  static StepDistribution log_normal(double mu, double sigma) {
    if (!std::isfinite(mu))
      throw std::domain_error("lognormal mu must be finite");
    detail::require_positive(sigma, "lognormal sigma");
    return StepDistribution(LogNormalStep{mu, sigma});
  }
  static StepDistribution two_point(double v1, double v2, double p) {
    detail::require_positive(v1, "two-point value");
    detail::require_positive(v2, "two-point value");
    if (!(p > 0.0 && p < 1.0))
      throw std::domain_error("two-point mass must be in (0, 1)");
    return StepDistribution(TwoPointStep{v1, v2, p});
  }

  const Variant& variant() const noexcept { return value_; }

  friend bool operator==(const StepDistribution&,
                         const StepDistribution&) = default;

 private:
  explicit StepDistribution(Variant v) : value_(std::move(v)) {}
  Variant value_;
};

inline double quantile(const ConstantStep& d, double) noexcept {
  return d.value;
}
inline double quantile(const UniformIntervalStep& d, double u) noexcept {
  return d.lo + u * (d.hi - d.lo);
}
inline double quantile(const ExponentialStep& d, double u) noexcept {
  return -std::log1p(-u) / d.rate;
}
inline double quantile(const LogNormalStep& d, double u) {
  return std::exp(d.mu + d.sigma * normal_quantile(u));
}
inline double quantile(const TwoPointStep& d, double u) noexcept {
  // Right-continuous inverse CDF: the atom at the smaller value comes first.
  if (d.v1 <= d.v2) return u <= d.p ? d.v1 : d.v2;
  return u <= 1.0 - d.p ? d.v2 : d.v1;
}

/// Inverse CDF of the law: monotone nondecreasing in u, strictly positive.
inline double quantile(const StepDistribution& dist, double u) {
  if (!(u > 0.0 && u < 1.0))
    throw std::domain_error("quantile: u must be in (0, 1)");
  return std::visit([u](const auto& d) { return quantile(d, u); },
                    dist.variant());
}

/// One inverse-transform draw; consumes exactly one stream value.
inline double sample_length(const StepDistribution& dist,
                            RandomStream& stream) {
  return quantile(dist, stream.next_open_unit());
}

/// Uniform direction on [0, 2*pi), constructed as 2*pi * (u / 2^64) from a
/// 64-bit draw; the measure-zero rounding up to 2*pi wraps back to 0.
inline Angle sample_angle(RandomStream& stream) {
  return Angle(kTwoPi * (double(stream.next_u64()) * 0x1.0p-64));
}

namespace detail {

inline std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

inline double parse_double_field(std::string_view text, const char* what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw std::invalid_argument(std::string("invalid number in ") + what +
                                ": '" + std::string(text) + "'");
  return v;
}

inline std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace detail

/// Canonical text form, round-trips through parse_step_distribution.
inline std::string to_string(const StepDistribution& dist) {
  using detail::format_double;
  return std::visit(
      [](const auto& d) -> std::string {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ConstantStep>)
          return "constant:" + format_double(d.value);
        else if constexpr (std::is_same_v<T, UniformIntervalStep>)
          return "uniform:" + format_double(d.lo) + "," + format_double(d.hi);
        else if constexpr (std::is_same_v<T, ExponentialStep>)
          return "exp:" + format_double(d.rate);
        else if constexpr (std::is_same_v<T, LogNormalStep>)
          return "lognormal:" + format_double(d.mu) + "," +
                 format_double(d.sigma);
        else
          return "twopoint:" + format_double(d.v1) + "," +
                 format_double(d.v2) + "," + format_double(d.p);
      },
      dist.variant());
}

/// Parses the canonical text form; throws std::invalid_argument on unknown
/// names, wrong arity, malformed numbers, or parameter-domain violations.
inline StepDistribution parse_step_distribution(std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("distribution must look like name:params, got '" +
                                std::string(text) + "'");
  const std::string_view name = text.substr(0, colon);
  const auto params = detail::split(text.substr(colon + 1), ',');
  auto arg = [&](std::size_t i) {
    return detail::parse_double_field(params[i], "distribution parameter");
  };
  auto expect_arity = [&](std::size_t n) {
    if (params.size() != n)
      throw std::invalid_argument("distribution '" + std::string(name) +
                                  "' expects " + std::to_string(n) +
                                  " parameter(s)");
  };
  try {
    if (name == "constant") {
      expect_arity(1);
      return StepDistribution::constant(arg(0));
    }
    if (name == "uniform") {
      expect_arity(2);
      return StepDistribution::uniform_interval(arg(0), arg(1));
    }
    if (name == "exp") {
      expect_arity(1);
      return StepDistribution::exponential(arg(0));
    }
    if (name == "lognormal") {
      expect_arity(2);
      return StepDistribution::log_normal(arg(0), arg(1));
    }
    if (name == "twopoint") {
      expect_arity(3);
      return StepDistribution::two_point(arg(0), arg(1), arg(2));
    }
  } catch (const std::domain_error& e) {
    throw std::invalid_argument(std::string("bad distribution parameters: ") +
                                e.what());
  }
  throw std::invalid_argument("unknown distribution '" + std::string(name) +
                              "'");
}

}  // namespace randflight
