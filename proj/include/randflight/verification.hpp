#pragma once
// Statistical verification suites.
//
// Each suite turns a distance-law identity into pass/fail checks backed by
// Wilson intervals, with every expected value supplied by the oracles —
// never hard-coded at the call site.  Reports are deterministic for a fixed
// (config, seed) and render to CSV or JSON lines with a stable field order:
// suite,check,m,n,dist,trials,seed,expected,p_hat,ci_low,ci_high,level,
// ties,passed.

#include <array>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "randflight/monte_carlo.hpp"
#include "randflight/oracles.hpp"

namespace randflight {

enum class CheckKind { statistical, exact, excluded };
enum class ReportFormat { csv, json_lines };

/// One report row.  Statistical checks pass when the expected value lies in
/// the confidence interval; exact checks when |p_hat - expected| <= tol;
/// excluded entries document estimates outside a theorem's hypothesis and
/// never assert anything.
struct CheckResult {
  std::string name;
  CheckKind kind = CheckKind::statistical;
  std::optional<std::uint64_t> m;
  std::optional<std::uint64_t> n;
  std::string dist;
  std::optional<std::uint64_t> trials;
  std::optional<double> expected;
  std::optional<double> p_hat;
  std::optional<double> ci_low;
  std::optional<double> ci_high;
  std::optional<double> level;
  std::optional<std::uint64_t> ties;
  std::optional<bool> passed;
  std::string detail;
  std::vector<ProportionEstimate> estimates;  // underlying per-term data
};

inline CheckResult statistical_check(std::string name, double expected,
                                     const ProportionEstimate& est) {
  CheckResult r;
  r.name = std::move(name);
  r.kind = CheckKind::statistical;
  r.trials = est.trials;
  r.expected = expected;
  r.p_hat = est.p_hat;
  r.ci_low = est.ci_low;
  r.ci_high = est.ci_high;
  r.level = est.level;
  r.ties = est.ties;
  r.passed = expected >= est.ci_low && expected <= est.ci_high;
  r.estimates = {est};
  return r;
}

/// Signed combination sum_i coef_i * p_hat_i tested against `expected` with
/// the conservative interval value +/- sum_i |coef_i| * half_width_i.
inline CheckResult combination_check(std::string name, double expected,
                                     std::span<const ProportionEstimate> terms,
                                     std::span<const double> coefs) {
  if (terms.empty() || terms.size() != coefs.size())
    throw std::invalid_argument("combination_check: terms/coefs mismatch");
  double value = 0.0;
  double half = 0.0;
  std::uint64_t ties = 0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    value += coefs[i] * terms[i].p_hat;
    half += std::abs(coefs[i]) * terms[i].half_width();
    ties += terms[i].ties;
  }
  CheckResult r;
  r.name = std::move(name);
  r.kind = CheckKind::statistical;
  r.trials = terms[0].trials;
  r.expected = expected;
  r.p_hat = value;
  r.ci_low = value - half;
  r.ci_high = value + half;
  r.level = terms[0].level;
  r.ties = ties;
  r.passed = expected >= *r.ci_low && expected <= *r.ci_high;
  r.estimates.assign(terms.begin(), terms.end());
  return r;
}

inline CheckResult exact_check(std::string name, double expected,
                               double value, double tol) {
  CheckResult r;
  r.name = std::move(name);
  r.kind = CheckKind::exact;
  r.expected = expected;
  r.p_hat = value;
  r.passed = std::abs(value - expected) <= tol;
  return r;
}

/// Documented exclusion: the estimate ran, but no identity applies, so the
/// row carries no expected value and no verdict.
inline CheckResult excluded_check(std::string name,
                                  const ProportionEstimate& est,
                                  std::string note) {
  CheckResult r;
  r.name = std::move(name);
  r.kind = CheckKind::excluded;
  r.trials = est.trials;
  r.p_hat = est.p_hat;
  r.ci_low = est.ci_low;
  r.ci_high = est.ci_high;
  r.level = est.level;
  r.ties = est.ties;
  r.detail = std::move(note);
  r.estimates = {est};
  return r;
}

struct SuiteReport {
  std::string suite;
  StreamSeed seed;
  double alpha_budget = 0.0;  // union-bound false-failure mass of the suite
  std::vector<CheckResult> checks;

  std::size_t num_passed() const {
    std::size_t k = 0;
    for (const auto& c : checks) k += c.passed.has_value() && *c.passed;
    return k;
  }
  std::size_t num_failed() const {
    std::size_t k = 0;
    for (const auto& c : checks) k += c.passed.has_value() && !*c.passed;
    return k;
  }
  std::size_t num_excluded() const {
    std::size_t k = 0;
    for (const auto& c : checks) k += !c.passed.has_value();
    return k;
  }
  bool all_passed() const { return num_failed() == 0; }
};

struct SuiteOptions {
  double level = 0.999;
  unsigned shards = default_shard_count();
};

namespace detail {

inline constexpr std::uint64_t kRayleighSuiteKey = 1;
inline constexpr std::uint64_t kTheoremSuiteKey = 2;
inline constexpr std::uint64_t kLemmaSuiteKey = 3;
inline constexpr std::uint64_t kAdditivitySuiteKey = 4;

}  // namespace detail

/// Rayleigh reproduction: for each n, Pr(n-step unit walk < 1) against the
/// oracle 1/(n+1).  Every n must satisfy the hypothesis n > 1.
inline SuiteReport run_rayleigh_suite(std::span<const std::uint64_t> n_values,
                                      std::uint64_t trials, StreamSeed seed,
                                      SuiteOptions opts = {}) {
  for (std::uint64_t n : n_values)
    if (n <= 1)
      throw std::invalid_argument("run_rayleigh_suite: requires every n > 1");
  SuiteReport report;
  report.suite = "rayleigh";
  report.seed = seed;
  report.alpha_budget = double(n_values.size()) * (1.0 - opts.level);
  const StepDistribution unit = StepDistribution::constant(1.0);
  std::uint64_t idx = 0;
  for (std::uint64_t n : n_values) {
    const auto est = estimate_return_probability(
        WalkSpec{n, unit}, 1.0, trials,
        seed.child(detail::kRayleighSuiteKey).child(idx++), opts.shards,
        opts.level);
    auto check = statistical_check("rayleigh n=" + std::to_string(n),
                                   exact_return_probability(n), est);
    check.n = n;
    check.dist = to_string(unit);
    report.checks.push_back(std::move(check));
  }
  return report;
}

/// Two-walker sweep: one check per ((m, n), dist) against m/(m+n).  Every
/// pair must satisfy the hypothesis m + n > 2.
inline SuiteReport run_theorem_suite(
    std::span<const std::pair<std::uint64_t, std::uint64_t>> pairs,
    std::span<const StepDistribution> dists, std::uint64_t trials,
    StreamSeed seed, SuiteOptions opts = {}) {
  if (dists.empty())
    throw std::invalid_argument("run_theorem_suite: no distributions given");
  for (const auto& [m, n] : pairs)
    if (m + n <= 2)
      throw std::invalid_argument(
          "run_theorem_suite: hypothesis m + n > 2 violated");
  SuiteReport report;
  report.suite = "theorem";
  report.seed = seed;
  report.alpha_budget =
      double(pairs.size() * dists.size()) * (1.0 - opts.level);
  std::uint64_t idx = 0;
  for (const auto& [m, n] : pairs) {
    for (const auto& dist : dists) {
      const auto est = estimate_farther_probability(
          ComparisonSpec(m, n, dist), trials,
          seed.child(detail::kTheoremSuiteKey).child(idx++), opts.shards,
          opts.level);
      auto check = statistical_check(
          "farther m=" + std::to_string(m) + " n=" + std::to_string(n),
          exact_farther_probability(m, n), est);
      check.m = m;
      check.n = n;
      check.dist = to_string(dist);
      report.checks.push_back(std::move(check));
    }
  }
  return report;
}

/// Triangle identity: for each source triple (A, B, C) the three dominance
/// probabilities are estimated from independent substreams and their sum is
/// tested against 1 with conservatively added intervals.
inline SuiteReport run_lemma_suite(
    std::span<const std::array<DistanceSource, 3>> triples,
    std::uint64_t trials, StreamSeed seed, SuiteOptions opts = {}) {
  SuiteReport report;
  report.suite = "lemma";
  report.seed = seed;
  report.alpha_budget = double(3 * triples.size()) * (1.0 - opts.level);
  std::uint64_t idx = 0;
  for (const auto& triple : triples) {
    const StreamSeed check_seed =
        seed.child(detail::kLemmaSuiteKey).child(idx);
    std::array<ProportionEstimate, 3> terms = {
        [&] {
          std::array<DistanceSource, 2> rest{triple[1], triple[2]};
          return estimate_dominance_probability(triple[0], rest, trials,
                                                check_seed.child(0),
                                                opts.shards, opts.level);
        }(),
        [&] {
          std::array<DistanceSource, 2> rest{triple[2], triple[0]};
          return estimate_dominance_probability(triple[1], rest, trials,
                                                check_seed.child(1),
                                                opts.shards, opts.level);
        }(),
        [&] {
          std::array<DistanceSource, 2> rest{triple[0], triple[1]};
          return estimate_dominance_probability(triple[2], rest, trials,
                                                check_seed.child(2),
                                                opts.shards, opts.level);
        }()};
    const std::array<double, 3> coefs{1.0, 1.0, 1.0};
    auto check = combination_check("lemma sum " + std::to_string(idx), 1.0,
                                   terms, coefs);
    check.dist = to_string(triple[0]) + "|" + to_string(triple[1]) + "|" +
                 to_string(triple[2]);
    report.checks.push_back(std::move(check));
    ++idx;
  }
  return report;
}

/// Proof identities for one total step count s: estimates
/// p_i = Pr(D_i > D_{s-i}) for i = 0..s, then checks the complement rows
/// p_i + p_{s-i} ~ 1, additivity rows p_i + p_j ~ p_{i+j}, and linearity
/// rows p_i ~ i/s.
inline SuiteReport run_additivity_suite(std::uint64_t s,
                                        const StepDistribution& dist,
                                        std::uint64_t trials, StreamSeed seed,
                                        SuiteOptions opts = {}) {
  if (s <= 2)
    throw std::invalid_argument("run_additivity_suite: requires s > 2");
  SuiteReport report;
  report.suite = "additivity";
  report.seed = seed;
  report.alpha_budget = double(s + 1) * (1.0 - opts.level);

  std::vector<ProportionEstimate> p;
  p.reserve(s + 1);
  for (std::uint64_t i = 0; i <= s; ++i)
    p.push_back(estimate_farther_probability(
        ComparisonSpec(i, s - i, dist), trials,
        seed.child(detail::kAdditivitySuiteKey).child(i), opts.shards,
        opts.level));

  const std::string dist_text = to_string(dist);
  auto tag = [](std::uint64_t i) { return "p" + std::to_string(i); };

  for (std::uint64_t i = 0; i <= s / 2; ++i) {
    const std::array<ProportionEstimate, 2> terms{p[i], p[s - i]};
    const std::array<double, 2> coefs{1.0, 1.0};
    auto check = combination_check(
        "complement " + tag(i) + "+" + tag(s - i), 1.0, terms, coefs);
    check.m = i;
    check.n = s - i;
    check.dist = dist_text;
    report.checks.push_back(std::move(check));
  }
  for (std::uint64_t i = 1; i <= s; ++i) {
    for (std::uint64_t j = i; i + j <= s; ++j) {
      const std::array<ProportionEstimate, 3> terms{p[i], p[j], p[i + j]};
      const std::array<double, 3> coefs{1.0, 1.0, -1.0};
      auto check = combination_check(
          "additivity " + tag(i) + "+" + tag(j) + "-" + tag(i + j), 0.0,
          terms, coefs);
      check.dist = dist_text;
      report.checks.push_back(std::move(check));
    }
  }
  for (std::uint64_t i = 0; i <= s; ++i) {
    auto check = statistical_check("linearity " + tag(i),
                                   exact_farther_probability(i, s - i), p[i]);
    check.m = i;
    check.n = s - i;
    check.dist = dist_text;
    report.checks.push_back(std::move(check));
  }
  return report;
}

namespace detail {

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

template <class T, class Fmt>
std::string opt_field(const std::optional<T>& v, Fmt&& fmt) {
  return v ? fmt(*v) : std::string();
}

}  // namespace detail

/// Serializes a report; stable column/field order, 17-significant-digit
/// doubles (lossless round trip).
inline std::string render_report(const SuiteReport& report,
                                 ReportFormat format) {
  auto u64 = [](std::uint64_t v) { return std::to_string(v); };
  if (format == ReportFormat::csv) {
    std::string out =
        "suite,check,m,n,dist,trials,seed,expected,p_hat,ci_low,ci_high,"
        "level,ties,passed\n";
    for (const auto& c : report.checks) {
      out += detail::csv_field(report.suite) + ',';
      out += detail::csv_field(c.name) + ',';
      out += detail::opt_field(c.m, u64) + ',';
      out += detail::opt_field(c.n, u64) + ',';
      out += detail::csv_field(c.dist) + ',';
      out += detail::opt_field(c.trials, u64) + ',';
      out += u64(report.seed.root) + ',';
      out += detail::opt_field(c.expected, detail::format_g17) + ',';
      out += detail::opt_field(c.p_hat, detail::format_g17) + ',';
      out += detail::opt_field(c.ci_low, detail::format_g17) + ',';
      out += detail::opt_field(c.ci_high, detail::format_g17) + ',';
      out += detail::opt_field(c.level, detail::format_g17) + ',';
      out += detail::opt_field(c.ties, u64) + ',';
      out += c.passed ? (*c.passed ? "true" : "false") : "excluded";
      out += '\n';
    }
    return out;
  }

  std::string out;
  for (const auto& c : report.checks) {
    nlohmann::ordered_json j;
    j["suite"] = report.suite;
    j["check"] = c.name;
    j["m"] = c.m ? nlohmann::json(*c.m) : nlohmann::json(nullptr);
    j["n"] = c.n ? nlohmann::json(*c.n) : nlohmann::json(nullptr);
    j["dist"] = c.dist;
    j["trials"] =
        c.trials ? nlohmann::json(*c.trials) : nlohmann::json(nullptr);
    j["seed"] = report.seed.root;
    j["expected"] =
        c.expected ? nlohmann::json(*c.expected) : nlohmann::json(nullptr);
    j["p_hat"] = c.p_hat ? nlohmann::json(*c.p_hat) : nlohmann::json(nullptr);
    j["ci_low"] =
        c.ci_low ? nlohmann::json(*c.ci_low) : nlohmann::json(nullptr);
    j["ci_high"] =
        c.ci_high ? nlohmann::json(*c.ci_high) : nlohmann::json(nullptr);
    j["level"] = c.level ? nlohmann::json(*c.level) : nlohmann::json(nullptr);
    j["ties"] = c.ties ? nlohmann::json(*c.ties) : nlohmann::json(nullptr);
    j["passed"] =
        c.passed ? nlohmann::json(*c.passed) : nlohmann::json(nullptr);
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace randflight
