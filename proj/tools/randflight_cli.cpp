// Command-line front door for the random-flight library: estimators,
// closed-form oracles, and the verification suites, with reports to stdout
// or a file.
//
// Exit codes: 0 all checks passed (or nothing asserted), 1 at least one
// statistical check failed, 2 usage/config/IO error.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "randflight/randflight.hpp"

namespace {

using namespace randflight;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOpts {
  std::string dist_text = "constant:1";
  std::uint64_t trials = 1'000'000;
  std::optional<std::uint64_t> seed;
  unsigned shards = default_shard_count();
  double level = 0.999;
  std::string format = "csv";
  std::string out = "-";
  std::string config_path;
};

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw UsageError("invalid integer for " + what + ": '" + text + "'");
  return v;
}

double parse_f64(const std::string& text, const std::string& what) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw UsageError("invalid number for " + what + ": '" + text + "'");
  return v;
}

// Key/value run configuration: one `key = value` per line, '#' comments.
// Keys mirror the report/flag names; unknown keys are rejected.
std::map<std::string, std::string> load_config(const std::string& path) {
  static const std::vector<std::string> kKnownKeys = {
      "dist", "m",      "n",     "radius", "trials", "seed",
      "shards", "level", "format", "out",    "s",      "sources"};
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(lineno) +
                       ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) ==
        kKnownKeys.end())
      throw UsageError(path + ":" + std::to_string(lineno) +
                       ": unknown config key '" + key + "'");
    kv[key] = value;
  }
  return kv;
}

// Applies config values to options the command line did not set.
class ConfigOverlay {
 public:
  ConfigOverlay(CLI::App* cmd, const std::string& path)
      : cmd_(cmd) {
    if (!path.empty()) kv_ = load_config(path);
  }

  template <class Fn>
  void apply(const std::string& key, const std::string& flag, Fn&& set) {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return;
    const auto* opt = cmd_->get_option_no_throw(flag);
    if (opt != nullptr && opt->count() > 0) return;  // explicit flag wins
    set(it->second);
  }

  bool has(const std::string& key) const { return kv_.count(key) > 0; }

 private:
  CLI::App* cmd_;
  std::map<std::string, std::string> kv_;
};

ReportFormat parse_format(const std::string& text) {
  if (text == "csv") return ReportFormat::csv;
  if (text == "jsonl") return ReportFormat::json_lines;
  throw UsageError("unsupported format '" + text + "' (expected csv|jsonl)");
}

int emit_report(const SuiteReport& report, const CommonOpts& o) {
  const std::string bytes = render_report(report, parse_format(o.format));
  if (o.out == "-") {
    std::cout.write(bytes.data(), std::streamsize(bytes.size()));
    std::cout.flush();
    if (!std::cout) {
      std::cerr << "error: failed writing report to stdout\n";
      return 2;
    }
  } else {
    std::ofstream file(o.out, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot open output file '" << o.out << "'\n";
      return 2;
    }
    file.write(bytes.data(), std::streamsize(bytes.size()));
    file.flush();
    if (!file) {
      std::cerr << "error: failed writing report to '" << o.out << "'\n";
      return 2;
    }
  }
  return report.all_passed() ? 0 : 1;
}

StreamSeed require_seed(const CommonOpts& o) {
  if (!o.seed)
    throw UsageError(
        "--seed is required (runs must be reproducible; no wall-clock "
        "default)");
  return StreamSeed{*o.seed, {}};
}

void add_common_flags(CLI::App* cmd, CommonOpts& o, bool with_dist = true) {
  if (with_dist)
    cmd->add_option("--dist", o.dist_text,
                    "step-length law, e.g. constant:1, uniform:0.5,1.5, "
                    "exp:1, lognormal:0,0.5, twopoint:1,3,0.25");
  cmd->add_option("--trials", o.trials, "Monte Carlo trials per check");
  cmd->add_option("--seed", o.seed, "root seed (required)");
  cmd->add_option("--shards", o.shards,
                  "independent trial blocks; never changes results");
  cmd->add_option("--level", o.level, "confidence level in (0,1)");
  cmd->add_option("--format", o.format, "report format: csv|jsonl");
  cmd->add_option("--out", o.out, "output path, '-' for stdout");
  cmd->add_option("--config", o.config_path,
                  "key=value run configuration; explicit flags override");
}

void overlay_common(ConfigOverlay& cfg, CommonOpts& o) {
  cfg.apply("dist", "--dist", [&](const std::string& v) { o.dist_text = v; });
  cfg.apply("trials", "--trials",
            [&](const std::string& v) { o.trials = parse_u64(v, "trials"); });
  cfg.apply("seed", "--seed",
            [&](const std::string& v) { o.seed = parse_u64(v, "seed"); });
  cfg.apply("shards", "--shards", [&](const std::string& v) {
    o.shards = unsigned(parse_u64(v, "shards"));
  });
  cfg.apply("level", "--level",
            [&](const std::string& v) { o.level = parse_f64(v, "level"); });
  cfg.apply("format", "--format",
            [&](const std::string& v) { o.format = v; });
  cfg.apply("out", "--out", [&](const std::string& v) { o.out = v; });
}

void validate_common(const CommonOpts& o) {
  parse_format(o.format);
  if (o.trials == 0) throw UsageError("--trials must be >= 1");
  if (o.shards == 0) throw UsageError("--shards must be >= 1");
  if (!(o.level > 0.0 && o.level < 1.0))
    throw UsageError("--level must be in (0, 1)");
}

// Splits a source triple on top-level commas (commas inside parentheses
// belong to distribution parameters).
std::vector<std::string> split_sources(const std::string& text) {
  std::vector<std::string> parts;
  std::string current;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      parts.push_back(current);
      current.clear();
    } else {
      current += ch;
    }
  }
  parts.push_back(current);
  return parts;
}

std::string format_probability(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

// ---------------------------------------------------------------- estimate

int run_estimate(const CommonOpts& o, std::optional<std::uint64_t> m,
                 std::optional<std::uint64_t> n,
                 std::optional<double> radius) {
  validate_common(o);
  const StreamSeed seed = require_seed(o);
  const StepDistribution dist = parse_step_distribution(o.dist_text);
  SuiteReport report;
  report.suite = "estimate";
  report.seed = seed;
  report.alpha_budget = 1.0 - o.level;

  if (m.has_value()) {
    if (!n.has_value())
      throw UsageError("estimate with --m also needs --n");
    if (radius.has_value())
      throw UsageError("--radius only applies to the one-walker estimate");
    const ComparisonSpec spec(*m, *n, dist);
    const auto est = estimate_farther_probability(spec, o.trials, seed,
                                                  o.shards, o.level);
    const std::string name =
        "farther m=" + std::to_string(*m) + " n=" + std::to_string(*n);
    CheckResult check =
        spec.theorem_applies()
            ? statistical_check(name, exact_farther_probability(*m, *n), est)
            : excluded_check(name, est,
                             "m+n <= 2: outside the theorem hypothesis");
    check.m = *m;
    check.n = *n;
    check.dist = to_string(dist);
    report.checks.push_back(std::move(check));
  } else if (n.has_value()) {
    const double r = radius.value_or(1.0);
    const WalkSpec spec{*n, dist};
    const auto est =
        estimate_return_probability(spec, r, o.trials, seed, o.shards,
                                    o.level);
    const std::string name = "return n=" + std::to_string(*n) +
                             " radius=" + format_probability(r);
    // The oracle covers unit-radius constant walks (Rayleigh, any scale)
    // and small constant walks via quadrature; anything else is estimated
    // without an assertion.
    std::optional<double> expected;
    if (const auto* c = std::get_if<ConstantStep>(&dist.variant())) {
      if (r == c->value && *n > 1)
        expected = exact_return_probability(*n);
      else if (*n >= 2 && *n <= 4) {
        const std::vector<double> lengths(*n, c->value);
        expected = quadrature_return_probability(*n, lengths, r);
      }
    }
    CheckResult check =
        expected.has_value()
            ? statistical_check(name, *expected, est)
            : excluded_check(name, est, "no oracle for this configuration");
    check.n = *n;
    check.dist = to_string(dist);
    report.checks.push_back(std::move(check));
  } else {
    throw UsageError("estimate needs --m/--n (two walkers) or --n [--radius]");
  }
  return emit_report(report, o);
}

// ------------------------------------------------------------------ suites

int run_rayleigh_cmd(const CommonOpts& o, std::vector<std::uint64_t> ns) {
  validate_common(o);
  if (ns.empty()) for (std::uint64_t n = 2; n <= 10; ++n) ns.push_back(n);
  const auto report = run_rayleigh_suite(ns, o.trials, require_seed(o),
                                         {o.level, o.shards});
  return emit_report(report, o);
}

int run_theorem_cmd(const CommonOpts& o, std::optional<std::uint64_t> m,
                    std::optional<std::uint64_t> n, bool dist_given) {
  validate_common(o);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  if (m.has_value() != n.has_value())
    throw UsageError("theorem needs both --m and --n, or neither");
  if (m.has_value()) {
    pairs.emplace_back(*m, *n);
  } else {
    for (std::uint64_t s = 3; s <= 8; ++s)
      for (std::uint64_t mm = 1; mm < s; ++mm) pairs.emplace_back(mm, s - mm);
  }
  std::vector<StepDistribution> dists;
  if (dist_given) {
    dists.push_back(parse_step_distribution(o.dist_text));
  } else {
    dists.push_back(StepDistribution::constant(1.0));
    dists.push_back(StepDistribution::uniform_interval(0.5, 1.5));
    dists.push_back(StepDistribution::exponential(1.0));
    dists.push_back(StepDistribution::log_normal(0.0, 0.5));
    dists.push_back(StepDistribution::two_point(1.0, 3.0, 0.25));
  }
  const auto report = run_theorem_suite(pairs, dists, o.trials,
                                        require_seed(o), {o.level, o.shards});
  return emit_report(report, o);
}

int run_lemma_cmd(const CommonOpts& o, const std::string& sources_text) {
  validate_common(o);
  std::vector<std::array<DistanceSource, 3>> triples;
  if (!sources_text.empty()) {
    const auto parts = split_sources(sources_text);
    if (parts.size() != 3)
      throw UsageError("--sources needs exactly three comma-separated "
                       "sources, e.g. draw(constant:1),draw(exp:1),"
                       "walk2(constant:1)");
    triples.push_back({parse_distance_source(parts[0]),
                       parse_distance_source(parts[1]),
                       parse_distance_source(parts[2])});
  } else {
    const auto unit = StepDistribution::constant(1.0);
    triples.push_back(
        {draw_source(unit), draw_source(unit), draw_source(unit)});
    triples.push_back({draw_source(StepDistribution::constant(5.0)),
                       draw_source(unit), draw_source(unit)});
    triples.push_back(
        {walk_source(2, unit), draw_source(StepDistribution::exponential(1.0)),
         draw_source(StepDistribution::uniform_interval(0.5, 1.5))});
  }
  const auto report = run_lemma_suite(triples, o.trials, require_seed(o),
                                      {o.level, o.shards});
  return emit_report(report, o);
}

int run_additivity_cmd(const CommonOpts& o, std::uint64_t s) {
  validate_common(o);
  const auto report = run_additivity_suite(
      s, parse_step_distribution(o.dist_text), o.trials, require_seed(o),
      {o.level, o.shards});
  return emit_report(report, o);
}

// ------------------------------------------------------------------ oracle

int run_oracle(std::optional<std::uint64_t> m, std::optional<std::uint64_t> n) {
  if (!n.has_value())
    throw UsageError("oracle needs --m/--n (two walkers) or --n (return)");
  const double p = m.has_value() ? exact_farther_probability(*m, *n)
                                 : exact_return_probability(*n);
  std::cout << format_probability(p) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"randflight: planar random-flight distance experiments"};
  app.require_subcommand(1);

  // pre-scan for --config so its values can back every flag default
  std::string config_path;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) config_path = argv[i + 1];
    if (arg.rfind("--config=", 0) == 0) config_path = arg.substr(9);
  }

  CommonOpts opts;
  std::optional<std::uint64_t> opt_m;
  std::optional<std::uint64_t> opt_n;
  std::optional<double> opt_radius;
  std::vector<std::uint64_t> rayleigh_ns;
  std::string sources_text;
  std::uint64_t additivity_s = 4;

  auto* estimate = app.add_subcommand(
      "estimate", "estimate one probability with a Wilson interval");
  add_common_flags(estimate, opts);
  estimate->add_option("--m", opt_m, "first walker's step count");
  estimate->add_option("--n", opt_n, "second walker's (or walk's) step count");
  estimate->add_option("--radius", opt_radius,
                       "return-probability radius (one-walker mode)");

  auto* rayleigh = app.add_subcommand(
      "rayleigh", "verify Pr(n-step unit walk < 1) = 1/(n+1)");
  add_common_flags(rayleigh, opts, /*with_dist=*/false);
  rayleigh->add_option("--n", rayleigh_ns, "step counts (default 2..10)")
      ->delimiter(',');

  auto* theorem = app.add_subcommand(
      "theorem", "verify Pr(D_m > D_n) = m/(m+n) over a sweep");
  add_common_flags(theorem, opts);
  theorem->add_option("--m", opt_m, "restrict to one pair: first walker");
  theorem->add_option("--n", opt_n, "restrict to one pair: second walker");

  auto* lemma = app.add_subcommand(
      "lemma", "verify the three dominance probabilities sum to 1");
  add_common_flags(lemma, opts, /*with_dist=*/false);
  lemma->add_option("--sources", sources_text,
                    "three sources, e.g. "
                    "draw(constant:1),draw(exp:1),walk2(constant:1)");

  auto* additivity = app.add_subcommand(
      "additivity", "verify p_i + p_j = p_{i+j} and complements for one s");
  add_common_flags(additivity, opts);
  additivity->add_option("--s", additivity_s, "total step count (> 2)");

  auto* oracle = app.add_subcommand(
      "oracle", "print the closed-form probability and exit");
  oracle->add_option("--m", opt_m, "first walker's step count");
  oracle->add_option("--n", opt_n, "second walker's (or walk's) step count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    ConfigOverlay cfg(active, config_path);
    if (active != oracle) {
      overlay_common(cfg, opts);
      cfg.apply("m", "--m", [&](const std::string& v) {
        opt_m = parse_u64(v, "m");
      });
      cfg.apply("n", "--n", [&](const std::string& v) {
        if (active == rayleigh) {
          rayleigh_ns.clear();
          for (const auto& part : split_sources(v))
            rayleigh_ns.push_back(parse_u64(part, "n"));
        } else {
          opt_n = parse_u64(v, "n");
        }
      });
      cfg.apply("radius", "--radius", [&](const std::string& v) {
        opt_radius = parse_f64(v, "radius");
      });
      cfg.apply("s", "--s", [&](const std::string& v) {
        additivity_s = parse_u64(v, "s");
      });
      cfg.apply("sources", "--sources",
                [&](const std::string& v) { sources_text = v; });
    }

    if (active == estimate) return run_estimate(opts, opt_m, opt_n, opt_radius);
    if (active == rayleigh) return run_rayleigh_cmd(opts, rayleigh_ns);
    if (active == theorem)
      return run_theorem_cmd(opts, opt_m, opt_n,
                             theorem->count("--dist") > 0 || cfg.has("dist"));
    if (active == lemma) return run_lemma_cmd(opts, sources_text);
    if (active == additivity) return run_additivity_cmd(opts, additivity_s);
    if (active == oracle) return run_oracle(opt_m, opt_n);
    throw UsageError("no subcommand selected");
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
