// Command-line front end: single runs, accuracy sweeps, verification passes,
// adversary sessions, near-level-set dimension estimation, and greedy packing
// of point files. Exit codes: 0 success / expected outcome, 1 unexpected
// result, 2 configuration error, 3 runtime error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "levelset/adversary.hpp"
#include "levelset/errors.hpp"
#include "levelset/experiment.hpp"
#include "levelset/verification.hpp"

namespace {

using namespace levelset;

struct CliOptions {
  std::string config_path;
  std::string out_dir = ".";
  int grid_override = 0;
  long long seed_override = -1;
  bool dry_run = false;
};

ExperimentConfig load_config(const CliOptions& cli) {
  KeyValueConfig raw = KeyValueConfig::parse_file(cli.config_path);
  if (cli.grid_override > 0)
    raw.set("grid_n", std::to_string(cli.grid_override));
  if (cli.seed_override >= 0)
    raw.set("seed", std::to_string(cli.seed_override));
  return ExperimentConfig::resolve(raw);
}

void print_resolved(const ExperimentConfig& cfg) {
  for (const auto& [key, value] : cfg.raw.entries()) {
    std::cout << key << " = " << value << "\n";
  }
}

std::string out_path(const CliOptions& cli, const std::string& name) {
  std::filesystem::create_directories(cli.out_dir);
  return (std::filesystem::path(cli.out_dir) / name).string();
}

std::string format_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

int cmd_run(const CliOptions& cli) {
  const ExperimentConfig cfg = load_config(cli);
  if (cli.dry_run) {
    print_resolved(cfg);
    return 0;
  }
  const Oracle oracle = cfg.build_oracle();
  const Strategy strategy = cfg.build_strategy();
  const RunTrace trace = run_ba(cfg.build_ba_config(), oracle, strategy);

  {
    std::ofstream os(out_path(cli, "trace.csv"));
    write_trace_csv(os, trace);
  }
  {
    std::ofstream os(out_path(cli, "output_set.txt"));
    write_output_set(os, trace.final_set());
  }
  std::cout << "iterations: " << trace.completed_iterations << "\n"
            << "queries: " << trace.total_queries << "\n"
            << "final_cubes: " << trace.final_set().records().size() << "\n";
  return 0;
}

int cmd_sweep(const CliOptions& cli) {
  const ExperimentConfig cfg = load_config(cli);
  if (cli.dry_run) {
    print_resolved(cfg);
    return 0;
  }
  if (!cfg.sweep_eps || cfg.sweep_eps->size() < 3)
    throw ConfigError("sweep needs sweep.start/factor/count with count >= 3");

  const Oracle oracle = cfg.build_oracle();
  const Strategy strategy = cfg.build_strategy();
  const BAConfig ba = cfg.build_ba_config();
  const CheckOptions opts = cfg.build_check_options();

  std::ofstream os(out_path(cli, "sweep.csv"));
  os << "epsilon,queries,iterations,passed\n";
  std::vector<std::pair<double, long long>> samples;
  for (double eps : *cfg.sweep_eps) {
    const SampleComplexityResult r = measure_sample_complexity(
        ba, oracle, strategy, eps, cfg.sweep_max_depth, cfg.grid_n, opts);
    os << format_g(eps) << ',' << r.queries << ',' << r.first_passing_iteration
       << ',' << (r.bounded ? 1 : 0) << '\n';
    if (r.bounded) samples.emplace_back(eps, std::max(1LL, r.queries));
  }
  if (samples.size() < 3) {
    std::cerr << "too few bounded sweep points to fit a rate\n";
    return 1;
  }
  const RateFit fit = fit_rate(samples);
  std::cout << "slope: " << format_g(fit.slope) << "\n"
            << "r_squared: " << format_g(fit.r_squared) << "\n";
  if (cfg.raw.has("sweep.expect_slope")) {
    const double expect = cfg.raw.get_double("sweep.expect_slope");
    const double tol = cfg.raw.get_double("sweep.tol", 0.2);
    if (std::abs(fit.slope - expect) > tol) {
      std::cerr << "slope " << fit.slope << " outside " << expect << " +/- "
                << tol << "\n";
      return 1;
    }
  }
  return 0;
}

int cmd_verify(const CliOptions& cli) {
  const ExperimentConfig cfg = load_config(cli);
  if (cli.dry_run) {
    print_resolved(cfg);
    return 0;
  }
  const std::string input = cfg.raw.get_string("verify.input");
  std::ifstream in(input);
  if (!in) throw ConfigError("cannot open output-set file: " + input);
  const OutputSet S = read_output_set(in, cfg.level, cfg.mode);
  const Oracle oracle = cfg.build_oracle();
  const double eps = cfg.raw.get_double("verify.eps");
  const CheckVerdict verdict = check_eps_approximation(
      S, oracle, cfg.level, eps, cfg.grid_n, cfg.build_check_options());
  std::cout << "containment_failures: " << verdict.containment_failures.size()
            << "\n"
            << "excess_failures: " << verdict.excess_failures.size() << "\n"
            << "passed: " << (verdict.passed ? "true" : "false") << "\n";
  return verdict.passed ? 0 : 1;
}

int cmd_adversary(const CliOptions& cli) {
  const ExperimentConfig cfg = load_config(cli);
  if (cli.dry_run) {
    print_resolved(cfg);
    return 0;
  }
  AdversaryInstance instance;
  instance.dim = static_cast<int>(cfg.raw.get_int("adversary.d", cfg.dim));
  instance.eps = cfg.raw.get_double("adversary.eps");
  const std::string cls = cfg.raw.get_string("adversary.class");
  if (cls == "holder") {
    instance.target = SmoothnessTag::holder(cfg.raw.get_double("adversary.c"),
                                            cfg.raw.get_double("adversary.gamma", 1.0));
  } else if (cls == "gradholder") {
    instance.target =
        SmoothnessTag::grad_holder(cfg.raw.get_double("adversary.c1"),
                                   cfg.raw.get_double("adversary.gamma1", 1.0));
  } else {
    throw ConfigError("adversary.class must be holder|gradholder");
  }

  ExperimentConfig algo_cfg = cfg;
  algo_cfg.dim = instance.dim;
  algo_cfg.level = 0.0;
  algo_cfg.stop = StopRule::max_depth(kMaxDepth);
  const Strategy strategy = algo_cfg.build_strategy();
  const BAConfig ba = algo_cfg.build_ba_config();
  const AlgorithmFactory factory = [&]() {
    return std::make_unique<BaQueryAlgorithm>(ba, strategy, instance.dim);
  };

  double eta = 0.0;
  if (instance.target.cls == SmoothnessTag::Class::Holder) {
    eta = bump_scale_holder(instance.eps, instance.dim, instance.target.c,
                            instance.target.exponent);
  } else {
    eta = bump_scale_gradholder(instance.eps, instance.dim, instance.target.c,
                                instance.target.exponent);
  }
  const long long budget =
      cfg.raw.get_int("adversary.budget", bump_grid_size(eta, instance.dim) - 1);

  const AdversaryReport report =
      run_indistinguishability(factory, budget, instance);
  std::cout << report.to_text();
  const std::string expect = cfg.raw.get_string("adversary.expect", "defeated");
  const bool defeated =
      report.verdict == AdversaryReport::Verdict::AlgorithmDefeated;
  return defeated == (expect == "defeated") ? 0 : 1;
}

int cmd_nls(const CliOptions& cli) {
  const ExperimentConfig cfg = load_config(cli);
  if (cli.dry_run) {
    print_resolved(cfg);
    return 0;
  }
  const Oracle oracle = cfg.build_oracle();
  std::vector<double> scales;
  if (cfg.raw.has("nls.scales")) {
    scales = cfg.raw.get_list("nls.scales");
  } else {
    const double start = cfg.raw.get_double("nls.start", 0.125);
    const double factor = cfg.raw.get_double("nls.factor", 0.5);
    const long long count = cfg.raw.get_int("nls.count", 5);
    double r = start;
    for (long long i = 0; i < count; ++i, r *= factor) scales.push_back(r);
  }
  const int grid = static_cast<int>(cfg.raw.get_int("nls.grid_n", 512));
  std::vector<std::pair<double, long long>> counts;
  const RateFit fit =
      estimate_nls_dimension(oracle, cfg.level, scales, grid, &counts);
  {
    std::ofstream os(out_path(cli, "nls.csv"));
    os << "scale,packing_count\n";
    for (const auto& [r, n] : counts) os << format_g(r) << ',' << n << '\n';
  }
  std::cout << "slope: " << format_g(fit.slope) << "\n"
            << "r_squared: " << format_g(fit.r_squared) << "\n";
  if (cfg.raw.has("nls.expect_slope")) {
    const double expect = cfg.raw.get_double("nls.expect_slope");
    const double tol = cfg.raw.get_double("nls.tol", 0.25);
    if (std::abs(fit.slope - expect) > tol) {
      std::cerr << "slope " << fit.slope << " outside " << expect << " +/- "
                << tol << "\n";
      return 1;
    }
  }
  return 0;
}

int cmd_pack(const CliOptions& cli) {
  const ExperimentConfig cfg = load_config(cli);
  if (cli.dry_run) {
    print_resolved(cfg);
    return 0;
  }
  const std::string input = cfg.raw.get_string("pack.input");
  const double r = cfg.raw.get_double("pack.r");
  std::ifstream in(input);
  if (!in) throw ConfigError("cannot open points file: " + input);
  std::vector<Point> points;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    Point p;
    double v;
    while (ls >> v) p.push_back(v);
    if (!p.empty()) points.push_back(std::move(p));
  }
  const PackingResult result = greedy_packing(points, r);
  std::cout << "count: " << result.count << "\n";
  std::ofstream os(out_path(cli, "packing.txt"));
  for (const Point& w : result.witnesses) {
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (j) os << ' ';
      os << format_g(w[j]);
    }
    os << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential level-set approximation toolkit"};
  app.require_subcommand(1);

  CliOptions cli;
  app.add_option("--config", cli.config_path, "experiment config file")
      ->required();
  app.add_option("--out", cli.out_dir, "output directory");
  app.add_option("--grid", cli.grid_override, "override grid_n");
  app.add_option("--seed", cli.seed_override, "override seed");
  app.add_flag("--dry-run", cli.dry_run, "print the resolved config and exit");

  auto* run = app.add_subcommand("run", "single engine run");
  auto* sweep = app.add_subcommand("sweep", "accuracy sweep with rate fit");
  auto* verify = app.add_subcommand("verify", "check an output-set file");
  auto* adversary =
      app.add_subcommand("adversary", "indistinguishability session");
  auto* nls = app.add_subcommand("nls", "near-level-set dimension estimate");
  auto* pack = app.add_subcommand("pack", "greedy packing of a points file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  }

  try {
    if (run->parsed()) return cmd_run(cli);
    if (sweep->parsed()) return cmd_sweep(cli);
    if (verify->parsed()) return cmd_verify(cli);
    if (adversary->parsed()) return cmd_adversary(cli);
    if (nls->parsed()) return cmd_nls(cli);
    if (pack->parsed()) return cmd_pack(cli);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ConfigError: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
  return 2;
}
