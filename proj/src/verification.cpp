#include "levelset/verification.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "levelset/errors.hpp"

namespace levelset {

CheckVerdict check_eps_approximation(const OutputSet& S, const Oracle& oracle,
                                     double a, double eps, int grid_n,
                                     const CheckOptions& opts) {
  if (grid_n < 2) throw std::invalid_argument("grid_n must be >= 2");
  const int d = oracle.dim();
  CheckVerdict verdict;
  verdict.grid_resolution = 1.0 / double(grid_n - 1);

  if (!opts.skip_containment) {
    if (!oracle.has_sampler())
      throw NoLevelSetSampler("containment check needs an analytic sampler");
    for (const Point& x :
         oracle.level_set_sampler(a, opts.containment_samples)) {
      if (!S.contains(x)) {
        verdict.containment_failures.emplace_back(x, oracle.eval(x));
      }
    }
  }

  const double tol = eps + opts.excess_slack;
  std::vector<int> k(d, 0);
  while (true) {
    Point x(d);
    for (int j = 0; j < d; ++j) x[j] = double(k[j]) / double(grid_n - 1);
    if (S.contains(x)) {
      const double fx = oracle.eval(x);
      if (std::abs(fx - a) > tol) verdict.excess_failures.emplace_back(x, fx);
    }
    int j = d - 1;
    while (j >= 0 && k[j] == grid_n - 1) {
      k[j] = 0;
      --j;
    }
    if (j < 0) break;
    ++k[j];
  }

  if (opts.per_cube_samples > 0 &&
      static_cast<long long>(S.records().size()) <= opts.per_cube_limit) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (const OutputRecord& rec : S.records()) {
      const Point lo = rec.cube.low_corner();
      const double side = rec.cube.side();
      for (int s = 0; s < opts.per_cube_samples; ++s) {
        Point x(d);
        for (int j = 0; j < d; ++j) x[j] = lo[j] + side * unif(rng);
        if (S.contains(x)) {
          const double fx = oracle.eval(x);
          if (std::abs(fx - a) > tol)
            verdict.excess_failures.emplace_back(x, fx);
        }
      }
    }
  }

  verdict.passed =
      verdict.containment_failures.empty() && verdict.excess_failures.empty();
  return verdict;
}

SampleComplexityResult measure_sample_complexity(
    const BAConfig& config_template, const Oracle& oracle,
    const Strategy& strategy, double eps, int max_depth, int grid_n,
    const CheckOptions& opts) {
  BAConfig config = config_template;
  config.stop = StopRule::max_depth(max_depth);

  SampleComplexityResult result;
  result.trace = run_ba(config, oracle, strategy);
  const RunTrace& trace = result.trace;

  // sets[j] = S(j+1). Find the first iteration whose set and all later sets
  // pass; shrinking thresholds make the passing region a suffix, but that is
  // measured, not assumed.
  const int n_sets = static_cast<int>(trace.sets.size());
  std::vector<bool> pass(n_sets, false);
  for (int j = 0; j < n_sets; ++j) {
    pass[j] =
        check_eps_approximation(trace.sets[j], oracle, config.level, eps,
                                grid_n, opts)
            .passed;
  }
  int first = n_sets;
  for (int j = n_sets - 1; j >= 0 && pass[j]; --j) first = j;
  if (first == n_sets) {
    result.bounded = false;
    return result;
  }
  result.bounded = true;
  result.first_passing_iteration = first + 1;  // iteration publishing sets[j]
  // Queries performed before that iteration starts.
  result.queries =
      first == 0 ? 0 : trace.entries[static_cast<std::size_t>(first) - 1]
                           .cumulative_queries;
  return result;
}

RateFit fit_rate(const std::vector<std::pair<double, long long>>& samples) {
  if (samples.size() < 3)
    throw DegenerateInput("rate fit needs at least 3 samples");
  RateFit fit;
  for (const auto& [eps, n] : samples) {
    if (!(eps > 0.0)) throw DegenerateInput("eps must be > 0");
    if (n < 1) throw DegenerateInput("query counts must be >= 1");
    fit.points.emplace_back(std::log2(1.0 / eps), std::log2(double(n)));
  }
  for (std::size_t i = 0; i < fit.points.size(); ++i)
    for (std::size_t j = i + 1; j < fit.points.size(); ++j)
      if (fit.points[i].first == fit.points[j].first)
        throw DegenerateInput("eps values must be distinct");

  const double n = double(fit.points.size());
  double sx = 0, sy = 0;
  for (const auto& [x, y] : fit.points) {
    sx += x;
    sy += y;
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [x, y] : fit.points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (const auto& [x, y] : fit.points) {
    const double e = y - (fit.intercept + fit.slope * x);
    ss_res += e * e;
  }
  // A constant response is fit perfectly by the horizontal line.
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

RateFit estimate_nls_dimension(
    const Oracle& oracle, double a, const std::vector<double>& scales,
    int sample_grid_n, std::vector<std::pair<double, long long>>* counts_out) {
  if (scales.size() < 4)
    throw DegenerateInput("need at least 4 scales");
  for (double r : scales)
    if (!(r > 0.0) || !(r < 1.0))
      throw DegenerateInput("scales must lie in (0,1)");
  for (std::size_t i = 2; i < scales.size(); ++i) {
    const double q0 = scales[1] / scales[0];
    const double qi = scales[i] / scales[i - 1];
    if (std::abs(qi - q0) > 1e-9 * std::abs(q0))
      throw DegenerateInput("scales must be geometric");
  }
  if (sample_grid_n < 2) throw std::invalid_argument("sample_grid_n >= 2");

  const int d = oracle.dim();
  // One sweep over the grid (lexicographic), bucketing points by the largest
  // scale they qualify for; smaller scales reuse the same pass.
  std::vector<std::vector<Point>> qualifying(scales.size());
  std::vector<int> k(d, 0);
  while (true) {
    Point x(d);
    for (int j = 0; j < d; ++j) x[j] = double(k[j]) / double(sample_grid_n - 1);
    const double dev = std::abs(oracle.eval(x) - a);
    for (std::size_t s = 0; s < scales.size(); ++s) {
      if (dev <= scales[s]) qualifying[s].push_back(x);
    }
    int j = d - 1;
    while (j >= 0 && k[j] == sample_grid_n - 1) {
      k[j] = 0;
      --j;
    }
    if (j < 0) break;
    ++k[j];
  }

  std::vector<std::pair<double, long long>> counts;
  for (std::size_t s = 0; s < scales.size(); ++s) {
    if (qualifying[s].empty())
      throw EmptyInflatedSet("no grid point within scale " +
                             std::to_string(scales[s]));
    counts.emplace_back(scales[s],
                        greedy_packing(qualifying[s], scales[s]).count);
  }
  if (counts_out) *counts_out = counts;
  return fit_rate(counts);
}

}  // namespace levelset
