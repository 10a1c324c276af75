#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "levelset/ba_core.hpp"

namespace levelset {

struct CheckOptions {
  int containment_samples = 1000;
  bool skip_containment = false;
  // Absorbs double-precision evaluation noise of f at grid points.
  double excess_slack = 1e-9;
  // Membership spot checks at random in-cube points, on top of the grid scan
  // (the grid cannot certify points off it); skipped when the set has more
  // records than per_cube_limit.
  int per_cube_samples = 1000;
  long long per_cube_limit = 10000;
  std::uint64_t seed = 1;
};

struct CheckVerdict {
  bool passed = false;
  std::vector<std::pair<Point, double>> containment_failures;  // (point, f(x))
  std::vector<std::pair<Point, double>> excess_failures;       // (point, f(x))
  double grid_resolution = 0.0;
};

// Checks both halves of the eps-approximation property:
// containment - every sampled level-set point must belong to S;
// excess - every point of S found on the grid (grid_n per axis) or by in-cube
// sampling must satisfy |f(x) - a| <= eps + slack.
// Throws NoLevelSetSampler when containment is requested without a sampler.
CheckVerdict check_eps_approximation(const OutputSet& S, const Oracle& oracle,
                                     double a, double eps, int grid_n,
                                     const CheckOptions& opts = {});

struct SampleComplexityResult {
  bool bounded = false;
  // Cumulative query count at the start of the first iteration from which
  // every published set passes the check; meaningful only when bounded.
  long long queries = 0;
  int first_passing_iteration = 0;
  RunTrace trace;
};

// Runs the engine to max_depth, checks every published set, and locates the
// first iteration whose suffix of sets all pass. Unbounded when the last set
// still fails. The stop rule of the config template is ignored.
SampleComplexityResult measure_sample_complexity(
    const BAConfig& config_template, const Oracle& oracle,
    const Strategy& strategy, double eps, int max_depth, int grid_n,
    const CheckOptions& opts = {});

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<std::pair<double, double>> points;  // (log2(1/eps), log2 n)
};

// Least squares of log2 n against log2(1/eps). Needs >= 3 samples with
// distinct eps and n >= 1 (DegenerateInput otherwise).
RateFit fit_rate(const std::vector<std::pair<double, long long>>& samples);

// For each scale r: collects the grid points with |f(x) - a| <= r, packs them
// greedily at scale r (lexicographic scan order), and fits log2 count against
// log2(1/r). The slope estimates the growth exponent of inflated-level-set
// packings at their own scale. Scales must be geometric, >= 4 values in
// (0,1). EmptyInflatedSet when no grid point qualifies at some scale.
RateFit estimate_nls_dimension(
    const Oracle& oracle, double a, const std::vector<double>& scales,
    int sample_grid_n,
    std::vector<std::pair<double, long long>>* counts_out = nullptr);

}  // namespace levelset
