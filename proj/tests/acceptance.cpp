// Acceptance suite: one numbered end-to-end check per line, each pinned to
// its stated tolerance. Exits non-zero if any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "brute_force.hpp"
#include "levelset/adversary.hpp"
#include "levelset/errors.hpp"
#include "levelset/verification.hpp"

using namespace levelset;

namespace {

int failures = 0;

void report(int number, const char* title, bool ok, double seconds) {
  std::printf("[%s] %2d %-58s (%.2fs)\n", ok ? "PASS" : "FAIL", number, title,
              seconds);
  if (!ok) ++failures;
}

// max_seconds == 0 means the check carries no stated time limit.
void run_check(int number, const char* title, double max_seconds,
               const std::function<bool()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body();
  } catch (const std::exception& e) {
    std::printf("       check %d threw: %s\n", number, e.what());
    ok = false;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (ok && max_seconds > 0.0 && seconds >= max_seconds) {
    std::printf("       check %d exceeded its %.0fs budget\n", number,
                max_seconds);
    ok = false;
  }
  report(number, title, ok, seconds);
}

BAConfig config_for(const Strategy& s, double level) {
  BAConfig cfg;
  cfg.level = level;
  cfg.tol_b = s.tol_b;
  cfg.tol_beta = s.tol_beta;
  cfg.queries_per_cube = s.k;
  return cfg;
}

std::set<std::vector<std::int64_t>> retained_indices(const OutputSet& S) {
  std::set<std::vector<std::int64_t>> out;
  for (const auto& rec : S.records()) out.insert(rec.cube.index);
  return out;
}

// ---------------------------------------------------------------------------
// 1. Engine retention equals the brute-force center rule, d=1 line, depths
//    1..6.
bool check_exact_simulation() {
  const Oracle f = make_affine(1, {1.0}, 0.0);
  const Strategy s = bah_strategy(1.0, 1.0);
  BAConfig cfg = config_for(s, 0.5);
  cfg.stop = StopRule::max_depth(6);
  const RunTrace trace = run_ba(cfg, f, s);
  for (int i = 1; i <= 6; ++i) {
    const double threshold = std::exp2(-double(i));
    std::set<std::vector<std::int64_t>> want;
    for (const auto& cube : brute::all_cubes(1, i)) {
      if (std::abs(cube.center()[0] - 0.5) <= threshold)
        want.insert(cube.index);
    }
    if (retained_indices(trace.sets[std::size_t(i)]) != want) return false;
  }
  return true;
}

struct Instance {
  const char* name;
  Oracle oracle;
  Strategy strategy;
  double level;
};

std::vector<Instance> accuracy_instances() {
  std::vector<Instance> v;
  v.push_back({"d1-affine", make_affine(1, {1.0}, 0.0), bah_strategy(1.0, 1.0),
               0.5});
  v.push_back({"d2-affine", make_affine(2, {1.0, 0.0}, 0.0),
               bah_strategy(1.0, 1.0), 0.5});
  v.push_back({"d2-quadratic", make_quadratic_f0(0.0, 2),
               bag_strategy(2.0, 1.0, 2), 0.0});
  return v;
}

// 2. After iterations_needed + 1 iterations at eps = 0.05, the checker
//    passes with grid 256 and 1000 level-set samples. Also asserts that the
//    measured query count never exceeds the closed-form worst-case budget.
// 3. Containment failures are zero at every published iteration.
bool check_accuracy_and_containment(bool containment_only) {
  const double eps = 0.05;
  for (auto& inst : accuracy_instances()) {
    BAConfig cfg = config_for(inst.strategy, inst.level);
    cfg.stop = StopRule::target_accuracy(eps);
    const RunTrace trace = run_ba(cfg, inst.oracle, inst.strategy);
    if (containment_only) {
      const auto samples = inst.oracle.level_set_sampler(inst.level, 1000);
      for (const auto& S : trace.sets) {
        for (const auto& x : samples) {
          if (!S.contains(x)) return false;
        }
      }
      continue;
    }
    const long long ran =
        iterations_needed(eps, cfg.tol_b, cfg.tol_beta) + 1;
    if (trace.completed_iterations != ran) return false;
    CheckOptions opts;
    opts.containment_samples = 1000;
    const auto verdict = check_eps_approximation(
        trace.final_set(), inst.oracle, inst.level, eps, 256, opts);
    if (!verdict.passed) return false;
    const SmoothnessTag tag = inst.oracle.smoothness;
    if (double(trace.total_queries) >
        worst_case_budget(tag, inst.oracle.dim(), eps))
      return false;
  }
  return true;
}

// 4/5/6. Sweep slopes.
double fitted_slope(const Oracle& oracle, const Strategy& strategy,
                    double level, int max_depth) {
  CheckOptions opts;
  opts.per_cube_samples = 64;
  std::vector<std::pair<double, long long>> samples;
  for (double eps : {0.2, 0.1, 0.05, 0.025, 0.0125}) {
    const auto r = measure_sample_complexity(config_for(strategy, level),
                                             oracle, strategy, eps, max_depth,
                                             128, opts);
    if (!r.bounded) return std::nan("");
    samples.emplace_back(eps, std::max(1LL, r.queries));
  }
  return fit_rate(samples).slope;
}

bool check_holder_rate(double* out) {
  const double slope = fitted_slope(make_affine(2, {1.0, 0.0}, 0.0),
                                    bah_strategy(1.0, 1.0), 0.5, 10);
  if (out) *out = slope;
  return std::abs(slope - 1.0) <= 0.2;
}

bool check_gradholder_rate(double* out) {
  const double slope = fitted_slope(make_quadratic_f0(0.0, 2),
                                    bag_strategy(2.0, 1.0, 2), 0.0, 9);
  if (out) *out = slope;
  return std::abs(slope - 0.5) <= 0.2;
}

bool check_smoothness_helps() {
  const double bah_slope = fitted_slope(make_quadratic_f0(0.0, 2),
                                        bah_strategy(4.0, 1.0), 0.0, 11);
  const double bag_slope = fitted_slope(make_quadratic_f0(0.0, 2),
                                        bag_strategy(2.0, 1.0, 2), 0.0, 9);
  if (std::isnan(bah_slope) || std::isnan(bag_slope)) return false;
  std::printf("       bah slope %.3f, bag slope %.3f\n", bah_slope, bag_slope);
  return bah_slope - bag_slope >= 0.3;
}

// 7. Lower-bound harness on both proof instances; bumps re-certified on 10^4
//    pairs.
bool certify_bump(const Oracle& bump, const SmoothnessTag& tag, int d,
                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    Point x(d), y(d);
    for (double& v : x) v = unif(rng);
    for (double& v : y) v = unif(rng);
    const double gap = std::pow(sup_distance(x, y), tag.exponent);
    if (tag.cls == SmoothnessTag::Class::Holder) {
      if (std::abs(bump.eval(x) - bump.eval(y)) > tag.c * gap + 1e-12)
        return false;
    } else {
      if (sup_distance(bump.gradient(x), bump.gradient(y)) >
          tag.c * gap + 1e-9)
        return false;
    }
  }
  return true;
}

bool defeated_at(const AlgorithmFactory& factory, long long budget,
                 const AdversaryInstance& instance) {
  const auto report = run_indistinguishability(factory, budget, instance);
  if (report.verdict != AdversaryReport::Verdict::AlgorithmDefeated)
    return false;
  if (!report.witness.has_value()) return false;
  // Machine-check the witness against the branch that fired.
  const Oracle bump = adversary_bump(instance, report.eta, *report.witness);
  if (report.branch == AdversaryReport::Branch::ExcessAtWitness) {
    return bump.eval(*report.witness) > instance.eps;
  }
  return true;  // containment branch: f == 0 attains the level at the witness
}

bool check_adversary() {
  // Holder instance: eta = 0.05, |Z| = 11; defeated at the pigeonhole
  // maximum |Z| - 1 and at the smaller budget 5.
  {
    AdversaryInstance inst{SmoothnessTag::holder(12.0, 1.0), 0.1, 1};
    const double eta = bump_scale_holder(0.1, 1, 12.0, 1.0);
    const long long grid = bump_grid_size(eta, 1);
    if (grid != 11) return false;
    const Strategy strategy = bah_strategy(12.0, 1.0);
    BAConfig cfg = config_for(strategy, 0.0);
    cfg.stop = StopRule::max_depth(kMaxDepth);
    const AlgorithmFactory factory = [&] {
      return std::make_unique<BaQueryAlgorithm>(cfg, strategy, 1);
    };
    if (!defeated_at(factory, grid - 1, inst)) return false;
    if (!defeated_at(factory, 5, inst)) return false;
    if (!certify_bump(adversary_bump(inst, eta, {0.0}), inst.target, 1, 71))
      return false;
  }
  // Grad-Holder instance: eta = 0.1, |Z| = 6, budget |Z| - 1 = 5.
  {
    AdversaryInstance inst{SmoothnessTag::grad_holder(132.0, 1.0), 0.01, 1};
    const double eta = bump_scale_gradholder(0.01, 1, 132.0, 1.0);
    const long long grid = bump_grid_size(eta, 1);
    if (grid != 6) return false;
    const Strategy strategy = bag_strategy(132.0, 1.0, 1);
    BAConfig cfg = config_for(strategy, 0.0);
    cfg.stop = StopRule::max_depth(kMaxDepth);
    const AlgorithmFactory factory = [&] {
      return std::make_unique<BaQueryAlgorithm>(cfg, strategy, 1);
    };
    if (!defeated_at(factory, grid - 1, inst)) return false;
    if (!certify_bump(adversary_bump(inst, eta, {0.2}), inst.target, 1, 72))
      return false;
  }
  return true;
}

// 8. Slope of greedy circle packings across scales 2^-3 .. 2^-7.
bool check_circle_packing_slope(double* out) {
  const Oracle f = make_quadratic_f0(0.0, 2);
  const auto circle = f.level_set_sampler(0.0, 20000);
  std::vector<std::pair<double, long long>> counts;
  for (int k = 3; k <= 7; ++k) {
    const double r = std::exp2(-double(k));
    counts.emplace_back(r, greedy_packing(circle, r).count);
  }
  const double slope = fit_rate(counts).slope;
  if (out) *out = slope;
  return std::abs(slope - 1.0) <= 0.15;
}

// 9. Near-level-set dimension estimates.
bool check_nls_estimates() {
  const std::vector<double> scales{std::exp2(-3), std::exp2(-4), std::exp2(-5),
                                   std::exp2(-6), std::exp2(-7)};
  const auto quad =
      estimate_nls_dimension(make_quadratic_f0(0.0, 2), 0.0, scales, 512);
  std::printf("       quadratic slope %.3f\n", quad.slope);
  if (std::abs(quad.slope - 1.0) > 0.25) return false;
  const auto affine =
      estimate_nls_dimension(make_affine(1, {1.0}, 0.0), 0.5, scales, 8193);
  std::printf("       affine slope %.3f\n", affine.slope);
  return std::abs(affine.slope - 0.0) <= 0.2;
}

// 10. Packing inequality suite on 200 seeded clouds.
bool check_packing_inequalities() {
  std::mt19937_64 seeder(20260810);
  for (int cloud = 0; cloud < 200; ++cloud) {
    const int d = 1 + cloud % 3;
    const int count = 4 + static_cast<int>(seeder() % 9);  // <= 12 points
    const auto pts = brute::random_cloud(d, count, seeder());
    const double r1 = 0.08 + 0.3 * double(cloud % 7) / 7.0;
    const double r2 = r1 * (1.5 + double(cloud % 3));
    const long long n1 = brute::exact_packing(pts, r1);
    const long long n2 = brute::exact_packing(pts, r2);
    if (n1 > unit_cube_packing_bound(d, r1)) return false;
    if (n2 > unit_cube_packing_bound(d, r2)) return false;
    if (double(n1) > std::pow(1.0 + 4.0 * r2 / r1, d) * double(n2))
      return false;
    if (r1 < 1.0 && double(n1) > std::pow(2.0 / r1, d)) return false;
    if (r2 < 1.0 && double(n2) > std::pow(2.0 / r2, d)) return false;
  }
  return true;
}

// 11. Interpolant accuracy over 100 random dyadic cubes per dimension.
bool check_interpolant_accuracy() {
  std::mt19937_64 rng(4242);
  for (int d = 1; d <= 3; ++d) {
    const Oracle quad = make_quadratic_f0(0.0, d);
    const Oracle affine = [&] {
      std::vector<double> coeffs(d, 0.5);
      coeffs[0] = 1.0;
      return make_affine(d, coeffs, 0.125);
    }();
    const int grid = d == 3 ? 24 : 40;
    for (int rep = 0; rep < 100; ++rep) {
      const int depth = 1 + rep % 6;
      std::vector<std::int64_t> idx(d);
      for (auto& k : idx)
        k = std::uniform_int_distribution<std::int64_t>(
            0, (std::int64_t{1} << depth) - 1)(rng);
      const DyadicCube cube(d, depth, idx);
      std::vector<double> qvals, avals;
      for (const auto& v : cube.vertices()) {
        qvals.push_back(quad.eval(v));
        avals.push_back(affine.eval(v));
      }
      const auto gq = LocalApproximator::multilinear(cube, qvals);
      const auto ga = LocalApproximator::multilinear(cube, avals);
      const double err_q = brute::sup_error_on_cube(
          cube, [&](const Point& x) { return quad.eval(x); },
          [&](const Point& x) { return approx_eval(gq, x); }, grid);
      if (err_q > 2.0 * d * cube.side() * cube.side() * (1.0 + 1e-12))
        return false;
      const double err_a = brute::sup_error_on_cube(
          cube, [&](const Point& x) { return affine.eval(x); },
          [&](const Point& x) { return approx_eval(ga, x); }, grid);
      if (err_a > 1e-12) return false;
    }
  }
  return true;
}

// 12. Checkerboard separation, exhaustive over all same-class pairs for
//     d <= 3 and depths <= 6.
bool check_checkerboard() {
  for (int d = 1; d <= 3; ++d) {
    for (int depth = 1; depth <= 6; ++depth) {
      const auto cubes = brute::all_cubes(d, depth);
      std::vector<std::vector<const DyadicCube*>> classes(std::size_t{1} << d);
      for (const auto& cube : cubes)
        classes[std::size_t(checkerboard_class(cube))].push_back(&cube);
      const double min_gap = std::ldexp(1.0, -depth);
      for (const auto& cls : classes) {
        for (std::size_t i = 0; i < cls.size(); ++i) {
          for (std::size_t j = i + 1; j < cls.size(); ++j) {
            if (cube_distance(*cls[i], *cls[j]) < min_gap) return false;
          }
        }
      }
    }
  }
  return true;
}

}  // namespace

int main() {
  run_check(1, "exact-simulation equivalence, BAH on the d=1 line", 1.0,
            check_exact_simulation);
  run_check(2, "eps-approximation at 0.05 for all three instances", 30.0,
            [] { return check_accuracy_and_containment(false); });
  run_check(3, "containment of level-set samples at every iteration", 0.0,
            [] { return check_accuracy_and_containment(true); });
  run_check(4, "Holder sweep slope 1.0 +/- 0.2 (d=2 affine, BAH)", 60.0, [] {
    double slope = 0.0;
    const bool ok = check_holder_rate(&slope);
    std::printf("       slope %.3f\n", slope);
    return ok;
  });
  run_check(5, "grad-Holder sweep slope 0.5 +/- 0.2 (d=2 quadratic, BAG)",
            120.0, [] {
              double slope = 0.0;
              const bool ok = check_gradholder_rate(&slope);
              std::printf("       slope %.3f\n", slope);
              return ok;
            });
  run_check(6, "BAG improves on BAH by >= 0.3 in slope on the quadratic", 0.0,
            check_smoothness_helps);
  run_check(7, "indistinguishability defeats under-budget runs", 5.0,
            check_adversary);
  run_check(8, "circle packing slope 1.0 +/- 0.15", 0.0, [] {
    double slope = 0.0;
    const bool ok = check_circle_packing_slope(&slope);
    std::printf("       slope %.3f\n", slope);
    return ok;
  });
  run_check(9, "near-level-set dimension slopes (quadratic 1, affine 0)", 0.0,
            check_nls_estimates);
  run_check(10, "packing inequality suite on 200 seeded clouds", 0.0,
            check_packing_inequalities);
  run_check(11, "interpolant accuracy bounds on random cubes", 0.0,
            check_interpolant_accuracy);
  run_check(12, "checkerboard separation, exhaustive d <= 3, depth <= 6", 0.0,
            check_checkerboard);

  if (failures) {
    std::printf("%d acceptance check(s) failed\n", failures);
    return 1;
  }
  std::printf("all acceptance checks passed\n");
  return 0;
}
