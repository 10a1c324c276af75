#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "levelset/approximators.hpp"
#include "levelset/blackbox.hpp"
#include "levelset/geometry.hpp"

namespace levelset {

struct StopRule {
  enum class Kind { TargetAccuracy, MaxDepth, MaxQueries };
  Kind kind = Kind::MaxDepth;
  double eps = 0.0;
  int depth = 0;
  long long queries = 0;

  static StopRule target_accuracy(double eps);
  static StopRule max_depth(int depth);
  static StopRule max_queries(long long queries);
};

struct BAConfig {
  double level = 0.0;        // a
  double tol_b = 1.0;        // b > 0
  double tol_beta = 1.0;     // beta > 0
  int queries_per_cube = 1;  // k
  Mode mode = Mode::LevelSet;
  StopRule stop = StopRule::max_depth(0);
  long long max_cubes = 1'000'000;

  void validate() const;  // throws std::invalid_argument
  double threshold(int iteration) const;  // b * 2^(-beta * iteration)
};

struct OutputRecord {
  DyadicCube cube;
  LocalApproximator approx;
};

// The published set S(i): the union over retained cubes of the in-cube points
// whose surrogate value sits within rho of the level (one-sided in
// Sublevel/Superlevel modes). Membership requires the point to lie in the
// record's closed cube.
class OutputSet {
 public:
  OutputSet() = default;
  OutputSet(int iteration, double level, double rho, Mode mode,
            std::vector<OutputRecord> records);

  bool contains(const Point& x) const;

  int iteration() const { return iteration_; }
  double level() const { return level_; }
  double rho() const { return rho_; }
  Mode mode() const { return mode_; }
  const std::vector<OutputRecord>& records() const { return records_; }

 private:
  bool record_matches(const OutputRecord& rec, const Point& x) const;

  int iteration_ = 0;
  double level_ = 0.0;
  double rho_ = 0.0;
  Mode mode_ = Mode::LevelSet;
  std::vector<OutputRecord> records_;
  // Cube lookup per depth keyed by flattened index; hand-written sets may mix
  // depths even though engine-produced ones never do.
  struct DepthMap {
    int depth;
    std::unordered_map<std::string, std::vector<std::size_t>> by_index;
  };
  std::vector<DepthMap> maps_;
};

struct IterationEntry {
  int iteration = 0;
  long long cubes_bisected = 0;   // |C'_i|
  long long cubes_retained = 0;   // |C_i|
  long long cumulative_queries = 0;
};

struct RunTrace {
  std::vector<IterationEntry> entries;
  // sets[j] is the set published during iteration j+1 (built from the cubes
  // retained after iteration j); sets has completed_iterations + 1 entries,
  // the last one being the set the next iteration would publish. Together
  // with the entries this reconstructs S_n for every query index n.
  std::vector<OutputSet> sets;
  int completed_iterations = 0;
  long long total_queries = 0;
  std::string stop_reason;

  const OutputSet& set_published_at(int iteration) const;
  // The set that answered query n (1-based): the one published by the
  // iteration during which that query was made.
  const OutputSet& set_for_query(long long n) const;
  const OutputSet& final_set() const { return sets.back(); }
};

// ceil((1/beta) * log2(2b / eps)), clamped at 0. After this many completed
// iterations every published point is within eps of the level.
long long iterations_needed(double eps, double b, double beta);

// Closed-form worst-case query budgets: Holder(c, gamma) costs at most
// 2 * 8^d * (2c)^(d/gamma) / eps^(d/gamma); grad-Holder(c1, gamma1) at most
// 2 * 16^d * (2 c1 d)^(d/(1+gamma1)) / eps^(d/(1+gamma1)). Zero when
// eps >= 2b for the class's b (c resp. c1*d). UnknownSmoothness otherwise.
double worst_case_budget(const SmoothnessTag& tag, int d, double eps);

// Incremental executor of the bisect-query-approximate-reject loop, stepped
// one query at a time so callers can drive it under an external protocol.
// Sequence: next_query() then observe(value), repeated. Iterations begin
// lazily at the first query they own; the published set is updated at that
// moment, so output_set() is always the set associated with the most recent
// query. Guards (max_cubes, depth) fire when the iteration begins.
class BaRunner {
 public:
  BaRunner(const BAConfig& config, const Strategy& strategy, int dim);

  Point next_query();
  void observe(double value);

  const OutputSet& output_set() const { return published_; }
  long long queries() const { return queries_; }
  int completed_iterations() const { return completed_; }
  bool mid_iteration() const { return active_; }
  // Cost in queries of the next full iteration: k * 2^d * |C|.
  long long next_iteration_cost() const;
  int next_iteration_depth() const { return completed_ + 1; }
  long long current_cube_count() const {
    return static_cast<long long>(cubes_.size());
  }
  long long last_bisected_count() const { return last_bisected_; }
  // The set the next iteration would publish, built from the current cubes.
  OutputSet make_next_output() const;

 private:
  void begin_iteration();
  void load_points(const DyadicCube& cube);
  void finish_cube();
  void finish_iteration();

  BAConfig config_;
  Strategy strategy_;
  int dim_;

  std::vector<OutputRecord> cubes_;  // C_i of the last completed iteration
  OutputSet published_;              // S(i) of the active/last iteration
  int completed_ = 0;
  long long queries_ = 0;
  long long last_bisected_ = 0;

  bool active_ = false;        // an iteration is in progress
  bool awaiting_value_ = false;
  std::vector<DyadicCube> children_;
  std::size_t child_idx_ = 0;
  std::vector<Point> points_;
  std::size_t point_idx_ = 0;
  std::vector<double> values_;
  std::vector<OutputRecord> retained_;
};

// Runs whole iterations until the stop rule is met and collects the trace.
// TargetAccuracy(eps) runs through iteration iterations_needed(eps, b, beta)
// + 1, so the final published set carries the eps guarantee. MaxQueries(n)
// stops before any iteration that would push the total past n. Oracle
// evaluation failures are rethrown as OracleFailure.
RunTrace run_ba(const BAConfig& config, const Oracle& oracle,
                const Strategy& strategy);

}  // namespace levelset
