#include "levelset/ba_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "levelset/errors.hpp"

namespace levelset {

namespace {

std::string index_key(const std::vector<std::int64_t>& idx) {
  std::string key;
  key.reserve(idx.size() * 8);
  for (std::int64_t k : idx) {
    key.append(reinterpret_cast<const char*>(&k), sizeof(k));
  }
  return key;
}

bool near_level_predicate(double value, double level, double rho, Mode mode) {
  switch (mode) {
    case Mode::LevelSet:
      return std::abs(value - level) <= rho;
    case Mode::Sublevel:
      return value - level <= rho;
    case Mode::Superlevel:
      return level - value <= rho;
  }
  return false;
}

}  // namespace

StopRule StopRule::target_accuracy(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("target accuracy must be > 0");
  StopRule s;
  s.kind = Kind::TargetAccuracy;
  s.eps = eps;
  return s;
}

StopRule StopRule::max_depth(int depth) {
  if (depth < 0 || depth > kMaxDepth)
    throw std::invalid_argument("max depth out of range");
  StopRule s;
  s.kind = Kind::MaxDepth;
  s.depth = depth;
  return s;
}

StopRule StopRule::max_queries(long long queries) {
  if (queries < 0) throw std::invalid_argument("query budget must be >= 0");
  StopRule s;
  s.kind = Kind::MaxQueries;
  s.queries = queries;
  return s;
}

void BAConfig::validate() const {
  if (!(tol_b > 0.0)) throw std::invalid_argument("tol_b must be > 0");
  if (!(tol_beta > 0.0)) throw std::invalid_argument("tol_beta must be > 0");
  if (queries_per_cube < 1)
    throw std::invalid_argument("queries_per_cube must be >= 1");
  if (max_cubes < 1) throw std::invalid_argument("max_cubes must be >= 1");
  if (stop.kind == StopRule::Kind::TargetAccuracy && !(stop.eps > 0.0))
    throw std::invalid_argument("target accuracy must be > 0");
}

double BAConfig::threshold(int iteration) const {
  // b * 2^(-beta * i) via exp2; the one documented source of last-ulp
  // sensitivity in the rejection rule (comparisons carry no extra slack and
  // ties keep the cube).
  return tol_b * std::exp2(-tol_beta * double(iteration));
}

OutputSet::OutputSet(int iteration, double level, double rho, Mode mode,
                     std::vector<OutputRecord> records)
    : iteration_(iteration),
      level_(level),
      rho_(rho),
      mode_(mode),
      records_(std::move(records)) {
  if (rho_ < 0.0) throw std::invalid_argument("rho must be >= 0");
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const DyadicCube& cube = records_[i].cube;
    DepthMap* map = nullptr;
    for (auto& m : maps_)
      if (m.depth == cube.depth) map = &m;
    if (!map) {
      maps_.push_back(DepthMap{cube.depth, {}});
      map = &maps_.back();
    }
    map->by_index[index_key(cube.index)].push_back(i);
  }
}

bool OutputSet::record_matches(const OutputRecord& rec, const Point& x) const {
  if (!rec.cube.contains(x)) return false;
  return near_level_predicate(approx_eval(rec.approx, x), level_, rho_, mode_);
}

bool OutputSet::contains(const Point& x) const {
  for (const auto& map : maps_) {
    const int depth = map.depth;
    const std::int64_t limit = std::int64_t{1} << depth;
    const int d = static_cast<int>(x.size());
    // Candidate cube indices per coordinate: floor(x * 2^depth), plus the
    // lower neighbour when x lands exactly on a face.
    std::vector<std::vector<std::int64_t>> cand(d);
    bool feasible = true;
    for (int j = 0; j < d && feasible; ++j) {
      const double t = std::ldexp(x[j], depth);
      const double f = std::floor(t);
      const std::int64_t k = static_cast<std::int64_t>(f);
      if (k >= 0 && k < limit) cand[j].push_back(k);
      if (t == f && k - 1 >= 0 && k - 1 < limit) cand[j].push_back(k - 1);
      feasible = !cand[j].empty();
    }
    if (!feasible) continue;
    std::vector<std::size_t> pick(d, 0);
    while (true) {
      std::vector<std::int64_t> idx(d);
      for (int j = 0; j < d; ++j) idx[j] = cand[j][pick[j]];
      auto it = map.by_index.find(index_key(idx));
      if (it != map.by_index.end()) {
        for (std::size_t r : it->second) {
          if (record_matches(records_[r], x)) return true;
        }
      }
      int j = d - 1;
      while (j >= 0 && pick[j] == cand[j].size() - 1) {
        pick[j] = 0;
        --j;
      }
      if (j < 0) break;
      ++pick[j];
    }
  }
  return false;
}

const OutputSet& RunTrace::set_published_at(int iteration) const {
  if (iteration < 1 || iteration > static_cast<int>(sets.size()))
    throw std::out_of_range("no set published at this iteration");
  return sets[static_cast<std::size_t>(iteration) - 1];
}

const OutputSet& RunTrace::set_for_query(long long n) const {
  if (n < 1 || n > total_queries)
    throw std::out_of_range("query index outside the recorded run");
  for (const IterationEntry& e : entries) {
    if (n <= e.cumulative_queries) return set_published_at(e.iteration);
  }
  throw std::out_of_range("query index outside the recorded run");
}

long long iterations_needed(double eps, double b, double beta) {
  if (!(eps > 0.0) || !(b > 0.0) || !(beta > 0.0))
    throw std::invalid_argument("need eps, b, beta > 0");
  const double raw = std::ceil(std::log2(2.0 * b / eps) / beta);
  if (raw <= 0.0) return 0;
  return static_cast<long long>(raw);
}

double worst_case_budget(const SmoothnessTag& tag, int d, double eps) {
  if (d < 1 || !(eps > 0.0)) throw std::invalid_argument("need d >= 1, eps > 0");
  switch (tag.cls) {
    case SmoothnessTag::Class::Holder: {
      const double c = tag.c, gamma = tag.exponent;
      if (eps >= 2.0 * c) return 0.0;
      return 2.0 * std::pow(8.0, d) * std::pow(2.0 * c / eps, double(d) / gamma);
    }
    case SmoothnessTag::Class::GradHolder: {
      const double b = tag.c * d, beta = 1.0 + tag.exponent;
      if (eps >= 2.0 * b) return 0.0;
      return 2.0 * std::pow(16.0, d) * std::pow(2.0 * b / eps, double(d) / beta);
    }
    case SmoothnessTag::Class::Unknown:
      break;
  }
  throw UnknownSmoothness("budget needs a Holder or grad-Holder tag");
}

BaRunner::BaRunner(const BAConfig& config, const Strategy& strategy, int dim)
    : config_(config), strategy_(strategy), dim_(dim) {
  config_.validate();
  if (dim_ < 1 || dim_ > 30)
    throw std::invalid_argument("dim must lie in [1, 30]");
  if (!strategy_.pick_points || !strategy_.build_approximator)
    throw std::invalid_argument("strategy is incomplete");
  if (strategy_.k != config_.queries_per_cube)
    throw std::invalid_argument("strategy k does not match config k");
  // C_0 = { [0,1]^d } with the constant surrogate pinned to the level, so the
  // first published set is the whole domain.
  DyadicCube root = DyadicCube::unit(dim_);
  cubes_.push_back(
      OutputRecord{root, LocalApproximator::constant(root, config_.level)});
  published_ = make_next_output();
}

long long BaRunner::next_iteration_cost() const {
  return static_cast<long long>(config_.queries_per_cube) *
         (std::int64_t{1} << dim_) * static_cast<long long>(cubes_.size());
}

OutputSet BaRunner::make_next_output() const {
  return OutputSet(completed_ + 1, config_.level, config_.threshold(completed_),
                   config_.mode, cubes_);
}

void BaRunner::begin_iteration() {
  if (cubes_.empty())
    throw std::logic_error("no cubes remain; the scheme has no next query");
  const long long child_count =
      (std::int64_t{1} << dim_) * static_cast<long long>(cubes_.size());
  if (child_count > config_.max_cubes)
    throw CubeBudgetExceeded("bisection would produce " +
                             std::to_string(child_count) + " cubes (limit " +
                             std::to_string(config_.max_cubes) + ")");
  published_ = make_next_output();
  children_.clear();
  children_.reserve(static_cast<std::size_t>(child_count));
  for (const OutputRecord& rec : cubes_) {
    for (DyadicCube& child : bisect(rec.cube)) {
      children_.push_back(std::move(child));
    }
  }
  last_bisected_ = child_count;
  retained_.clear();
  child_idx_ = 0;
  point_idx_ = 0;
  values_.clear();
  load_points(children_.front());
  active_ = true;
}

void BaRunner::load_points(const DyadicCube& cube) {
  points_ = strategy_.pick_points(cube);
  if (static_cast<int>(points_.size()) != config_.queries_per_cube)
    throw std::invalid_argument("strategy returned wrong number of points");
  for (const Point& x : points_) {
    if (!cube.contains(x))
      throw std::invalid_argument("strategy picked a point outside its cube");
  }
}

Point BaRunner::next_query() {
  if (awaiting_value_)
    throw std::logic_error("observe() must follow next_query()");
  if (!active_) begin_iteration();
  awaiting_value_ = true;
  return points_[point_idx_];
}

void BaRunner::observe(double value) {
  if (!awaiting_value_)
    throw std::logic_error("next_query() must precede observe()");
  awaiting_value_ = false;
  ++queries_;
  values_.push_back(value);
  ++point_idx_;
  if (point_idx_ == points_.size()) finish_cube();
}

void BaRunner::finish_cube() {
  const DyadicCube& cube = children_[child_idx_];
  LocalApproximator approx = strategy_.build_approximator(cube, values_);
  const double rho = config_.threshold(completed_ + 1);
  const bool keep = strategy_.near_level
                        ? strategy_.near_level(approx, config_.level, rho,
                                               config_.mode)
                        : cube_near_level(approx, config_.level, rho,
                                          config_.mode);
  if (keep) retained_.push_back(OutputRecord{cube, std::move(approx)});
  values_.clear();
  point_idx_ = 0;
  ++child_idx_;
  if (child_idx_ == children_.size()) {
    finish_iteration();
  } else {
    load_points(children_[child_idx_]);
  }
}

void BaRunner::finish_iteration() {
  std::sort(retained_.begin(), retained_.end(),
            [](const OutputRecord& a, const OutputRecord& b) {
              return cube_less(a.cube, b.cube);
            });
  cubes_ = std::move(retained_);
  retained_.clear();
  children_.clear();
  ++completed_;
  active_ = false;
}

RunTrace run_ba(const BAConfig& config, const Oracle& oracle,
                const Strategy& strategy) {
  config.validate();
  BaRunner runner(config, strategy, oracle.dim());

  long long iteration_limit = 0;
  switch (config.stop.kind) {
    case StopRule::Kind::TargetAccuracy:
      iteration_limit =
          iterations_needed(config.stop.eps, config.tol_b, config.tol_beta) + 1;
      break;
    case StopRule::Kind::MaxDepth:
      iteration_limit = config.stop.depth;
      break;
    case StopRule::Kind::MaxQueries:
      iteration_limit = -1;  // budget-driven
      break;
  }

  RunTrace trace;
  trace.sets.push_back(runner.make_next_output());
  trace.stop_reason = "stop criterion reached";
  while (true) {
    if (iteration_limit >= 0 && runner.completed_iterations() >= iteration_limit)
      break;
    if (runner.current_cube_count() == 0) {
      // Nothing straddles the level band any more; further iterations would
      // query nothing.
      trace.stop_reason = "active cube set is empty";
      break;
    }
    if (config.stop.kind == StopRule::Kind::MaxQueries &&
        runner.queries() + runner.next_iteration_cost() > config.stop.queries)
      break;
    const long long steps = runner.next_iteration_cost();
    for (long long s = 0; s < steps; ++s) {
      const Point x = runner.next_query();
      double value = 0.0;
      try {
        value = oracle.eval(x);
      } catch (const Error&) {
        throw;
      } catch (const std::exception& e) {
        throw OracleFailure(e.what());
      }
      runner.observe(value);
    }
    trace.entries.push_back(IterationEntry{
        runner.completed_iterations(), runner.last_bisected_count(),
        runner.current_cube_count(), runner.queries()});
    trace.sets.push_back(runner.make_next_output());
  }
  trace.completed_iterations = runner.completed_iterations();
  trace.total_queries = runner.queries();
  return trace;
}

}  // namespace levelset
