#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "levelset/ba_core.hpp"

namespace levelset {

// Any deterministic query scheme: alternate next_query()/observe(value);
// output_contains tests membership of the current output set S_n.
class QueryAlgorithm {
 public:
  virtual ~QueryAlgorithm() = default;
  virtual Point next_query() = 0;
  virtual void observe(double value) = 0;
  virtual bool output_contains(const Point& x) const = 0;
};

// Fresh instances must be byte-identical in behaviour; the harness replays
// the transcript on a second instance.
using AlgorithmFactory = std::function<std::unique_ptr<QueryAlgorithm>()>;

// Engine-backed scheme for the harness.
class BaQueryAlgorithm : public QueryAlgorithm {
 public:
  BaQueryAlgorithm(const BAConfig& config, const Strategy& strategy, int dim)
      : runner_(config, strategy, dim) {}
  Point next_query() override { return runner_.next_query(); }
  void observe(double value) override { runner_.observe(value); }
  bool output_contains(const Point& x) const override {
    return runner_.output_set().contains(x);
  }
  const OutputSet& output_set() const { return runner_.output_set(); }

 private:
  BaRunner runner_;
};

// The bump half-width eta = (6 eps d 2^(1-gamma) / c)^(1/gamma) that makes
// the amplitude-2eps bump (c, gamma)-Holder. AccuracyTooLarge when
// eps >= c / (3 d 2^gamma) or when the resulting eta exceeds 1/4 (the grid
// construction requires eta in (0, 1/4]).
double bump_scale_holder(double eps, int d, double c, double gamma);

// eta = (132 eps d 2^(1-gamma1) / c1)^(1/(1+gamma1)), valid for
// eps < c1 / (132 d 2^(3+gamma1)); AccuracyTooLarge otherwise.
double bump_scale_gradholder(double eps, int d, double c1, double gamma1);

struct AdversaryInstance {
  SmoothnessTag target;  // the class the constructed bump must certify
  double eps = 0.0;
  int dim = 0;
};

struct AdversaryReport {
  enum class Verdict { AlgorithmDefeated, BudgetSufficient };
  enum class Branch { None, ExcessAtWitness, ContainmentAtWitness };

  long long budget = 0;
  double eta = 0.0;
  long long grid_size = 0;  // |Z|
  Verdict verdict = Verdict::BudgetSufficient;
  Branch branch = Branch::None;
  std::optional<Point> witness;  // grid center z with no query in its ball
  double witness_value = 0.0;    // f_z at the witness (excess branch)

  std::string to_text() const;
};

// Pigeonhole harness: runs the algorithm against f == 0 (level 0) for
// exactly `budget` queries, finds a grid center z whose open sup-ball of
// radius eta received no query, replays the transcript against the bump
// f_z = f_{2eps, eta, z} asserting bitwise-identical queries and all-zero
// observations, then defeats the algorithm at z: either z belongs to S_n
// while f_z(z) = 2eps > eps (excess fails for f_z), or z does not belong to
// S_n while f(z) = 0 (containment fails for f == 0). BudgetSufficient
// without running when budget >= |Z|. Throws NondeterministicAlgorithm when
// the replayed transcript diverges and NoUnqueriedCell when the pigeonhole
// fails (a harness bug by construction).
AdversaryReport run_indistinguishability(const AlgorithmFactory& factory,
                                         long long budget,
                                         const AdversaryInstance& instance);

// The bump the harness plays for a given witness; exposed so tests can
// re-certify its smoothness.
Oracle adversary_bump(const AdversaryInstance& instance, double eta,
                      const Point& z);

}  // namespace levelset
