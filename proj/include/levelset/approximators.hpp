#pragma once

#include <functional>
#include <vector>

#include "levelset/geometry.hpp"

namespace levelset {

enum class Mode { LevelSet, Sublevel, Superlevel };

// Local surrogate attached to one cube: either the constant observed at the
// center, or the multilinear interpolant of the 2^d vertex values stored in
// binary-counter vertex order (bit j of the slot selects the upper face of
// coordinate j). The vertex order is part of the export format.
struct LocalApproximator {
  enum class Kind { Constant, Multilinear };
  Kind kind = Kind::Constant;
  DyadicCube cube;
  std::vector<double> values;

  static LocalApproximator constant(DyadicCube cube, double value);
  static LocalApproximator multilinear(DyadicCube cube,
                                       std::vector<double> vertex_values);

  double min_value() const;
  double max_value() const;
};

// Evaluates the surrogate at x. x must lie in the owning cube up to 1e-12
// slack (OutOfCube otherwise). The multilinear form is evaluated by d
// successive 1-D linear folds, each exact at the faces.
double approx_eval(const LocalApproximator& g, const Point& x);

// Exact decision of "exists x in the cube with the near-level predicate",
// from vertex values alone. LevelSet: true if some vertex value sits within
// rho of a; false if all sit strictly below a-rho or all strictly above
// a+rho; true otherwise (the values straddle the band and the interpolant is
// continuous on the connected cube, so it crosses it). Sublevel: min vertex
// value <= a+rho. Superlevel: max vertex value >= a-rho. Both approximator
// kinds attain their extrema at vertices, which makes the min/max tests
// exact. Ties resolve to true.
bool cube_near_level(const LocalApproximator& g, double a, double rho,
                     Mode mode);

// Query-point picker and surrogate builder used by the engine; one strategy
// instance is reused across all cubes and iterations. pick_points must return
// exactly k points inside the (closed) cube. tol_b / tol_beta are the
// canonical tolerance pairing for this strategy's accuracy contract;
// callers build the engine config from them. near_level, when set, overrides
// the exact vertex-based test (required for approximator kinds beyond the
// two shipped here).
struct Strategy {
  int k = 1;
  double tol_b = 1.0;
  double tol_beta = 1.0;
  std::function<std::vector<Point>(const DyadicCube&)> pick_points;
  std::function<LocalApproximator(const DyadicCube&,
                                  const std::vector<double>&)>
      build_approximator;
  std::function<bool(const LocalApproximator&, double, double, Mode)>
      near_level;
};

// Center query + constant surrogate; pairs with (b = c, beta = gamma, k = 1)
// and is (c, gamma)-accurate on (c, gamma)-Holder functions.
Strategy bah_strategy(double c, double gamma);

// Vertex queries + multilinear surrogate; pairs with
// (b = c1 * d, beta = 1 + gamma1, k = 2^d) and is (c1 d, 1 + gamma1)-accurate
// on (c1, gamma1)-grad-Holder functions.
Strategy bag_strategy(double c1, double gamma1, int d);

}  // namespace levelset
