#include "levelset/approximators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "levelset/errors.hpp"

namespace levelset {

LocalApproximator LocalApproximator::constant(DyadicCube cube, double value) {
  LocalApproximator g;
  g.kind = Kind::Constant;
  g.cube = std::move(cube);
  g.values = {value};
  return g;
}

LocalApproximator LocalApproximator::multilinear(
    DyadicCube cube, std::vector<double> vertex_values) {
  if (vertex_values.size() != (std::size_t{1} << cube.dim))
    throw std::invalid_argument("multilinear needs 2^d vertex values");
  LocalApproximator g;
  g.kind = Kind::Multilinear;
  g.cube = std::move(cube);
  g.values = std::move(vertex_values);
  return g;
}

double LocalApproximator::min_value() const {
  return *std::min_element(values.begin(), values.end());
}

double LocalApproximator::max_value() const {
  return *std::max_element(values.begin(), values.end());
}

double approx_eval(const LocalApproximator& g, const Point& x) {
  if (!g.cube.contains(x, 1e-12))
    throw OutOfCube("evaluation point outside the owning cube");
  if (g.kind == LocalApproximator::Kind::Constant) return g.values[0];

  const int d = g.cube.dim;
  std::vector<double> work = g.values;
  // Fold out one coordinate at a time (lowest vertex bit first); slot pairs
  // (2m, 2m+1) hold the low/high faces of the coordinate being folded.
  for (int j = 0; j < d; ++j) {
    double t = std::ldexp(x[j], g.cube.depth) - double(g.cube.index[j]);
    t = std::min(1.0, std::max(0.0, t));
    const std::size_t half = work.size() / 2;
    for (std::size_t m = 0; m < half; ++m) {
      work[m] = (1.0 - t) * work[2 * m] + t * work[2 * m + 1];
    }
    work.resize(half);
  }
  return work[0];
}

bool cube_near_level(const LocalApproximator& g, double a, double rho,
                     Mode mode) {
  if (rho < 0.0) throw std::invalid_argument("rho must be >= 0");
  switch (mode) {
    case Mode::Sublevel:
      return g.min_value() <= a + rho;
    case Mode::Superlevel:
      return g.max_value() >= a - rho;
    case Mode::LevelSet:
      break;
  }
  bool below = false, above = false;
  for (double v : g.values) {
    if (std::abs(v - a) <= rho) return true;
    (v < a ? below : above) = true;
  }
  return below && above;
}

Strategy bah_strategy(double c, double gamma) {
  if (!(c > 0.0) || !(gamma > 0.0) || gamma > 1.0)
    throw std::invalid_argument("need c > 0 and gamma in (0, 1]");
  Strategy s;
  s.k = 1;
  s.tol_b = c;
  s.tol_beta = gamma;
  s.pick_points = [](const DyadicCube& cube) {
    return std::vector<Point>{cube.center()};
  };
  s.build_approximator = [](const DyadicCube& cube,
                            const std::vector<double>& values) {
    return LocalApproximator::constant(cube, values.at(0));
  };
  return s;
}

Strategy bag_strategy(double c1, double gamma1, int d) {
  if (!(c1 > 0.0) || !(gamma1 > 0.0) || gamma1 > 1.0 || d < 1)
    throw std::invalid_argument("need c1 > 0, gamma1 in (0, 1], d >= 1");
  Strategy s;
  s.k = 1 << d;
  s.tol_b = c1 * d;
  s.tol_beta = 1.0 + gamma1;
  s.pick_points = [](const DyadicCube& cube) { return cube.vertices(); };
  s.build_approximator = [](const DyadicCube& cube,
                            const std::vector<double>& values) {
    return LocalApproximator::multilinear(cube, values);
  };
  return s;
}

}  // namespace levelset
