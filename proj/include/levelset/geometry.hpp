#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace levelset {

using Point = std::vector<double>;

// Deepest refinement level at which cube corners k * 2^-depth are still exact
// binary fractions in double precision.
inline constexpr int kMaxDepth = 52;

double sup_distance(const Point& x, const Point& y);

// Axis-aligned hypercube [index_j * 2^-depth, (index_j + 1) * 2^-depth]^d,
// stored on the integer grid so corners never drift across refinements.
struct DyadicCube {
  int dim = 0;
  int depth = 0;
  std::vector<std::int64_t> index;

  DyadicCube() = default;
  DyadicCube(int dim, int depth, std::vector<std::int64_t> index);

  static DyadicCube unit(int dim);

  double side() const;
  Point low_corner() const;
  Point center() const;
  // All 2^d corners in binary-counter order: vertex k offsets coordinate j by
  // bit j of k. This order is part of the export format and must not change.
  std::vector<Point> vertices() const;
  bool contains(const Point& x, double slack = 0.0) const;

  bool operator==(const DyadicCube& other) const = default;
};

// Orders by (depth, index) lexicographically; dims must match.
bool cube_less(const DyadicCube& a, const DyadicCube& b);

struct CubeGeometry {
  Point center;
  std::vector<Point> vertices;
  double side = 0.0;
};

// The 2^d children at depth+1, in binary-counter order (child k takes the
// upper half of coordinate j iff bit j of k is set).
// Throws DepthLimitExceeded at depth == kMaxDepth.
std::vector<DyadicCube> bisect(const DyadicCube& cube);

CubeGeometry cube_geometry(const DyadicCube& cube);

// Parity class sum_j (index_j mod 2) * 2^j. Distinct same-class cubes at equal
// depth i have inter-set sup-distance >= 2^-i.
int checkerboard_class(const DyadicCube& cube);

// Exact inter-set sup-distance between two cubes of equal dim and depth,
// computed on integer indices: max_j max(0, |di_j| - 1) * 2^-depth.
double cube_distance(const DyadicCube& a, const DyadicCube& b);

struct PackingResult {
  long long count = 0;
  std::vector<Point> witnesses;
  double scale = 0.0;
};

// Scans the points in the given order and keeps each one iff its sup-distance
// to every kept point is > r. The result is a valid packing and is maximal:
// every input point lies within sup-distance r of some witness. Witnesses
// depend on input order; callers wanting reproducible witnesses pass points
// lexicographically sorted. A greedy maximal packing is a lower bound on the
// exact packing number; exact counts are only computed by brute force on
// small instances (see tests).
PackingResult greedy_packing(const std::vector<Point>& points, double r);

// (floor(1/r) + 1)^d, an upper bound on the r-packing number of [0,1]^d.
long long unit_cube_packing_bound(int d, double r);

// Text record "depth:i idx:k1,k2,...,kd" used by the output-set export.
std::string cube_to_record(const DyadicCube& cube);
DyadicCube cube_from_record(const std::string& record);

}  // namespace levelset
