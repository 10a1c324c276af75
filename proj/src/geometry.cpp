#include "levelset/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "levelset/errors.hpp"

namespace levelset {

double sup_distance(const Point& x, const Point& y) {
  double m = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    m = std::max(m, std::abs(x[j] - y[j]));
  }
  return m;
}

DyadicCube::DyadicCube(int dim_, int depth_, std::vector<std::int64_t> index_)
    : dim(dim_), depth(depth_), index(std::move(index_)) {
  if (dim <= 0) throw std::invalid_argument("cube dim must be positive");
  if (depth < 0 || depth > kMaxDepth)
    throw std::invalid_argument("cube depth out of range");
  if (static_cast<int>(index.size()) != dim)
    throw std::invalid_argument("cube index size != dim");
  const std::int64_t limit = std::int64_t{1} << depth;
  for (std::int64_t k : index) {
    if (k < 0 || k >= limit)
      throw std::invalid_argument("cube index out of [0, 2^depth)");
  }
}

DyadicCube DyadicCube::unit(int dim) {
  return DyadicCube(dim, 0, std::vector<std::int64_t>(dim, 0));
}

double DyadicCube::side() const { return std::ldexp(1.0, -depth); }

Point DyadicCube::low_corner() const {
  Point p(dim);
  for (int j = 0; j < dim; ++j) p[j] = std::ldexp(double(index[j]), -depth);
  return p;
}

Point DyadicCube::center() const {
  Point p(dim);
  for (int j = 0; j < dim; ++j)
    p[j] = std::ldexp(double(index[j]) + 0.5, -depth);
  return p;
}

std::vector<Point> DyadicCube::vertices() const {
  const std::size_t n = std::size_t{1} << dim;
  std::vector<Point> out(n, Point(dim));
  for (std::size_t k = 0; k < n; ++k) {
    for (int j = 0; j < dim; ++j) {
      const std::int64_t bit = (k >> j) & 1;
      out[k][j] = std::ldexp(double(index[j] + bit), -depth);
    }
  }
  return out;
}

bool DyadicCube::contains(const Point& x, double slack) const {
  if (static_cast<int>(x.size()) != dim) return false;
  for (int j = 0; j < dim; ++j) {
    const double lo = std::ldexp(double(index[j]), -depth);
    const double hi = std::ldexp(double(index[j] + 1), -depth);
    if (x[j] < lo - slack || x[j] > hi + slack) return false;
  }
  return true;
}

bool cube_less(const DyadicCube& a, const DyadicCube& b) {
  if (a.depth != b.depth) return a.depth < b.depth;
  return a.index < b.index;
}

std::vector<DyadicCube> bisect(const DyadicCube& cube) {
  if (cube.depth >= kMaxDepth)
    throw DepthLimitExceeded("cannot bisect below depth 52");
  const std::size_t n = std::size_t{1} << cube.dim;
  std::vector<DyadicCube> children;
  children.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::int64_t> idx(cube.dim);
    for (int j = 0; j < cube.dim; ++j) {
      idx[j] = 2 * cube.index[j] + ((k >> j) & 1);
    }
    children.emplace_back(cube.dim, cube.depth + 1, std::move(idx));
  }
  return children;
}

CubeGeometry cube_geometry(const DyadicCube& cube) {
  return CubeGeometry{cube.center(), cube.vertices(), cube.side()};
}

int checkerboard_class(const DyadicCube& cube) {
  int cls = 0;
  for (int j = 0; j < cube.dim; ++j) {
    cls |= static_cast<int>(cube.index[j] & 1) << j;
  }
  return cls;
}

double cube_distance(const DyadicCube& a, const DyadicCube& b) {
  if (a.dim != b.dim || a.depth != b.depth)
    throw std::invalid_argument("cube_distance needs equal dim and depth");
  std::int64_t gap = 0;
  for (int j = 0; j < a.dim; ++j) {
    const std::int64_t d = std::abs(a.index[j] - b.index[j]);
    gap = std::max(gap, d > 0 ? d - 1 : 0);
  }
  return std::ldexp(double(gap), -a.depth);
}

PackingResult greedy_packing(const std::vector<Point>& points, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("packing scale must be > 0");
  PackingResult result;
  result.scale = r;
  for (const Point& p : points) {
    bool separated = true;
    for (const Point& w : result.witnesses) {
      if (sup_distance(p, w) <= r) {
        separated = false;
        break;
      }
    }
    if (separated) result.witnesses.push_back(p);
  }
  result.count = static_cast<long long>(result.witnesses.size());
  return result;
}

long long unit_cube_packing_bound(int d, double r) {
  if (d <= 0 || !(r > 0.0)) throw std::invalid_argument("need d >= 1, r > 0");
  const long long cells = static_cast<long long>(std::floor(1.0 / r)) + 1;
  __int128 out = 1;
  for (int j = 0; j < d; ++j) {
    out *= cells;
    if (out > std::numeric_limits<long long>::max())
      throw std::overflow_error("packing bound exceeds 64-bit range");
  }
  return static_cast<long long>(out);
}

std::string cube_to_record(const DyadicCube& cube) {
  std::ostringstream os;
  os << "depth:" << cube.depth << " idx:";
  for (int j = 0; j < cube.dim; ++j) {
    if (j) os << ',';
    os << cube.index[j];
  }
  return os.str();
}

DyadicCube cube_from_record(const std::string& record) {
  std::istringstream is(record);
  std::string depth_tok, idx_tok;
  if (!(is >> depth_tok >> idx_tok) || depth_tok.rfind("depth:", 0) != 0 ||
      idx_tok.rfind("idx:", 0) != 0)
    throw std::invalid_argument("bad cube record: " + record);
  const int depth = std::stoi(depth_tok.substr(6));
  std::vector<std::int64_t> index;
  std::stringstream idx_stream(idx_tok.substr(4));
  std::string field;
  while (std::getline(idx_stream, field, ',')) {
    index.push_back(std::stoll(field));
  }
  if (index.empty()) throw std::invalid_argument("bad cube record: " + record);
  const int dim = static_cast<int>(index.size());
  return DyadicCube(dim, depth, std::move(index));
}

}  // namespace levelset
