#include "levelset/blackbox.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "levelset/errors.hpp"

namespace levelset {

namespace {

constexpr double kGridSnap = 1e-9;

long long snapped_floor(double x) {
  return static_cast<long long>(std::floor(x + kGridSnap));
}

void check_tag(const SmoothnessTag& t) {
  if (!(t.c > 0.0)) throw std::invalid_argument("smoothness constant must be > 0");
  if (!(t.exponent > 0.0) || t.exponent > 1.0)
    throw std::invalid_argument("smoothness exponent must lie in (0, 1]");
}

}  // namespace

SmoothnessTag SmoothnessTag::holder(double c, double gamma) {
  SmoothnessTag t{Class::Holder, c, gamma};
  check_tag(t);
  return t;
}

SmoothnessTag SmoothnessTag::grad_holder(double c1, double gamma1) {
  SmoothnessTag t{Class::GradHolder, c1, gamma1};
  check_tag(t);
  return t;
}

Oracle::Oracle(int dim, EvalFn fn) : dim_(dim), fn_(std::move(fn)) {
  if (dim_ <= 0) throw std::invalid_argument("oracle dim must be positive");
  if (!fn_) throw std::invalid_argument("oracle needs an eval function");
}

double Oracle::eval(const Point& x) const {
  counter_->fetch_add(1, std::memory_order_relaxed);
  return fn_(x);
}

double base_bump(double x) {
  if (x <= -1.0 || x >= 1.0) return 0.0;
  return std::exp(-x * x / (1.0 - x * x));
}

double base_bump_derivative(double x) {
  if (x <= -1.0 || x >= 1.0) return 0.0;
  const double u = 1.0 - x * x;
  return base_bump(x) * (-2.0 * x / (u * u));
}

long long bump_grid_size(double eta, int d) {
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be > 0");
  const long long per_axis = snapped_floor(1.0 / (2.0 * eta)) + 1;
  long long n = 1;
  for (int j = 0; j < d; ++j) n *= per_axis;
  return n;
}

std::vector<Point> bump_grid(double eta, int d) {
  const long long per_axis = snapped_floor(1.0 / (2.0 * eta)) + 1;
  std::vector<Point> grid;
  grid.reserve(static_cast<std::size_t>(bump_grid_size(eta, d)));
  Point p(d, 0.0);
  std::vector<long long> k(d, 0);
  while (true) {
    for (int j = 0; j < d; ++j) p[j] = 2.0 * eta * double(k[j]);
    grid.push_back(p);
    int j = d - 1;  // lexicographic: last coordinate fastest
    while (j >= 0 && k[j] == per_axis - 1) {
      k[j] = 0;
      --j;
    }
    if (j < 0) break;
    ++k[j];
  }
  return grid;
}

Oracle make_bump_function(double alpha, double eta, const Point& z,
                          SmoothnessTag tag) {
  const int d = static_cast<int>(z.size());
  if (d <= 0) throw std::invalid_argument("bump center must be non-empty");
  if (!(alpha > 0.0)) throw std::invalid_argument("bump amplitude must be > 0");
  if (!(eta > 0.0) || eta > 0.25 + kGridSnap)
    throw InvalidGridPoint("eta must lie in (0, 1/4]");
  const long long per_axis = snapped_floor(1.0 / (2.0 * eta));
  for (int j = 0; j < d; ++j) {
    const double steps = z[j] / (2.0 * eta);
    const double rounded = std::round(steps);
    if (std::abs(steps - rounded) > kGridSnap || rounded < -0.5 ||
        rounded > double(per_axis) + 0.5)
      throw InvalidGridPoint("bump center is not on the grid Z");
  }

  const Point center = z;
  Oracle oracle(d, [alpha, eta, center](const Point& x) {
    double v = alpha;
    for (std::size_t j = 0; j < center.size(); ++j) {
      v *= base_bump((x[j] - center[j]) / eta);
      if (v == 0.0) return 0.0;
    }
    return v;
  });
  oracle.smoothness = tag;
  oracle.gradient = [alpha, eta, center, d](const Point& x) {
    std::vector<double> factors(d);
    for (int j = 0; j < d; ++j) factors[j] = base_bump((x[j] - center[j]) / eta);
    Point g(d, 0.0);
    for (int i = 0; i < d; ++i) {
      double v = alpha / eta * base_bump_derivative((x[i] - center[i]) / eta);
      for (int j = 0; j < d; ++j)
        if (j != i) v *= factors[j];
      g[i] = v;
    }
    return g;
  };
  return oracle;
}

Oracle make_quadratic_f0(double a, int d) {
  if (d < 1) throw std::invalid_argument("quadratic needs d >= 1");
  Oracle oracle(d, [a, d](const Point& x) {
    double s = 0.0;
    for (int j = 0; j < d; ++j) {
      const double t = x[j] - 0.5;
      s += t * t;
    }
    return a - 0.25 + s;
  });
  oracle.smoothness = SmoothnessTag::grad_holder(2.0, 1.0);
  oracle.convex = true;
  oracle.gradient = [d](const Point& x) {
    Point g(d);
    for (int j = 0; j < d; ++j) g[j] = 2.0 * (x[j] - 0.5);
    return g;
  };
  if (d >= 2) {
    oracle.level_set_sampler = [a, d](double level, int count) {
      const double rsq = level - a + 0.25;
      if (!(rsq > 0.0) || rsq > 0.25 + 1e-12)
        throw std::invalid_argument("requested level set leaves the domain");
      const double radius = std::sqrt(rsq);
      std::vector<Point> pts;
      pts.reserve(count);
      if (d == 2) {
        for (int k = 0; k < count; ++k) {
          const double theta = 2.0 * M_PI * double(k) / double(count);
          pts.push_back({0.5 + radius * std::cos(theta),
                         0.5 + radius * std::sin(theta)});
        }
      } else {
        // Deterministic Gaussian directions, normalized onto the sphere.
        std::mt19937_64 rng(0x5be11eu ^ static_cast<std::uint64_t>(count));
        std::normal_distribution<double> normal(0.0, 1.0);
        while (static_cast<int>(pts.size()) < count) {
          Point dir(d);
          double norm = 0.0;
          for (int j = 0; j < d; ++j) {
            dir[j] = normal(rng);
            norm += dir[j] * dir[j];
          }
          norm = std::sqrt(norm);
          if (norm < 1e-9) continue;
          Point p(d);
          for (int j = 0; j < d; ++j) p[j] = 0.5 + radius * dir[j] / norm;
          pts.push_back(std::move(p));
        }
      }
      return pts;
    };
  }
  return oracle;
}

Oracle make_affine(int d, const std::vector<double>& coeffs, double offset,
                   double grad_c1) {
  if (d < 1 || static_cast<int>(coeffs.size()) != d)
    throw std::invalid_argument("affine coeffs size must equal d");
  double l1 = 0.0;
  for (double w : coeffs) l1 += std::abs(w);
  if (!(l1 > 0.0))
    throw std::invalid_argument("affine coeffs must not all be zero");

  Oracle oracle(d, [coeffs, offset](const Point& x) {
    double s = offset;
    for (std::size_t j = 0; j < coeffs.size(); ++j) s += coeffs[j] * x[j];
    return s;
  });
  oracle.smoothness = SmoothnessTag::holder(l1, 1.0);
  oracle.secondary_smoothness = SmoothnessTag::grad_holder(grad_c1, 1.0);
  oracle.convex = true;
  oracle.gradient = [coeffs](const Point&) { return coeffs; };
  oracle.level_set_sampler = [d, coeffs, offset](double level, int count) {
    // Solve for the coordinate with the largest coefficient on a grid over
    // the remaining ones; keep solutions inside [0,1]^d.
    int pivot = 0;
    for (int j = 1; j < d; ++j)
      if (std::abs(coeffs[j]) > std::abs(coeffs[pivot])) pivot = j;
    std::vector<Point> pts;
    pts.reserve(count);
    int per_axis = count;
    if (d > 1) {
      per_axis = static_cast<int>(
          std::ceil(std::pow(double(count), 1.0 / double(d - 1))));
    }
    for (int refine = 0; refine < 8 && static_cast<int>(pts.size()) < count;
         ++refine) {
      pts.clear();
      std::vector<int> k(d, 0);
      const int steps = std::max(2, per_axis << refine);
      while (true) {
        Point p(d, 0.0);
        double rest = 0.0;
        for (int j = 0; j < d; ++j) {
          if (j == pivot) continue;
          p[j] = double(k[j]) / double(steps - 1);
          rest += coeffs[j] * p[j];
        }
        const double solved = (level - offset - rest) / coeffs[pivot];
        if (solved >= -1e-12 && solved <= 1.0 + 1e-12) {
          p[pivot] = std::min(1.0, std::max(0.0, solved));
          pts.push_back(std::move(p));
          if (static_cast<int>(pts.size()) == count) break;
        }
        int j = d - 1;
        while (j >= 0 && (j == pivot || k[j] == steps - 1)) {
          if (j != pivot) k[j] = 0;
          --j;
        }
        if (j < 0) break;
        ++k[j];
      }
      if (d == 1) break;
    }
    if (pts.empty())
      throw std::invalid_argument("level set does not meet the domain");
    while (static_cast<int>(pts.size()) < count) pts.push_back(pts.front());
    return pts;
  };
  return oracle;
}

Oracle make_spike(double eps, double c, double gamma, const Point& z) {
  const int d = static_cast<int>(z.size());
  if (d <= 0) throw std::invalid_argument("spike center must be non-empty");
  if (!(eps > 0.0)) throw std::invalid_argument("spike eps must be > 0");
  const SmoothnessTag tag = SmoothnessTag::holder(c, gamma);
  const Point center = z;
  Oracle oracle(d, [eps, c, gamma, center](const Point& x) {
    const double v = 2.0 * eps - c * std::pow(sup_distance(x, center), gamma);
    return v > 0.0 ? v : 0.0;
  });
  oracle.smoothness = tag;
  return oracle;
}

Oracle make_constant(int d, double value) {
  if (d < 1) throw std::invalid_argument("constant needs d >= 1");
  Oracle oracle(d, [value](const Point&) { return value; });
  oracle.level_set_sampler = [d, value](double level, int count) {
    if (std::abs(level - value) > 1e-12)
      throw std::invalid_argument("constant function never attains this level");
    std::vector<Point> pts;
    pts.reserve(count);
    const int per_axis =
        std::max(2, static_cast<int>(std::ceil(std::pow(double(count), 1.0 / d))));
    std::vector<int> k(d, 0);
    while (static_cast<int>(pts.size()) < count) {
      Point p(d);
      for (int j = 0; j < d; ++j) p[j] = double(k[j]) / double(per_axis - 1);
      pts.push_back(std::move(p));
      int j = d - 1;
      while (j >= 0 && k[j] == per_axis - 1) {
        k[j] = 0;
        --j;
      }
      if (j < 0) break;
      ++k[j];
    }
    while (static_cast<int>(pts.size()) < count) pts.push_back(pts.front());
    return pts;
  };
  return oracle;
}

}  // namespace levelset
