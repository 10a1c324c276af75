#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "levelset/geometry.hpp"

namespace levelset {

struct SmoothnessTag {
  enum class Class { Unknown, Holder, GradHolder };
  Class cls = Class::Unknown;
  double c = 0.0;         // multiplicative constant (c or c1), > 0 when tagged
  double exponent = 0.0;  // gamma or gamma1, in (0, 1] when tagged

  static SmoothnessTag holder(double c, double gamma);
  static SmoothnessTag grad_holder(double c1, double gamma1);
  bool tagged() const { return cls != Class::Unknown; }
};

// Black-box function on [0,1]^d. Every eval() is billed to the query counter,
// exactly one tick per call; eval is deterministic. Copies of an Oracle share
// a single counter. The analytic gradient and level-set sampler, when
// present, are side channels for verification and never count as queries.
class Oracle {
 public:
  using EvalFn = std::function<double(const Point&)>;
  using GradFn = std::function<Point(const Point&)>;
  // Emits `count` points x with |f(x) - level| <= 1e-12.
  using SamplerFn = std::function<std::vector<Point>(double level, int count)>;

  Oracle() = default;
  Oracle(int dim, EvalFn fn);

  double eval(const Point& x) const;
  long long query_count() const { return counter_->load(); }
  void reset_count() const { counter_->store(0); }
  int dim() const { return dim_; }

  bool has_sampler() const { return static_cast<bool>(level_set_sampler); }
  bool has_gradient() const { return static_cast<bool>(gradient); }

  SmoothnessTag smoothness;
  // A function can sit in both classes (affine is Holder and grad-Holder);
  // the certificate tests check every tag present.
  std::optional<SmoothnessTag> secondary_smoothness;
  bool convex = false;
  GradFn gradient;
  SamplerFn level_set_sampler;

 private:
  int dim_ = 0;
  EvalFn fn_;
  std::shared_ptr<std::atomic<long long>> counter_ =
      std::make_shared<std::atomic<long long>>(0);
};

// exp(-x^2 / (1 - x^2)) on (-1,1), zero outside; range [0,1], equals 1 only
// at x = 0. 3-Lipschitz.
double base_bump(double x);
double base_bump_derivative(double x);

// f(x) = alpha * prod_j base_bump((x_j - z_j) / eta). Requires eta in (0,1/4]
// and z on the grid Z = {0, 2*eta, ..., floor(1/(2*eta))*2*eta}^d; supports of
// distinct grid centers are disjoint and contained in the open sup-ball of
// radius eta. Throws InvalidGridPoint otherwise.
Oracle make_bump_function(double alpha, double eta, const Point& z,
                          SmoothnessTag tag = SmoothnessTag{});

// Number of points of the bump grid Z, (floor(1/(2*eta)) + 1)^d, and the grid
// itself in lexicographic order. The floor is snapped by 1e-9 so that grid
// counts at exact binary/decimal boundaries are not lost to the last ulp of
// eta.
long long bump_grid_size(double eta, int d);
std::vector<Point> bump_grid(double eta, int d);

// f0(x) = a - 1/4 + |x - o|_2^2 with o = (1/2, ..., 1/2). Convex,
// grad-Holder(2, 1); the level set {f0 = a} is the Euclidean sphere of radius
// 1/2 about o and is 1/4-proper. The level-set sampler is available for
// d >= 2 only: in d = 1 the sphere degenerates to the domain boundary {0, 1}.
Oracle make_quadratic_f0(double a, int d);

// f(x) = <coeffs, x> + offset. Holder(|coeffs|_1, 1) and grad-Holder with a
// caller-chosen constant (default 1; the zero gradient satisfies any
// positive one, and a nominal ~0 constant would degenerate rejection
// thresholds downstream).
Oracle make_affine(int d, const std::vector<double>& coeffs, double offset,
                   double grad_c1 = 1.0);

// f(x) = max(0, 2*eps - c * |x - z|_inf^gamma). Holder(c, gamma).
Oracle make_spike(double eps, double c, double gamma, const Point& z);

// f == value. Sampler emits lattice points when the requested level equals
// value (the level set is the whole cube).
Oracle make_constant(int d, double value);

}  // namespace levelset
