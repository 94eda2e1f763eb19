#pragma once

#include <Eigen/Core>

namespace serre {

/// Uniform-knot cardinal B-spline of order r (degree r-1), support [0,r].
/// Returns the k-th derivative at x; k must satisfy 0 <= k <= r-1.
double cardinal_bspline(int r, double x, int k = 0);

/// The N-dimensional space of 1-periodic splines of order r on the uniform
/// mesh x_i = i/N of [0,1]: piecewise polynomials of degree r-1 with C^{r-2}
/// smoothness across knots.
struct SplineSpace {
  int r = 0;       // spline order (degree r-1)
  int N = 0;       // number of cells = dimension
  double h = 0.0;  // meshlength 1/N

  bool operator==(const SplineSpace&) const = default;
};

/// build_space rejects r < 2 and meshes violating N > 4(r-1).
SplineSpace build_space(int r, int N);

/// Element of the space: coefficient sequence over the periodic basis
/// B_j(x) = M_r(x/h - j), j = 0..N-1, indices wrapped mod N.
struct SplineFn {
  SplineSpace space;
  Eigen::VectorXd coeffs;

  SplineFn() = default;
  SplineFn(const SplineSpace& s, Eigen::VectorXd c);
};

SplineFn zero_fn(const SplineSpace& space);
SplineFn constant_fn(const SplineSpace& space, double value);

/// d^k f / dx^k at x (1-periodic in x). Throws std::invalid_argument for
/// k >= r: the piecewise polynomial carries no such derivative and a silent
/// zero would mask misuse of low orders.
double eval(const SplineFn& f, double x, int k = 0);

struct SplineNorms {
  double l2 = 0.0;
  double h1 = 0.0;
  double linf = 0.0;
  double w1inf = 0.0;
};

/// L2/H1 by exact per-cell Gauss quadrature; Linf/W1inf by sampling
/// samples_per_cell points per cell plus all knots.
SplineNorms norms(const SplineFn& f, int samples_per_cell = 20);

double l2_norm(const SplineFn& f);
double h1_norm(const SplineFn& f);

}  // namespace serre
