#include "serre/spline.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "serre/quadrature.hpp"

namespace serre {

double cardinal_bspline(int r, double x, int k) {
  if (r < 1) throw std::invalid_argument("cardinal_bspline: r must be >= 1");
  if (k < 0) throw std::invalid_argument("cardinal_bspline: k must be >= 0");
  if (k > 0) {
    if (k > r - 1) return 0.0;
    return cardinal_bspline(r - 1, x, k - 1) -
           cardinal_bspline(r - 1, x - 1.0, k - 1);
  }
  if (r == 1) return (x >= 0.0 && x < 1.0) ? 1.0 : 0.0;  // half-open cell
  if (x <= 0.0 || x >= r) return 0.0;
  return (x * cardinal_bspline(r - 1, x) +
          (r - x) * cardinal_bspline(r - 1, x - 1.0)) /
         (r - 1);
}

SplineSpace build_space(int r, int N) {
  if (r < 2) {
    throw std::invalid_argument("build_space: order r must be >= 2, got " +
                                std::to_string(r));
  }
  if (N <= 4 * (r - 1)) {
    throw std::invalid_argument("build_space: need N > 4(r-1) = " +
                                std::to_string(4 * (r - 1)) + ", got N = " +
                                std::to_string(N));
  }
  return SplineSpace{r, N, 1.0 / N};
}

SplineFn::SplineFn(const SplineSpace& s, Eigen::VectorXd c)
    : space(s), coeffs(std::move(c)) {
  if (coeffs.size() != space.N) {
    throw std::invalid_argument("SplineFn: expected " +
                                std::to_string(space.N) + " coefficients, got " +
                                std::to_string(coeffs.size()));
  }
}

SplineFn zero_fn(const SplineSpace& space) {
  return SplineFn(space, Eigen::VectorXd::Zero(space.N));
}

SplineFn constant_fn(const SplineSpace& space, double value) {
  // Partition of unity: equal coefficients reproduce the constant exactly.
  return SplineFn(space, Eigen::VectorXd::Constant(space.N, value));
}

double eval(const SplineFn& f, double x, int k) {
  const int r = f.space.r, N = f.space.N;
  const double h = f.space.h;
  if (k < 0 || k >= r) {
    throw std::invalid_argument("eval: derivative order k = " +
                                std::to_string(k) + " unsupported for order r = " +
                                std::to_string(r) + " (need 0 <= k <= r-1)");
  }
  double xp = x - std::floor(x);  // periodic wrap into [0,1)
  int cell = static_cast<int>(std::floor(xp / h));
  if (cell >= N) cell = N - 1;
  const double scale = std::pow(1.0 / h, k);
  double out = 0.0;
  for (int a = 0; a < r; ++a) {
    const int j = cell - r + 1 + a;
    const int jm = ((j % N) + N) % N;
    out += f.coeffs[jm] * cardinal_bspline(r, xp / h - j, k) * scale;
  }
  return out;
}

SplineNorms norms(const SplineFn& f, int samples_per_cell) {
  const int r = f.space.r, N = f.space.N;
  const double h = f.space.h;
  // Integrands are polynomials of degree <= 2(r-1) per cell: r+1 points exact.
  const QuadRule rule = gauss_rule(r + 1);
  SplineNorms out;
  double l2sq = 0.0, h1sq = 0.0;
  for (int cell = 0; cell < N; ++cell) {
    for (int qi = 0; qi < rule.q; ++qi) {
      const double x = (cell + rule.points[qi]) * h;
      const double v = eval(f, x, 0);
      const double d = eval(f, x, 1);
      l2sq += h * rule.weights[qi] * v * v;
      h1sq += h * rule.weights[qi] * d * d;
    }
  }
  out.l2 = std::sqrt(l2sq);
  out.h1 = std::sqrt(l2sq + h1sq);
  for (int cell = 0; cell < N; ++cell) {
    for (int s = 0; s <= samples_per_cell; ++s) {
      const double x = (cell + static_cast<double>(s) / samples_per_cell) * h;
      out.linf = std::max(out.linf, std::abs(eval(f, x, 0)));
      out.w1inf = std::max(out.w1inf, std::abs(eval(f, x, 1)));
    }
  }
  out.w1inf = std::max(out.w1inf, out.linf);
  return out;
}

double l2_norm(const SplineFn& f) { return norms(f, 1).l2; }
double h1_norm(const SplineFn& f) { return norms(f, 1).h1; }

}  // namespace serre
