#pragma once

#include <Eigen/Core>

namespace serre {

/// Gauss-Legendre rule on the reference cell [0,1].
struct QuadRule {
  int q;                    // number of points
  Eigen::VectorXd points;   // abscissae in (0,1)
  Eigen::VectorXd weights;  // sum to 1
};

/// q-point Gauss-Legendre rule, exact for polynomials of degree <= 2q-1.
/// Throws std::invalid_argument unless 1 <= q <= 30.
QuadRule gauss_rule(int q);

}  // namespace serre
