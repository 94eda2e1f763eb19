#include "serre/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace serre {

QuadRule gauss_rule(int q) {
  if (q < 1 || q > 30) {
    throw std::invalid_argument("gauss_rule: q must be in [1,30], got " +
                                std::to_string(q));
  }
  QuadRule rule;
  rule.q = q;
  rule.points.resize(q);
  rule.weights.resize(q);

  // Newton iteration on P_q over [-1,1], mapped to [0,1] at the end.
  for (int i = 0; i < q; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= q; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = q * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.points[i] = 0.5 * (1.0 - x);  // descending x -> ascending point
    rule.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace serre
