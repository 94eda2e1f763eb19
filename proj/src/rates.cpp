#include "serre/rates.hpp"

#include <cmath>
#include <stdexcept>

namespace serre {

RateFit fit_rate(const std::vector<double>& hs,
                 const std::vector<double>& errs) {
  const size_t n = hs.size();
  if (n < 3) throw std::invalid_argument("fit_rate: need at least 3 levels");
  if (errs.size() != n) throw std::invalid_argument("fit_rate: size mismatch");
  for (size_t i = 0; i < n; ++i) {
    if (!(errs[i] > 0.0)) {
      throw std::invalid_argument("fit_rate: errors must be positive");
    }
    if (i > 0 && !(hs[i] < hs[i - 1])) {
      throw std::invalid_argument("fit_rate: meshlengths must strictly decrease");
    }
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    const double x = std::log(hs[i]), y = std::log(errs[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  RateFit fit;
  const double denom = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - fit.slope * sx) / n;
  double ss = 0;
  for (size_t i = 0; i < n; ++i) {
    const double r = std::log(errs[i]) - fit.slope * std::log(hs[i]) - intercept;
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace serre
