#pragma once

#include <vector>

namespace serre {

struct RateFit {
  double slope = 0.0;
  double residual = 0.0;  // RMS of log-log fit residuals
};

/// Least-squares slope of log(err) versus log(h). Requires at least 3
/// strictly decreasing meshlengths and strictly positive errors.
RateFit fit_rate(const std::vector<double>& hs, const std::vector<double>& errs);

}  // namespace serre
