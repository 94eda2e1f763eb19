#pragma once

#include <functional>

namespace serre {

/// Plain evaluable function on [0,1].
using ScalarFn = std::function<double(double)>;

/// Smooth 1-periodic function with derivatives: f(x, k) = d^k f / dx^k.
using SmoothFn = std::function<double(double, int)>;

/// Space-time field: f(x, t, dx, dt) = mixed partial derivative.
using SpaceTimeFn = std::function<double(double, double, int, int)>;

/// Forcing term g(x, t).
using ForcingFn = std::function<double(double, double)>;

}  // namespace serre
