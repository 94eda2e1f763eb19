#include "serre/manufactured.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace serre {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// d^{m+n}/dx^m dt^n of sin(2 pi (x + s t)) with s = +-1.
double wave(double x, double t, double s, int m, int n) {
  const int total = m + n;
  return std::pow(kTwoPi, total) * std::pow(s, n) *
         std::sin(kTwoPi * (x + s * t) + total * std::numbers::pi / 2.0);
}

}  // namespace

double ManufacturedProblem::eta(double x, double t, int dx, int dt) const {
  const double base = (dx == 0 && dt == 0) ? 1.0 : 0.0;
  return base + a * wave(x, t, -1.0, dx, dt);
}

double ManufacturedProblem::u(double x, double t, int dx, int dt) const {
  return b * wave(x, t, 1.0, dx, dt);
}

double ManufacturedProblem::forcing_f(double x, double t) const {
  return eta(x, t, 0, 1) + eta(x, t) * u(x, t, 1) + u(x, t) * eta(x, t, 1);
}

double ManufacturedProblem::forcing_g(double x, double t) const {
  const double e = eta(x, t), ex = eta(x, t, 1);
  const double uv = u(x, t), ux = u(x, t, 1), uxx = u(x, t, 2),
               uxxx = u(x, t, 3);
  const double ut = u(x, t, 0, 1), utx = u(x, t, 1, 1), utxx = u(x, t, 2, 1);
  const double disp_t = 3.0 * e * e * ex * utx + e * e * e * utxx;
  const double disp_n = 3.0 * e * e * ex * (uv * uxx - ux * ux) +
                        e * e * e * (uv * uxxx - ux * uxx);
  return e * ut - disp_t / 3.0 + e * ex + e * uv * ux - disp_n / 3.0;
}

SpaceTimeFn ManufacturedProblem::eta_fn() const {
  return [mp = *this](double x, double t, int dx, int dt) {
    return mp.eta(x, t, dx, dt);
  };
}

SpaceTimeFn ManufacturedProblem::u_fn() const {
  return [mp = *this](double x, double t, int dx, int dt) {
    return mp.u(x, t, dx, dt);
  };
}

ForcingFn ManufacturedProblem::f_fn() const {
  return [mp = *this](double x, double t) { return mp.forcing_f(x, t); };
}

ForcingFn ManufacturedProblem::g_fn() const {
  return [mp = *this](double x, double t) { return mp.forcing_g(x, t); };
}

double self_check(const ManufacturedProblem& mp, int n_samples, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double step = 1e-5;
  double max_resid = 0.0;
  auto fd_check = [&](double exact, double lo, double hi, const char* what) {
    const double fd = (hi - lo) / (2.0 * step);
    const double scale = std::max({1.0, std::abs(exact), std::abs(fd)});
    if (std::abs(fd - exact) > 1e-6 * scale) {
      throw std::runtime_error(std::string("self_check: derivative '") + what +
                               "' disagrees with finite differences by " +
                               std::to_string(std::abs(fd - exact)));
    }
  };
  for (int i = 0; i < n_samples; ++i) {
    const double x = unit(rng), t = 2.0 * unit(rng);
    fd_check(mp.eta(x, t, 1), mp.eta(x - step, t), mp.eta(x + step, t),
             "eta_x");
    fd_check(mp.eta(x, t, 0, 1), mp.eta(x, t - step), mp.eta(x, t + step),
             "eta_t");
    fd_check(mp.u(x, t, 1), mp.u(x - step, t), mp.u(x + step, t), "u_x");
    fd_check(mp.u(x, t, 0, 1), mp.u(x, t - step), mp.u(x, t + step), "u_t");
    fd_check(mp.u(x, t, 2), mp.u(x - step, t, 1), mp.u(x + step, t, 1),
             "u_xx");
    fd_check(mp.u(x, t, 3), mp.u(x - step, t, 2), mp.u(x + step, t, 2),
             "u_xxx");
    fd_check(mp.u(x, t, 1, 1), mp.u(x, t - step, 1), mp.u(x, t + step, 1),
             "u_tx");
    fd_check(mp.u(x, t, 2, 1), mp.u(x, t - step, 2), mp.u(x, t + step, 2),
             "u_txx");

    // Residuals of the forced continuum system.
    const double e = mp.eta(x, t), ex = mp.eta(x, t, 1), et = mp.eta(x, t, 0, 1);
    const double uv = mp.u(x, t), ux = mp.u(x, t, 1), uxx = mp.u(x, t, 2),
                 uxxx = mp.u(x, t, 3);
    const double ut = mp.u(x, t, 0, 1), utx = mp.u(x, t, 1, 1),
                 utxx = mp.u(x, t, 2, 1);
    const double r1 = et + e * ux + uv * ex - mp.forcing_f(x, t);
    const double r2 =
        e * ut - (3.0 * e * e * ex * utx + e * e * e * utxx) / 3.0 + e * ex +
        e * uv * ux -
        (3.0 * e * e * ex * (uv * uxx - ux * ux) +
         e * e * e * (uv * uxxx - ux * uxx)) /
            3.0 -
        mp.forcing_g(x, t);
    max_resid = std::max({max_resid, std::abs(r1), std::abs(r2)});
  }
  return max_resid;
}

}  // namespace serre
