#pragma once

#include "serre/function.hpp"

namespace serre {

/// Closed-form traveling-wave pair
///   eta(x,t) = 1 + a sin(2 pi (x - t)),   u(x,t) = b sin(2 pi (x + t)),
/// together with the forcing (f, g) that makes it an exact solution of the
/// forced system. All partial derivatives are closed-form.
struct ManufacturedProblem {
  double a = 0.1;
  double b = 0.1;

  double eta(double x, double t, int dx = 0, int dt = 0) const;
  double u(double x, double t, int dx = 0, int dt = 0) const;

  /// f = eta_t + (eta u)_x.
  double forcing_f(double x, double t) const;
  /// g = eta u_t - (1/3)(eta^3 u_tx)_x + eta eta_x + eta u u_x
  ///     - (1/3)[eta^3 (u u_xx - u_x^2)]_x, expanded by hand.
  double forcing_g(double x, double t) const;

  SpaceTimeFn eta_fn() const;
  SpaceTimeFn u_fn() const;
  ForcingFn f_fn() const;
  ForcingFn g_fn() const;
};

/// Largest residual of the forced continuum system at n random (x,t), plus a
/// central finite-difference check (step 1e-5) of every closed-form
/// derivative. Throws when the finite-difference check fails at relative
/// tolerance 1e-6; returns the maximum system residual.
double self_check(const ManufacturedProblem& mp, int n_samples = 1000,
                  unsigned seed = 0);

}  // namespace serre
