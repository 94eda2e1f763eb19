#pragma once

#include <vector>

#include <Eigen/Core>

#include "serre/function.hpp"
#include "serre/spline.hpp"

namespace serre {

/// Cyclic mask realizing the quasiinterpolant: coefficients are obtained by
/// the discrete convolution c_j = sum_k coeffs[k] * v(x_{j + offsets[k]}).
/// The stencil is palindromic about r/2 (the center of the mother spline's
/// support) and sums to one.
struct QIMask {
  int r = 0;
  std::vector<int> offsets;
  Eigen::VectorXd coeffs;
};

/// Mask whose symbol matches the inverse square root of the basis Gram symbol
/// through order 2r-2, which is what drives the superconvergent inner-product
/// probes below. r = 2 degenerates to nodal interpolation with the hat basis.
/// Accepts 2 <= r <= 8.
QIMask derive_mask(int r);

/// Q_h of nodal samples v(x_j), j = 0..N-1.
SplineFn apply(const SplineSpace& space, const QIMask& mask,
               const Eigen::VectorXd& samples);

/// Dense matrix W with (W v) the mask coefficients; the dual functions are
/// Phi_i = sum_j W(j,i) B_j.
Eigen::MatrixXd mask_matrix(const SplineSpace& space, const QIMask& mask);

/// max_i | ((Q_h w)^(nu), Phi_i^(kappa)) - (-1)^kappa h w^(nu+kappa)(x_i) |.
double probe_superconvergence(const SplineSpace& space, const QIMask& mask,
                              const SmoothFn& w, int nu, int kappa);

/// max_i | (f (Q_h g)^(nu), Phi_i^(kappa))
///         - (-1)^kappa (Q_h[(f g^(nu))^(kappa)], Phi_i) |.
double probe_product(const SplineSpace& space, const QIMask& mask,
                     const SmoothFn& f, const SmoothFn& g, int nu, int kappa);

}  // namespace serre
