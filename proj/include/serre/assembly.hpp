#pragma once

#include <memory>
#include <vector>

#include <Eigen/Core>

#include "serre/banded.hpp"
#include "serre/function.hpp"
#include "serre/quadrature.hpp"
#include "serre/spline.hpp"

namespace serre {

/// Per-space precomputation: basis-derivative tables at the per-cell Gauss
/// points (cell-independent on a uniform mesh) and the factored mass matrix.
/// All assembled matrices have half-bandwidth r-1 from basis support overlap.
class Discretization {
 public:
  /// q = 0 picks the default r+2 points per cell.
  explicit Discretization(const SplineSpace& space, int q = 0);

  const SplineSpace& space() const { return sp_; }
  const QuadRule& rule() const { return rule_; }
  /// Global quadrature coordinates, N x q.
  const Eigen::MatrixXd& quad_points() const { return xq_; }

  /// k-th derivative of the spline with given coefficients at all quadrature
  /// points, N x q.
  Eigen::MatrixXd values(const Eigen::VectorXd& coeffs, int k = 0) const;

  /// f sampled at all quadrature points, N x q.
  Eigen::MatrixXd sample(const ScalarFn& f) const;
  Eigen::MatrixXd sample(const ForcingFn& f, double t) const;

  /// Matrix with entries scale * integral of wq * B_j^(k1) * B_i^(k2),
  /// weight given by its values at the quadrature points.
  BandedCyclicMatrix weighted_form(const Eigen::MatrixXd& wq, int k1 = 0,
                                   int k2 = 0, double scale = 1.0) const;

  /// Load vector scale * integral of vq * B_i^(k).
  Eigen::VectorXd load(const Eigen::MatrixXd& vq, int k = 0,
                       double scale = 1.0) const;

  /// L2 projection of quadrature-point values: solves M c = load(vq).
  Eigen::VectorXd project(const Eigen::MatrixXd& vq) const;

  /// Riesz representer of (1/3)(v, phi'): solves M c = (1/3) load(vq, 1).
  Eigen::VectorXd grad_project(const Eigen::MatrixXd& vq) const;

  const BandedCyclicMatrix& mass() const { return mass_; }
  const CyclicFactor& mass_factor() const { return *mass_factor_; }

  /// L2 and H1 norms of a coefficient vector via the quadrature tables.
  double l2(const Eigen::VectorXd& coeffs) const;
  double h1(const Eigen::VectorXd& coeffs) const;

 private:
  SplineSpace sp_;
  QuadRule rule_;
  std::vector<Eigen::MatrixXd> basis_;  // basis_[k](a, qi), a = 0..r-1
  Eigen::MatrixXd xq_;
  BandedCyclicMatrix mass_;
  std::shared_ptr<const CyclicFactor> mass_factor_;
};

BandedCyclicMatrix weighted_mass(const SplineSpace& space, const ScalarFn& w,
                                 int q = 0);
BandedCyclicMatrix weighted_grad_form(const SplineSpace& space,
                                      const ScalarFn& w, int q = 0);
SplineFn l2_project(const SplineSpace& space, const ScalarFn& f, int q = 0);
SplineFn f_h(const SplineSpace& space, const ScalarFn& v, int q = 0);

}  // namespace serre
