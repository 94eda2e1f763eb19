#pragma once

#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "serre/assembly.hpp"
#include "serre/function.hpp"
#include "serre/manufactured.hpp"
#include "serre/quasiinterp.hpp"
#include "serre/serre_system.hpp"

namespace serre {

/// Per-node coefficient records of one iterate on a uniform time grid
/// t_s = s * dt, s = 0..K, including the integrator's time derivatives.
struct Trajectory {
  double dt = 0.0;
  Eigen::MatrixXd eta, u;      // (K+1) x N
  Eigen::MatrixXd eta_t, u_t;  // (K+1) x N
  double min_depth = 0.0;

  int K() const { return static_cast<int>(eta.rows()) - 1; }
};

/// Iterate 0: initial data held constant in time.
Trajectory constant_trajectory(const Eigen::VectorXd& eta0,
                               const Eigen::VectorXd& u0, int K, double dt);

/// Cubic Lagrange interpolation of per-node records at time t (4 nearest
/// grid nodes, clamped at the ends).
Eigen::VectorXd interp_records(const Eigen::MatrixXd& records, double dt,
                               double t);

/// One linear nonautonomous sweep: frozen coefficients come from prev,
/// evaluated at each RK stage time; initial values are (eta0, u0) for every
/// iterate. Forcing from cfg applies unchanged.
Trajectory picard_iterate(const Discretization& d, const Trajectory& prev,
                          const Eigen::VectorXd& eta0,
                          const Eigen::VectorXd& u0, const SolverConfig& cfg);

struct PicardIterStat {
  int n = 0;
  double sup_delta = 0.0;  // sup_t sqrt(|d eta|^2 + |d u|_1^2)
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double min_depth = 0.0;
};

struct PicardRun {
  Trajectory trajectory;
  std::vector<PicardIterStat> stats;
  bool contraction_failed = false;  // alpha >= 1 for two consecutive iterates
  double min_depth = 0.0;           // over all iterates
};

/// Runs n_iters sweeps from the constant iterate over [0, t_star]; the step
/// count is round(t_star / cfg.dt), at least 4. Stops early once the delta
/// drops below 1e-12.
PicardRun run_picard(const Discretization& d, const Eigen::VectorXd& eta0,
                     const Eigen::VectorXd& u0, int n_iters, double t_star,
                     const SolverConfig& cfg);

struct IterateError {
  double theta_sup = 0.0;  // sup_t |Q_h eta_ref - eta_h|
  double xi_sup = 0.0;     // sup_t |Q_h u_ref - u_h|_1
};

/// Sup-over-grid errors against a reference field pair; time_deriv = 1
/// compares the recorded time derivatives against Q_h of the reference
/// time derivatives instead.
IterateError iterate_error(const Discretization& d, const QIMask& mask,
                           const Trajectory& traj, const SpaceTimeFn& eta_ref,
                           const SpaceTimeFn& u_ref, int time_deriv = 0);

/// L2 norms of the two scheme residuals obtained by inserting the
/// quasiinterpolated exact fields H = Q_h eta, U = Q_h u into the discrete
/// system at time t (converged-iterate form; forcing subtracted).
std::pair<double, double> consistency_residual(const Discretization& d,
                                               const QIMask& mask,
                                               const ManufacturedProblem& mp,
                                               double t);

}  // namespace serre
