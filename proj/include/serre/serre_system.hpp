#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "serre/assembly.hpp"
#include "serre/function.hpp"
#include "serre/quasiinterp.hpp"
#include "serre/spline.hpp"

namespace serre {

struct SolverConfig {
  double c0 = 0.9;          // positivity reference
  double depth_floor = -1;  // monitor threshold; < 0 resolves to c0/8
  double dt = 1e-3;
  double t_end = 0.1;
  int q = 0;                // quadrature points per cell, 0 -> r+2
  ForcingFn forcing_f;      // optional manufactured forcing
  ForcingFn forcing_g;

  double resolved_floor() const { return depth_floor >= 0 ? depth_floor : c0 / 8.0; }
};

struct State {
  Eigen::VectorXd eta;
  Eigen::VectorXd u;
  double t = 0.0;
};

/// Depth became non-positive: the elliptic velocity solve is no longer valid.
struct PositivityViolation : std::runtime_error {
  PositivityViolation(double t, double x, double value);
  double t, x, value;
};

/// A(v) acting on w as the weighted mass form of v plus the grad form of v^3.
/// Throws PositivityViolation when v is non-positive at a quadrature point.
BandedCyclicMatrix assemble_A(const Discretization& d,
                              const Eigen::VectorXd& eta_coeffs,
                              double t = 0.0);
BandedCyclicMatrix assemble_A(const SplineFn& eta);

class SerreSolver {
 public:
  /// Requires r >= 3: the velocity equation needs second spline derivatives.
  SerreSolver(const Discretization& d, SolverConfig cfg);

  /// Time derivatives of both coefficient vectors; min_depth (if given)
  /// receives the smallest depth value seen at the quadrature points.
  void rhs(const State& s, Eigen::VectorXd& eta_dot, Eigen::VectorXd& u_dot,
           double* min_depth = nullptr) const;

  State rk4_step(const State& s, double dt, double* min_depth = nullptr) const;

  /// eta L2 norm squared + (eta u, u) + (1/3)(eta^3 u_x, u_x).
  double energy(const State& s) const;
  /// Integral of eta over the period (h times the coefficient sum).
  double mass_integral(const State& s) const;

  const Discretization& disc() const { return *d_; }
  const SolverConfig& config() const { return cfg_; }

 private:
  const Discretization* d_;
  SolverConfig cfg_;
};

struct StepRecord {
  double t;
  double min_depth;  // over the RK stages ending at this record
  double energy;
  double mass;
};

struct SimResult {
  State final_state;
  std::vector<StepRecord> records;
  double min_depth = 0.0;
  bool floor_breached = false;
  std::optional<PositivityViolation> violation;
};

/// Integrates from (Q_h eta0, Q_h u0) to t_end with steps cfg.dt (last step
/// shortened to land exactly). Halts early on a positivity violation, which
/// is reported in the result rather than thrown.
SimResult simulate(const Discretization& d, const QIMask& mask,
                   const ScalarFn& eta0, const ScalarFn& u0,
                   const SolverConfig& cfg);

}  // namespace serre
