#include "serre/serre_system.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace serre {
namespace {

// Smallest depth over the quadrature grid and where it occurs.
void depth_minimum(const Discretization& d, const Eigen::MatrixXd& etaq,
                   double* value, double* where) {
  int ci = 0, qi = 0;
  *value = etaq.minCoeff(&ci, &qi);
  *where = d.quad_points()(ci, qi);
}

}  // namespace

PositivityViolation::PositivityViolation(double t, double x, double value)
    : std::runtime_error("depth non-positive: eta(" + std::to_string(x) +
                         ") = " + std::to_string(value) + " at t = " +
                         std::to_string(t)),
      t(t), x(x), value(value) {}

BandedCyclicMatrix assemble_A(const Discretization& d,
                              const Eigen::VectorXd& eta_coeffs, double t) {
  const Eigen::MatrixXd etaq = d.values(eta_coeffs, 0);
  double mn, mx;
  depth_minimum(d, etaq, &mn, &mx);
  if (mn <= 0.0) throw PositivityViolation(t, mx, mn);
  BandedCyclicMatrix A = d.weighted_form(etaq);
  A += d.weighted_form(etaq.array().cube().matrix(), 1, 1, 1.0 / 3.0);
  return A;
}

BandedCyclicMatrix assemble_A(const SplineFn& eta) {
  Discretization d(eta.space);
  return assemble_A(d, eta.coeffs);
}

SerreSolver::SerreSolver(const Discretization& d, SolverConfig cfg)
    : d_(&d), cfg_(std::move(cfg)) {
  if (d.space().r < 3) {
    throw std::invalid_argument(
        "SerreSolver: r >= 3 required (u_xx enters the velocity equation)");
  }
}

void SerreSolver::rhs(const State& s, Eigen::VectorXd& eta_dot,
                      Eigen::VectorXd& u_dot, double* min_depth) const {
  const Discretization& d = *d_;
  const Eigen::MatrixXd eq = d.values(s.eta, 0);
  double mn, mx;
  depth_minimum(d, eq, &mn, &mx);
  if (min_depth) *min_depth = mn;
  if (mn <= 0.0) throw PositivityViolation(s.t, mx, mn);
  const Eigen::MatrixXd exq = d.values(s.eta, 1);
  const Eigen::MatrixXd uq = d.values(s.u, 0);
  const Eigen::MatrixXd uxq = d.values(s.u, 1);
  const Eigen::MatrixXd uxxq = d.values(s.u, 2);

  Eigen::MatrixXd transport = -(eq.cwiseProduct(uxq) + exq.cwiseProduct(uq));
  if (cfg_.forcing_f) transport += d.sample(cfg_.forcing_f, s.t);
  eta_dot = d.project(transport);

  const Eigen::MatrixXd e3 = eq.array().cube().matrix();
  Eigen::VectorXd load =
      -d.load(eq.cwiseProduct(exq) + eq.cwiseProduct(uq).cwiseProduct(uxq));
  load -= d.load(
      e3.cwiseProduct(uq.cwiseProduct(uxxq) - uxq.cwiseProduct(uxq)), 1,
      1.0 / 3.0);
  if (cfg_.forcing_g) load += d.load(d.sample(cfg_.forcing_g, s.t));

  BandedCyclicMatrix A = d.weighted_form(eq);
  A += d.weighted_form(e3, 1, 1, 1.0 / 3.0);
  u_dot = CyclicFactor(A).solve(load);
}

State SerreSolver::rk4_step(const State& s, double dt,
                            double* min_depth) const {
  Eigen::VectorXd k1e, k1u, k2e, k2u, k3e, k3u, k4e, k4u;
  double m1, m2, m3, m4;
  rhs(s, k1e, k1u, &m1);
  rhs({s.eta + 0.5 * dt * k1e, s.u + 0.5 * dt * k1u, s.t + 0.5 * dt}, k2e, k2u,
      &m2);
  rhs({s.eta + 0.5 * dt * k2e, s.u + 0.5 * dt * k2u, s.t + 0.5 * dt}, k3e, k3u,
      &m3);
  rhs({s.eta + dt * k3e, s.u + dt * k3u, s.t + dt}, k4e, k4u, &m4);
  if (min_depth) *min_depth = std::min({m1, m2, m3, m4});
  return {s.eta + dt / 6.0 * (k1e + 2.0 * k2e + 2.0 * k3e + k4e),
          s.u + dt / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u), s.t + dt};
}

double SerreSolver::energy(const State& s) const {
  const Discretization& d = *d_;
  const Eigen::MatrixXd eq = d.values(s.eta, 0);
  const Eigen::MatrixXd uq = d.values(s.u, 0);
  const Eigen::MatrixXd uxq = d.values(s.u, 1);
  double acc = 0.0;
  for (int cell = 0; cell < d.space().N; ++cell) {
    for (int qi = 0; qi < d.rule().q; ++qi) {
      const double e = eq(cell, qi), uv = uq(cell, qi), ux = uxq(cell, qi);
      acc += d.rule().weights[qi] *
             (e * e + e * uv * uv + e * e * e * ux * ux / 3.0);
    }
  }
  return d.space().h * acc;
}

double SerreSolver::mass_integral(const State& s) const {
  return d_->space().h * s.eta.sum();
}

SimResult simulate(const Discretization& d, const QIMask& mask,
                   const ScalarFn& eta0, const ScalarFn& u0,
                   const SolverConfig& cfg) {
  const int N = d.space().N;
  Eigen::VectorXd se(N), su(N);
  for (int j = 0; j < N; ++j) {
    const double x = j * d.space().h;
    se[j] = eta0(x);
    su[j] = u0(x);
  }
  SerreSolver solver(d, cfg);
  SimResult out;
  State s{apply(d.space(), mask, se).coeffs, apply(d.space(), mask, su).coeffs,
          0.0};
  out.min_depth = std::numeric_limits<double>::infinity();
  const double floor = cfg.resolved_floor();
  out.records.push_back({0.0, d.values(s.eta, 0).minCoeff(), solver.energy(s),
                         solver.mass_integral(s)});
  double t = 0.0;
  while (t < cfg.t_end - 1e-14) {
    const double dt = std::min(cfg.dt, cfg.t_end - t);
    double step_min = 0.0;
    try {
      s = solver.rk4_step(s, dt, &step_min);
    } catch (const PositivityViolation& pv) {
      out.violation = pv;
      break;
    }
    t = s.t;
    out.min_depth = std::min(out.min_depth, step_min);
    if (step_min < floor) out.floor_breached = true;
    out.records.push_back({t, step_min, solver.energy(s),
                           solver.mass_integral(s)});
  }
  out.final_state = std::move(s);
  return out;
}

}  // namespace serre
