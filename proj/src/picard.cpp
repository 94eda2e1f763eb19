#include "serre/picard.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace serre {
namespace {

struct StageRhs {
  Eigen::VectorXd eta_dot, u_dot;
  double min_depth;
};

// Linear system at time t with coefficients frozen from prev.
StageRhs linear_rhs(const Discretization& d, const Trajectory& prev,
                    const Eigen::VectorXd& ce, const Eigen::VectorXd& cu,
                    double t, const SolverConfig& cfg) {
  const Eigen::VectorXd pe = interp_records(prev.eta, prev.dt, t);
  const Eigen::VectorXd pu = interp_records(prev.u, prev.dt, t);
  const Eigen::MatrixXd peq = d.values(pe, 0);
  const double mn = peq.minCoeff();
  if (mn <= 0.0) {
    int ci = 0, qi = 0;
    peq.minCoeff(&ci, &qi);
    throw PositivityViolation(t, d.quad_points()(ci, qi), mn);
  }
  const Eigen::MatrixXd puq = d.values(pu, 0);
  const Eigen::MatrixXd puxq = d.values(pu, 1);
  const Eigen::MatrixXd exq = d.values(ce, 1);
  const Eigen::MatrixXd uxq = d.values(cu, 1);
  const Eigen::MatrixXd uxxq = d.values(cu, 2);

  Eigen::MatrixXd transport = -(peq.cwiseProduct(uxq) + puq.cwiseProduct(exq));
  if (cfg.forcing_f) transport += d.sample(cfg.forcing_f, t);

  const Eigen::MatrixXd pe3 = peq.array().cube().matrix();
  Eigen::VectorXd load = -d.load(peq.cwiseProduct(exq) +
                                 peq.cwiseProduct(puq).cwiseProduct(uxq));
  load -= d.load(pe3.cwiseProduct(puq.cwiseProduct(uxxq) -
                                  puxq.cwiseProduct(uxq)),
                 1, 1.0 / 3.0);
  if (cfg.forcing_g) load += d.load(d.sample(cfg.forcing_g, t));

  BandedCyclicMatrix A = d.weighted_form(peq);
  A += d.weighted_form(pe3, 1, 1, 1.0 / 3.0);
  return {d.project(transport), CyclicFactor(A).solve(load), mn};
}

double l2h1_delta(const Discretization& d, const Eigen::VectorXd& de,
                  const Eigen::VectorXd& du) {
  const double a = d.l2(de), b = d.h1(du);
  return std::sqrt(a * a + b * b);
}

}  // namespace

Trajectory constant_trajectory(const Eigen::VectorXd& eta0,
                               const Eigen::VectorXd& u0, int K, double dt) {
  if (K < 4) throw std::invalid_argument("constant_trajectory: need K >= 4");
  Trajectory tr;
  tr.dt = dt;
  tr.eta = eta0.transpose().replicate(K + 1, 1);
  tr.u = u0.transpose().replicate(K + 1, 1);
  tr.eta_t = Eigen::MatrixXd::Zero(K + 1, eta0.size());
  tr.u_t = Eigen::MatrixXd::Zero(K + 1, u0.size());
  return tr;
}

Eigen::VectorXd interp_records(const Eigen::MatrixXd& records, double dt,
                               double t) {
  const int K = static_cast<int>(records.rows()) - 1;
  if (K < 3) throw std::invalid_argument("interp_records: need >= 4 nodes");
  int i = static_cast<int>(std::floor(t / dt));
  int i0 = std::clamp(i - 1, 0, K - 3);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(records.cols());
  for (int m = 0; m < 4; ++m) {
    double lag = 1.0;
    const double tm = (i0 + m) * dt;
    for (int n = 0; n < 4; ++n) {
      if (n == m) continue;
      const double tn = (i0 + n) * dt;
      lag *= (t - tn) / (tm - tn);
    }
    out += lag * records.row(i0 + m).transpose();
  }
  return out;
}

Trajectory picard_iterate(const Discretization& d, const Trajectory& prev,
                          const Eigen::VectorXd& eta0,
                          const Eigen::VectorXd& u0, const SolverConfig& cfg) {
  const int K = prev.K();
  const double dt = prev.dt;
  Trajectory next;
  next.dt = dt;
  next.eta.resize(K + 1, eta0.size());
  next.u.resize(K + 1, u0.size());
  next.eta_t.resize(K + 1, eta0.size());
  next.u_t.resize(K + 1, u0.size());
  next.eta.row(0) = eta0.transpose();
  next.u.row(0) = u0.transpose();
  double mind = std::numeric_limits<double>::infinity();
  for (int s = 0; s < K; ++s) {
    const double t = s * dt;
    const Eigen::VectorXd ce = next.eta.row(s).transpose();
    const Eigen::VectorXd cu = next.u.row(s).transpose();
    StageRhs k1 = linear_rhs(d, prev, ce, cu, t, cfg);
    StageRhs k2 = linear_rhs(d, prev, ce + 0.5 * dt * k1.eta_dot,
                             cu + 0.5 * dt * k1.u_dot, t + 0.5 * dt, cfg);
    StageRhs k3 = linear_rhs(d, prev, ce + 0.5 * dt * k2.eta_dot,
                             cu + 0.5 * dt * k2.u_dot, t + 0.5 * dt, cfg);
    StageRhs k4 = linear_rhs(d, prev, ce + dt * k3.eta_dot,
                             cu + dt * k3.u_dot, t + dt, cfg);
    mind = std::min({mind, k1.min_depth, k2.min_depth, k3.min_depth,
                     k4.min_depth});
    next.eta.row(s + 1) =
        (ce + dt / 6.0 * (k1.eta_dot + 2.0 * k2.eta_dot + 2.0 * k3.eta_dot +
                          k4.eta_dot))
            .transpose();
    next.u.row(s + 1) =
        (cu + dt / 6.0 * (k1.u_dot + 2.0 * k2.u_dot + 2.0 * k3.u_dot +
                          k4.u_dot))
            .transpose();
    next.eta_t.row(s) = k1.eta_dot.transpose();
    next.u_t.row(s) = k1.u_dot.transpose();
  }
  StageRhs last = linear_rhs(d, prev, next.eta.row(K).transpose(),
                             next.u.row(K).transpose(), K * dt, cfg);
  next.eta_t.row(K) = last.eta_dot.transpose();
  next.u_t.row(K) = last.u_dot.transpose();
  next.min_depth = std::min(mind, last.min_depth);
  return next;
}

PicardRun run_picard(const Discretization& d, const Eigen::VectorXd& eta0,
                     const Eigen::VectorXd& u0, int n_iters, double t_star,
                     const SolverConfig& cfg) {
  if (n_iters < 2) throw std::invalid_argument("run_picard: need n_iters >= 2");
  const int K = std::max(4, static_cast<int>(std::llround(t_star / cfg.dt)));
  const double dt = t_star / K;
  PicardRun run;
  Trajectory prev = constant_trajectory(eta0, u0, K, dt);
  run.min_depth = std::numeric_limits<double>::infinity();
  double prev_delta = -1.0;
  int consecutive_bad = 0;
  for (int n = 1; n <= n_iters; ++n) {
    Trajectory next = picard_iterate(d, prev, eta0, u0, cfg);
    PicardIterStat stat;
    stat.n = n;
    stat.min_depth = next.min_depth;
    for (int s = 0; s <= K; ++s) {
      stat.sup_delta = std::max(
          stat.sup_delta,
          l2h1_delta(d, (next.eta.row(s) - prev.eta.row(s)).transpose(),
                     (next.u.row(s) - prev.u.row(s)).transpose()));
    }
    if (prev_delta > 1e-11) {
      stat.alpha = stat.sup_delta / prev_delta;
      consecutive_bad = (stat.alpha >= 1.0) ? consecutive_bad + 1 : 0;
      if (consecutive_bad >= 2) run.contraction_failed = true;
    }
    run.min_depth = std::min(run.min_depth, next.min_depth);
    run.stats.push_back(stat);
    prev_delta = stat.sup_delta;
    prev = std::move(next);
    if (stat.sup_delta < 1e-12 && n >= 2) break;
  }
  run.trajectory = std::move(prev);
  return run;
}

IterateError iterate_error(const Discretization& d, const QIMask& mask,
                           const Trajectory& traj, const SpaceTimeFn& eta_ref,
                           const SpaceTimeFn& u_ref, int time_deriv) {
  const int N = d.space().N;
  IterateError err;
  Eigen::VectorXd se(N), su(N);
  for (int s = 0; s <= traj.K(); ++s) {
    const double t = s * traj.dt;
    for (int j = 0; j < N; ++j) {
      const double x = j * d.space().h;
      se[j] = eta_ref(x, t, 0, time_deriv);
      su[j] = u_ref(x, t, 0, time_deriv);
    }
    const Eigen::VectorXd qe = apply(d.space(), mask, se).coeffs;
    const Eigen::VectorXd qu = apply(d.space(), mask, su).coeffs;
    Eigen::VectorXd te, tu;
    if (time_deriv) {
      te = traj.eta_t.row(s).transpose();
      tu = traj.u_t.row(s).transpose();
    } else {
      te = traj.eta.row(s).transpose();
      tu = traj.u.row(s).transpose();
    }
    err.theta_sup = std::max(err.theta_sup, d.l2(qe - te));
    err.xi_sup = std::max(err.xi_sup, d.h1(qu - tu));
  }
  return err;
}

std::pair<double, double> consistency_residual(const Discretization& d,
                                               const QIMask& mask,
                                               const ManufacturedProblem& mp,
                                               double t) {
  const int N = d.space().N;
  Eigen::VectorXd se(N), su(N), set(N), sut(N);
  for (int j = 0; j < N; ++j) {
    const double x = j * d.space().h;
    se[j] = mp.eta(x, t);
    su[j] = mp.u(x, t);
    set[j] = mp.eta(x, t, 0, 1);
    sut[j] = mp.u(x, t, 0, 1);
  }
  const Eigen::VectorXd H = apply(d.space(), mask, se).coeffs;
  const Eigen::VectorXd U = apply(d.space(), mask, su).coeffs;
  const Eigen::VectorXd Ht = apply(d.space(), mask, set).coeffs;
  const Eigen::VectorXd Ut = apply(d.space(), mask, sut).coeffs;
  const Eigen::MatrixXd Hq = d.values(H, 0), Hxq = d.values(H, 1);
  const Eigen::MatrixXd Uq = d.values(U, 0), Uxq = d.values(U, 1),
                        Uxxq = d.values(U, 2);
  const Eigen::MatrixXd Utq = d.values(Ut, 0), Utxq = d.values(Ut, 1);
  const Eigen::MatrixXd H3 = Hq.array().cube().matrix();

  const Eigen::VectorXd psi =
      Ht + d.project(Hq.cwiseProduct(Uxq) + Uq.cwiseProduct(Hxq) -
                     d.sample(mp.f_fn(), t));
  Eigen::VectorXd delta =
      d.project(Hq.cwiseProduct(Utq) +
                Hq.cwiseProduct(Hxq) +
                Hq.cwiseProduct(Uq).cwiseProduct(Uxq) -
                d.sample(mp.g_fn(), t));
  delta += d.grad_project(H3.cwiseProduct(Utxq));
  delta += d.grad_project(H3.cwiseProduct(Uq.cwiseProduct(Uxxq) -
                                          Uxq.cwiseProduct(Uxq)));
  return {d.l2(psi), d.l2(delta)};
}

}  // namespace serre
