#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "serre/manufactured.hpp"
#include "serre/serre_system.hpp"

using namespace serre;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

TEST_CASE("A(1) equals mass plus a third of stiffness and fixes constants") {
  auto sp = build_space(3, 16);
  Discretization d(sp);
  auto A = assemble_A(d, Eigen::VectorXd::Ones(sp.N));
  CHECK(A.is_symmetric(1e-14));
  auto expected = d.weighted_form(Eigen::MatrixXd::Ones(sp.N, d.rule().q));
  expected += d.weighted_form(Eigen::MatrixXd::Ones(sp.N, d.rule().q), 1, 1,
                              1.0 / 3.0);
  CHECK((A.dense() - expected.dense()).cwiseAbs().maxCoeff() < 1e-13);
  // constants see only the mass part
  Eigen::VectorXd c = Eigen::VectorXd::Constant(sp.N, 2.5);
  Eigen::VectorXd rhs = d.mass().apply(c);
  CHECK((CyclicFactor(A).solve(rhs) - c).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("non-positive depth is rejected with location") {
  auto sp = build_space(3, 16);
  Discretization d(sp);
  Eigen::VectorXd bad = Eigen::VectorXd::Constant(sp.N, -0.2);
  CHECK_THROWS_AS(assemble_A(d, bad), PositivityViolation);
}

TEST_CASE("coercivity inequality for random positive depths") {
  auto sp = build_space(3, 32);
  Discretization d(sp);
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> amp(0.0, 1.0);
  std::normal_distribution<double> g(0.0, 1.0);
  const double c0 = 0.5;
  const double bound = std::max(1.0 / c0, 3.0 / (c0 * c0 * c0));
  int violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    // coefficients >= c0 guarantee the spline >= c0 (nonnegative basis)
    Eigen::VectorXd v(sp.N), w(sp.N);
    for (int i = 0; i < sp.N; ++i) {
      v[i] = c0 + amp(rng);
      w[i] = g(rng);
    }
    auto A = assemble_A(d, v);
    const double quad = w.dot(A.apply(w));
    const double h1 = d.h1(w);
    if (h1 * h1 > bound * quad * (1.0 + 1e-12)) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("steady state is a fixed point of the RK4 step") {
  auto sp = build_space(3, 16);
  Discretization d(sp);
  SolverConfig cfg;
  SerreSolver solver(d, cfg);
  State s{Eigen::VectorXd::Constant(sp.N, 1.3), Eigen::VectorXd::Zero(sp.N),
          0.0};
  double mind = 0.0;
  State s2 = solver.rk4_step(s, 0.01, &mind);
  CHECK((s2.eta - s.eta).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(s2.u.cwiseAbs().maxCoeff() < 1e-14);
  CHECK(mind == doctest::Approx(1.3));
}

TEST_CASE("r=2 is rejected by the solver") {
  auto sp = build_space(2, 16);
  Discretization d(sp);
  CHECK_THROWS(SerreSolver(d, SolverConfig{}));
}

TEST_CASE("u_dot satisfies the weak velocity identity") {
  auto sp = build_space(3, 16);
  Discretization d(sp);
  SolverConfig cfg;
  SerreSolver solver(d, cfg);
  Eigen::VectorXd se(sp.N), su(sp.N);
  for (int j = 0; j < sp.N; ++j) {
    const double x = j * sp.h;
    se[j] = 1.0 + 0.2 * std::sin(kTwoPi * x);
    su[j] = 0.1 * std::cos(kTwoPi * x);
  }
  State s{se, su, 0.0};
  Eigen::VectorXd ed, ud;
  solver.rhs(s, ed, ud);
  SplineFn eta(sp, se), u(sp, su), udot(sp, ud);
  std::mt19937 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd c(sp.N);
    for (int i = 0; i < sp.N; ++i) c[i] = g(rng);
    SplineFn chi(sp, c);
    // integrand is piecewise polynomial of degree <= 8: per-cell Gauss exact
    auto rule = gauss_rule(8);
    double acc = 0.0;
    for (int cell = 0; cell < sp.N; ++cell) {
      for (int qi = 0; qi < rule.q; ++qi) {
        const double x = (cell + rule.points[qi]) * sp.h;
        const double wq = sp.h * rule.weights[qi];
        const double e = eval(eta, x), ex = eval(eta, x, 1);
        const double uv = eval(u, x), ux = eval(u, x, 1), uxx = eval(u, x, 2);
        const double ut = eval(udot, x), utx = eval(udot, x, 1);
        const double cx = eval(chi, x), cxd = eval(chi, x, 1);
        acc += wq * (e * ut * cx + e * e * e * utx * cxd / 3.0 +
                     (e * ex + e * uv * ux) * cx +
                     e * e * e * (uv * uxx - ux * ux) * cxd / 3.0);
      }
    }
    CHECK(std::abs(acc) < 1e-9);
  }
}

TEST_CASE("temporal self-convergence is fourth order") {
  auto sp = build_space(3, 16);
  Discretization d(sp);
  ManufacturedProblem mp;
  SolverConfig cfg;
  cfg.forcing_f = mp.f_fn();
  cfg.forcing_g = mp.g_fn();
  SerreSolver solver(d, cfg);
  auto mask = derive_mask(3);
  Eigen::VectorXd se(sp.N), su(sp.N);
  for (int j = 0; j < sp.N; ++j) {
    se[j] = mp.eta(j * sp.h, 0.0);
    su[j] = mp.u(j * sp.h, 0.0);
  }
  State init{apply(sp, mask, se).coeffs, apply(sp, mask, su).coeffs, 0.0};
  const double T = 0.05;
  auto integrate = [&](int steps) {
    State s = init;
    for (int k = 0; k < steps; ++k) s = solver.rk4_step(s, T / steps);
    return s;
  };
  State ref = integrate(256);
  std::vector<double> errs;
  for (int steps : {4, 8, 16, 32}) {
    State s = integrate(steps);
    errs.push_back((s.eta - ref.eta).norm() + (s.u - ref.u).norm());
  }
  const double slope = std::log(errs[0] / errs[3]) / std::log(8.0);
  CHECK(slope == doctest::Approx(4.0).epsilon(0.08));
}

TEST_CASE("unforced run conserves mass and respects the floor") {
  auto sp = build_space(3, 64);
  Discretization d(sp);
  auto mask = derive_mask(3);
  SolverConfig cfg;
  cfg.c0 = 0.9;
  cfg.dt = sp.h / 10.0;
  cfg.t_end = 0.2;
  auto res = simulate(
      d, mask, [](double x) { return 1.0 + 0.1 * std::sin(kTwoPi * x); },
      [](double) { return 0.0; }, cfg);
  CHECK(!res.violation.has_value());
  CHECK(!res.floor_breached);
  CHECK(res.min_depth >= cfg.c0 / 8.0);
  double drift = 0.0;
  for (const auto& rec : res.records) {
    drift = std::max(drift, std::abs(rec.mass - res.records.front().mass));
  }
  CHECK(drift <= 1e-10);
}

TEST_CASE("steady simulate keeps energy constant") {
  auto sp = build_space(3, 32);
  Discretization d(sp);
  auto mask = derive_mask(3);
  SolverConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 0.05;
  auto res = simulate(
      d, mask, [](double) { return 1.0; }, [](double) { return 0.0; }, cfg);
  double spread = 0.0;
  for (const auto& rec : res.records) {
    spread = std::max(spread,
                      std::abs(rec.energy - res.records.front().energy));
  }
  CHECK(spread < 1e-12);
  CHECK((res.final_state.eta - Eigen::VectorXd::Ones(sp.N)).cwiseAbs()
            .maxCoeff() < 1e-13);
}
