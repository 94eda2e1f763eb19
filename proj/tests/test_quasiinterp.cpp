#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "serre/quasiinterp.hpp"
#include "serre/rates.hpp"
#include "serre/spline.hpp"

using namespace serre;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double qi_l2_error(const SplineSpace& sp, const QIMask& mask,
                   const ScalarFn& v) {
  Eigen::VectorXd s(sp.N);
  for (int j = 0; j < sp.N; ++j) s[j] = v(j * sp.h);
  auto q = apply(sp, mask, s);
  const int n = 40 * sp.N;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = (i + 0.5) / n;
    const double d = eval(q, x) - v(x);
    acc += d * d / n;
  }
  return std::sqrt(acc);
}

}  // namespace

TEST_CASE("mask invariants: sum one, palindromic, r=2 nodal") {
  for (int r = 2; r <= 8; ++r) {
    auto mask = derive_mask(r);
    CHECK(std::abs(mask.coeffs.sum() - 1.0) < 1e-13);
    const int len = static_cast<int>(mask.offsets.size());
    for (int i = 0; i < len; ++i) {
      CHECK(mask.coeffs[i] ==
            doctest::Approx(mask.coeffs[len - 1 - i]).epsilon(1e-13));
      // stencil symmetric about the support center r/2
      CHECK(mask.offsets[i] + mask.offsets[len - 1 - i] == r);
    }
  }
  auto m2 = derive_mask(2);
  CHECK(m2.offsets.size() == 1);
  CHECK(m2.coeffs[0] == doctest::Approx(1.0));
  CHECK_THROWS(derive_mask(1));
  CHECK_THROWS(derive_mask(9));
}

TEST_CASE("constant samples give the constant-one spline") {
  for (int r : {2, 3, 4}) {
    auto sp = build_space(r, 16);
    auto mask = derive_mask(r);
    auto q = apply(sp, mask, Eigen::VectorXd::Ones(sp.N));
    CHECK((q.coeffs - Eigen::VectorXd::Ones(sp.N)).cwiseAbs().maxCoeff() <
          1e-13);
  }
}

TEST_CASE("nodal exactness on grid polynomials") {
  // Periodized low-degree polynomial data: sample, apply, compare at nodes.
  for (int r : {3, 4}) {
    auto sp = build_space(r, 32);
    auto mask = derive_mask(r);
    for (int deg = 0; deg < r; ++deg) {
      Eigen::VectorXd s(sp.N);
      // centered monomial, compared away from the wrap seam
      for (int j = 0; j < sp.N; ++j) {
        s[j] = std::pow(j * sp.h - 0.5, deg);
      }
      auto q = apply(sp, mask, s);
      for (int j = sp.N / 5; j < 4 * sp.N / 5; ++j) {
        const double x = j * sp.h;
        CHECK(std::abs(eval(q, x) - std::pow(x - 0.5, deg)) < 1e-10);
      }
    }
  }
}

TEST_CASE("sample length mismatch is rejected") {
  auto sp = build_space(3, 16);
  auto mask = derive_mask(3);
  CHECK_THROWS(apply(sp, mask, Eigen::VectorXd::Ones(15)));
}

TEST_CASE("L2 approximation order r and H1 order r-1") {
  ScalarFn v = [](double x) { return std::sin(kTwoPi * x); };
  for (int r : {2, 3}) {
    auto mask = derive_mask(r);
    std::vector<double> hs, l2s, h1s;
    for (int N : {16, 32, 64, 128}) {
      auto sp = build_space(r, N);
      hs.push_back(sp.h);
      l2s.push_back(qi_l2_error(sp, mask, v));
      Eigen::VectorXd s(sp.N);
      for (int j = 0; j < sp.N; ++j) s[j] = v(j * sp.h);
      auto q = apply(sp, mask, s);
      double acc = 0.0;
      const int n = 40 * N;
      for (int i = 0; i < n; ++i) {
        const double x = (i + 0.5) / n;
        const double d = eval(q, x, 1) - kTwoPi * std::cos(kTwoPi * x);
        acc += d * d / n;
      }
      h1s.push_back(std::sqrt(acc));
    }
    CHECK(fit_rate(hs, l2s).slope == doctest::Approx(r).epsilon(0.12));
    CHECK(fit_rate(hs, h1s).slope == doctest::Approx(r - 1.0).epsilon(0.16));
  }
}

TEST_CASE("superconvergence probe is zero for constants") {
  auto sp = build_space(3, 16);
  auto mask = derive_mask(3);
  SmoothFn one = [](double, int k) { return k == 0 ? 1.0 : 0.0; };
  CHECK(probe_superconvergence(sp, mask, one, 0, 0) < 1e-12);
}

TEST_CASE("product probe is zero for constants") {
  auto sp = build_space(3, 16);
  auto mask = derive_mask(3);
  SmoothFn one = [](double, int k) { return k == 0 ? 1.0 : 0.0; };
  CHECK(probe_product(sp, mask, one, one, 0, 0) < 1e-12);
}

TEST_CASE("probe derivative orders are validated") {
  auto sp = build_space(3, 16);
  auto mask = derive_mask(3);
  SmoothFn one = [](double, int k) { return k == 0 ? 1.0 : 0.0; };
  CHECK_THROWS(probe_superconvergence(sp, mask, one, 2, 1));
  CHECK_THROWS(probe_product(sp, mask, one, one, -1, 0));
}

TEST_CASE("sup-norm stability across meshes") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  auto mask = derive_mask(3);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double a1 = amp(rng), a2 = amp(rng), a3 = amp(rng);
    ScalarFn v = [a1, a2, a3](double x) {
      return a1 * std::sin(kTwoPi * x) + a2 * std::cos(2.0 * kTwoPi * x) +
             a3 * std::sin(3.0 * kTwoPi * x);
    };
    double vmax = 0.0;
    for (int i = 0; i < 2000; ++i) {
      vmax = std::max(vmax, std::abs(v(i / 2000.0)));
    }
    for (int N : {16, 64, 256}) {
      auto sp = build_space(3, N);
      Eigen::VectorXd s(N);
      for (int j = 0; j < N; ++j) s[j] = v(j * sp.h);
      auto q = apply(sp, mask, s);
      worst = std::max(worst, norms(q, 8).linf / vmax);
    }
  }
  CHECK(worst < 2.0);
}

TEST_CASE("depth floor transfers through the quasiinterpolant") {
  auto mask = derive_mask(3);
  ScalarFn v = [](double x) { return 1.0 + 0.5 * std::sin(kTwoPi * x); };
  for (int N : {32, 64, 128}) {
    auto sp = build_space(3, N);
    Eigen::VectorXd s(N);
    for (int j = 0; j < N; ++j) s[j] = v(j * sp.h);
    auto q = apply(sp, mask, s);
    double mn = 1e300;
    for (int i = 0; i < 20 * N; ++i) {
      mn = std::min(mn, eval(q, (i + 0.5) / (20 * N)));
    }
    CHECK(mn >= 0.5);
  }
}
