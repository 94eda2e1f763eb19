#include "serre/quasiinterp.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "serre/assembly.hpp"

namespace serre {
namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

int check_derivative_orders(const SplineSpace& space, int nu, int kappa) {
  if (nu < 0 || kappa < 0 || nu + kappa > space.r - 1) {
    throw std::invalid_argument(
        "probe: need nu, kappa >= 0 and nu + kappa <= r-1");
  }
  return nu + kappa;
}

// Gram matrix G(j,l) = (B_j^(nu), B_l^(kappa)), dense.
Eigen::MatrixXd gram(const Discretization& d, int nu, int kappa) {
  return d.weighted_form(
              Eigen::MatrixXd::Ones(d.space().N, d.rule().q), nu, kappa)
      .dense();
}

// Leibniz rule for the kappa-th derivative of f * g^(nu).
double product_derivative(const SmoothFn& f, const SmoothFn& g, int nu,
                          int kappa, double x) {
  double acc = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= kappa; ++j) {
    acc += binom * f(x, j) * g(x, nu + kappa - j);
    binom = binom * (kappa - j) / (j + 1);
  }
  return acc;
}

}  // namespace

QIMask derive_mask(int r) {
  if (r < 2 || r > 8) {
    throw std::invalid_argument("derive_mask: need 2 <= r <= 8");
  }
  QIMask mask;
  mask.r = r;
  if (r == 2) {
    // Hat splines: B_j(x_i) = delta_{i,j+1}, so nodal interpolation is the
    // single-tap mask at the support center.
    mask.offsets = {1};
    mask.coeffs = Eigen::VectorXd::Ones(1);
    return mask;
  }
  // Gram sequence g_m = (B_0, B_m)/h = M_{2r}(m + r) and the even Taylor
  // coefficients of its symbol sum_m g_m cos(m xi).
  const int S = r;
  Eigen::VectorXd taylor = Eigen::VectorXd::Zero(S);
  for (int m = -(r - 1); m <= r - 1; ++m) {
    const double gm = cardinal_bspline(2 * r, m + r);
    for (int s = 0; s < S; ++s) {
      taylor[s] += gm * std::pow(m, 2 * s) * (s % 2 ? -1.0 : 1.0) /
                   factorial(2 * s);
    }
  }
  // Formal series W(xi^2) with W^2 * symbol = 1 through order xi^(2r-2).
  Eigen::VectorXd winv = Eigen::VectorXd::Zero(S);
  winv[0] = 1.0 / std::sqrt(taylor[0]);
  for (int s = 1; s < S; ++s) {
    double acc = 0.0;
    for (int i = 0; i < S; ++i) {
      for (int j = 0; j < S; ++j) {
        for (int k = 0; k < S; ++k) {
          if (i + j + k != s) continue;
          if (i == s && j == 0 && k == 0) continue;
          if (j == s && i == 0 && k == 0) continue;
          acc += winv[i] * winv[j] * taylor[k];
        }
      }
    }
    winv[s] = -acc / (2.0 * winv[0] * taylor[0]);
  }
  // Palindromic stencil about r/2 with r free weights.
  const int L = r;
  int first;
  if (r % 2 == 0) {
    first = r / 2 - (L - 1);  // odd length 2L-1
  } else {
    first = (r + 1) / 2 - L;  // even length 2L
  }
  const int len = (r % 2 == 0) ? 2 * L - 1 : 2 * L;
  const int nfree = (len + 1) / 2;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(S, nfree);
  for (int p = 0; p < nfree; ++p) {
    for (int i = 0; i < len; ++i) {
      if (std::min(i, len - 1 - i) != p) continue;
      const double cen = first + i - r / 2.0;
      for (int s = 0; s < S; ++s) {
        A(s, p) += std::pow(cen, 2 * s) * (s % 2 ? -1.0 : 1.0) /
                   factorial(2 * s);
      }
    }
  }
  Eigen::VectorXd p = A.colPivHouseholderQr().solve(winv);
  if ((A * p - winv).cwiseAbs().maxCoeff() > 1e-9) {
    throw std::runtime_error("derive_mask: moment system not solvable");
  }
  mask.offsets.resize(len);
  mask.coeffs.resize(len);
  for (int i = 0; i < len; ++i) {
    mask.offsets[i] = first + i;
    mask.coeffs[i] = p[std::min(i, len - 1 - i)];
  }
  return mask;
}

SplineFn apply(const SplineSpace& space, const QIMask& mask,
               const Eigen::VectorXd& samples) {
  const int N = space.N;
  if (samples.size() != N) {
    throw std::invalid_argument("apply: expected " + std::to_string(N) +
                                " samples, got " +
                                std::to_string(samples.size()));
  }
  if (mask.r != space.r) {
    throw std::invalid_argument("apply: mask order does not match the space");
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(N);
  for (size_t k = 0; k < mask.offsets.size(); ++k) {
    for (int j = 0; j < N; ++j) {
      c[j] += mask.coeffs[k] * samples[((j + mask.offsets[k]) % N + N) % N];
    }
  }
  return SplineFn(space, c);
}

Eigen::MatrixXd mask_matrix(const SplineSpace& space, const QIMask& mask) {
  const int N = space.N;
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(N, N);
  for (size_t k = 0; k < mask.offsets.size(); ++k) {
    for (int j = 0; j < N; ++j) {
      W(j, ((j + mask.offsets[k]) % N + N) % N) += mask.coeffs[k];
    }
  }
  return W;
}

double probe_superconvergence(const SplineSpace& space, const QIMask& mask,
                              const SmoothFn& w, int nu, int kappa) {
  const int N = space.N;
  const int order = check_derivative_orders(space, nu, kappa);
  Eigen::VectorXd samples(N), target(N);
  for (int j = 0; j < N; ++j) {
    const double x = j * space.h;
    samples[j] = w(x, 0);
    target[j] = w(x, order);
  }
  const Eigen::VectorXd c = apply(space, mask, samples).coeffs;
  const Eigen::MatrixXd W = mask_matrix(space, mask);
  Discretization d(space, space.r + 2);
  const Eigen::MatrixXd G = gram(d, nu, kappa);
  const double sign = (kappa % 2 == 0) ? 1.0 : -1.0;
  const Eigen::VectorXd b =
      W.transpose() * (G.transpose() * c) - sign * space.h * target;
  return b.cwiseAbs().maxCoeff();
}

double probe_product(const SplineSpace& space, const QIMask& mask,
                     const SmoothFn& f, const SmoothFn& g, int nu, int kappa) {
  const int N = space.N;
  check_derivative_orders(space, nu, kappa);
  // High per-cell order: f is not polynomial, and the probe targets values
  // far below discretization scale.
  Discretization d(space, 12);
  Eigen::VectorXd gsamples(N), psamples(N);
  for (int j = 0; j < N; ++j) {
    const double x = j * space.h;
    gsamples[j] = g(x, 0);
    psamples[j] = product_derivative(f, g, nu, kappa, x);
  }
  const Eigen::VectorXd qg = apply(space, mask, gsamples).coeffs;
  const Eigen::MatrixXd W = mask_matrix(space, mask);
  Eigen::MatrixXd fq(N, d.rule().q);
  for (int cell = 0; cell < N; ++cell) {
    for (int qi = 0; qi < d.rule().q; ++qi) {
      fq(cell, qi) = f(d.quad_points()(cell, qi), 0);
    }
  }
  const Eigen::MatrixXd qg_nu = d.values(qg, nu);
  const Eigen::VectorXd term1 =
      W.transpose() * d.load(fq.cwiseProduct(qg_nu), kappa);
  const Eigen::VectorXd qp = apply(space, mask, psamples).coeffs;
  const Eigen::VectorXd term2 =
      W.transpose() * (d.mass().dense() * qp);
  const double sign = (kappa % 2 == 0) ? 1.0 : -1.0;
  return (term1 - sign * term2).cwiseAbs().maxCoeff();
}

}  // namespace serre
