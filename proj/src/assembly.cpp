#include "serre/assembly.hpp"

#include <cmath>
#include <stdexcept>

namespace serre {

Discretization::Discretization(const SplineSpace& space, int q)
    : sp_(space), rule_(gauss_rule(q > 0 ? q : space.r + 2)) {
  const int r = sp_.r, N = sp_.N, nq = rule_.q;
  const double h = sp_.h;
  const int kmax = r - 1;
  basis_.resize(kmax + 1);
  for (int k = 0; k <= kmax; ++k) {
    basis_[k].resize(r, nq);
    const double scale = std::pow(1.0 / h, k);
    for (int a = 0; a < r; ++a) {
      const int j = -r + 1 + a;  // basis index relative to the cell
      for (int qi = 0; qi < nq; ++qi) {
        basis_[k](a, qi) = cardinal_bspline(r, rule_.points[qi] - j, k) * scale;
      }
    }
  }
  xq_.resize(N, nq);
  for (int cell = 0; cell < N; ++cell) {
    for (int qi = 0; qi < nq; ++qi) {
      xq_(cell, qi) = (cell + rule_.points[qi]) * h;
    }
  }
  mass_ = weighted_form(Eigen::MatrixXd::Ones(N, nq));
  mass_factor_ = std::make_shared<const CyclicFactor>(mass_);
}

Eigen::MatrixXd Discretization::values(const Eigen::VectorXd& coeffs,
                                       int k) const {
  const int r = sp_.r, N = sp_.N, nq = rule_.q;
  if (coeffs.size() != N) {
    throw std::invalid_argument("Discretization::values: coefficient size");
  }
  if (k < 0 || k >= static_cast<int>(basis_.size())) {
    throw std::invalid_argument(
        "Discretization::values: derivative order out of tabulated range");
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(N, nq);
  for (int cell = 0; cell < N; ++cell) {
    for (int a = 0; a < r; ++a) {
      const int j = ((cell - r + 1 + a) % N + N) % N;
      out.row(cell) += coeffs[j] * basis_[k].row(a);
    }
  }
  return out;
}

Eigen::MatrixXd Discretization::sample(const ScalarFn& f) const {
  Eigen::MatrixXd out(xq_.rows(), xq_.cols());
  for (int i = 0; i < xq_.rows(); ++i) {
    for (int j = 0; j < xq_.cols(); ++j) out(i, j) = f(xq_(i, j));
  }
  return out;
}

Eigen::MatrixXd Discretization::sample(const ForcingFn& f, double t) const {
  Eigen::MatrixXd out(xq_.rows(), xq_.cols());
  for (int i = 0; i < xq_.rows(); ++i) {
    for (int j = 0; j < xq_.cols(); ++j) out(i, j) = f(xq_(i, j), t);
  }
  return out;
}

BandedCyclicMatrix Discretization::weighted_form(const Eigen::MatrixXd& wq,
                                                 int k1, int k2,
                                                 double scale) const {
  const int r = sp_.r, N = sp_.N, nq = rule_.q;
  if (wq.rows() != N || wq.cols() != nq) {
    throw std::invalid_argument("Discretization::weighted_form: weight shape");
  }
  BandedCyclicMatrix A = BandedCyclicMatrix::zero(N, r - 1);
  for (int cell = 0; cell < N; ++cell) {
    for (int a = 0; a < r; ++a) {
      const int ia = ((cell - r + 1 + a) % N + N) % N;
      for (int b = 0; b < r; ++b) {
        double acc = 0.0;
        for (int qi = 0; qi < nq; ++qi) {
          acc += rule_.weights[qi] * wq(cell, qi) * basis_[k1](a, qi) *
                 basis_[k2](b, qi);
        }
        A.entry(ia, b - a) += scale * sp_.h * acc;
      }
    }
  }
  return A;
}

Eigen::VectorXd Discretization::load(const Eigen::MatrixXd& vq, int k,
                                     double scale) const {
  const int r = sp_.r, N = sp_.N, nq = rule_.q;
  if (vq.rows() != N || vq.cols() != nq) {
    throw std::invalid_argument("Discretization::load: value shape");
  }
  Eigen::VectorXd l = Eigen::VectorXd::Zero(N);
  for (int cell = 0; cell < N; ++cell) {
    for (int a = 0; a < r; ++a) {
      const int ia = ((cell - r + 1 + a) % N + N) % N;
      double acc = 0.0;
      for (int qi = 0; qi < nq; ++qi) {
        acc += rule_.weights[qi] * vq(cell, qi) * basis_[k](a, qi);
      }
      l[ia] += scale * sp_.h * acc;
    }
  }
  return l;
}

Eigen::VectorXd Discretization::project(const Eigen::MatrixXd& vq) const {
  return mass_factor_->solve(load(vq));
}

Eigen::VectorXd Discretization::grad_project(const Eigen::MatrixXd& vq) const {
  return mass_factor_->solve(load(vq, 1, 1.0 / 3.0));
}

double Discretization::l2(const Eigen::VectorXd& coeffs) const {
  const Eigen::MatrixXd v = values(coeffs, 0);
  double acc = 0.0;
  for (int cell = 0; cell < sp_.N; ++cell) {
    for (int qi = 0; qi < rule_.q; ++qi) {
      acc += rule_.weights[qi] * v(cell, qi) * v(cell, qi);
    }
  }
  return std::sqrt(sp_.h * acc);
}

double Discretization::h1(const Eigen::VectorXd& coeffs) const {
  const Eigen::MatrixXd v = values(coeffs, 0);
  const Eigen::MatrixXd d = values(coeffs, 1);
  double acc = 0.0;
  for (int cell = 0; cell < sp_.N; ++cell) {
    for (int qi = 0; qi < rule_.q; ++qi) {
      acc += rule_.weights[qi] *
             (v(cell, qi) * v(cell, qi) + d(cell, qi) * d(cell, qi));
    }
  }
  return std::sqrt(sp_.h * acc);
}

BandedCyclicMatrix weighted_mass(const SplineSpace& space, const ScalarFn& w,
                                 int q) {
  Discretization d(space, q);
  return d.weighted_form(d.sample(w));
}

BandedCyclicMatrix weighted_grad_form(const SplineSpace& space,
                                      const ScalarFn& w, int q) {
  Discretization d(space, q);
  return d.weighted_form(d.sample(w), 1, 1, 1.0 / 3.0);
}

SplineFn l2_project(const SplineSpace& space, const ScalarFn& f, int q) {
  Discretization d(space, q > 0 ? q : space.r + 3);
  return SplineFn(space, d.project(d.sample(f)));
}

SplineFn f_h(const SplineSpace& space, const ScalarFn& v, int q) {
  Discretization d(space, q > 0 ? q : space.r + 3);
  return SplineFn(space, d.grad_project(d.sample(v)));
}

}  // namespace serre
