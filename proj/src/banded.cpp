#include "serre/banded.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace serre {

BandedCyclicMatrix BandedCyclicMatrix::zero(int n, int bw) {
  if (n < 1 || bw < 0) {
    throw std::invalid_argument("BandedCyclicMatrix: need n >= 1, bw >= 0");
  }
  if (n <= 2 * bw) {
    throw std::invalid_argument(
        "BandedCyclicMatrix: need n > 2*bw so cyclic offsets are unambiguous");
  }
  BandedCyclicMatrix A;
  A.n = n;
  A.bw = bw;
  A.data = Eigen::MatrixXd::Zero(n, 2 * bw + 1);
  return A;
}

int BandedCyclicMatrix::offset(int i, int j) const {
  int d = ((j - i) % n + n) % n;
  if (d > n / 2) d -= n;
  if (d < -bw || d > bw) {
    throw std::out_of_range("BandedCyclicMatrix: (" + std::to_string(i) + "," +
                            std::to_string(j) + ") outside band bw=" +
                            std::to_string(bw));
  }
  return d;
}

double BandedCyclicMatrix::coeff(int i, int j) const {
  int d = ((j - i) % n + n) % n;
  if (d > n / 2) d -= n;
  if (d < -bw || d > bw) return 0.0;
  return data(i, bw + d);
}

double& BandedCyclicMatrix::entry(int i, int d) { return data(i, bw + d); }

void BandedCyclicMatrix::add(int i, int j, double v) {
  data(i, bw + offset(i, j)) += v;
}

Eigen::VectorXd BandedCyclicMatrix::apply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    for (int d = -bw; d <= bw; ++d) {
      y[i] += data(i, bw + d) * x[((i + d) % n + n) % n];
    }
  }
  return y;
}

Eigen::MatrixXd BandedCyclicMatrix::dense() const {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int d = -bw; d <= bw; ++d) {
      D(i, ((i + d) % n + n) % n) += data(i, bw + d);
    }
  }
  return D;
}

bool BandedCyclicMatrix::is_symmetric(double tol) const {
  for (int i = 0; i < n; ++i) {
    for (int d = 1; d <= bw; ++d) {
      const int j = (i + d) % n;
      if (std::abs(data(i, bw + d) - data(j, bw - d)) > tol) return false;
    }
  }
  return true;
}

BandedCyclicMatrix& BandedCyclicMatrix::operator+=(
    const BandedCyclicMatrix& other) {
  if (n != other.n || bw != other.bw) {
    throw std::invalid_argument("BandedCyclicMatrix: shape mismatch in +=");
  }
  data += other.data;
  return *this;
}

CyclicFactor::CyclicFactor(const BandedCyclicMatrix& A) : n_(A.n), m_(2 * A.bw) {
  const int bw = A.bw;
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<size_t>(n_) * (2 * bw + 1));
  w_ = Eigen::MatrixXd::Zero(std::max(m_, 1), n_);
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n_, std::max(m_, 1));
  for (int i = 0; i < n_; ++i) {
    for (int d = -bw; d <= bw; ++d) {
      const double v = A.data(i, bw + d);
      const int j = i + d;
      if (j >= 0 && j < n_) {
        trips.emplace_back(i, j, v);
      } else {
        // Wrap-around corner entry: rows 0..bw-1 couple to the right edge,
        // rows n-bw..n-1 to the left edge. Rank-m correction A = B + U W.
        const int jw = ((j % n_) + n_) % n_;
        const int idx = (j < 0) ? i : bw + (i - (n_ - bw));
        u(i, idx) = 1.0;
        w_(idx, jw) += v;
      }
    }
  }
  Eigen::SparseMatrix<double> band(n_, n_);
  band.setFromTriplets(trips.begin(), trips.end());
  band_.compute(band);
  if (band_.info() != Eigen::Success) {
    throw std::runtime_error(
        "CyclicFactor: band factor numerically singular (sparse LU failed)");
  }
  if (m_ > 0) {
    binv_u_ = band_.solve(u);
    Eigen::MatrixXd cap =
        Eigen::MatrixXd::Identity(m_, m_) + w_ * binv_u_;
    cap_.compute(cap);
    const double pivot = cap_.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (!(pivot > 1e-14 * cap.cwiseAbs().maxCoeff())) {
      throw std::runtime_error(
          "CyclicFactor: corner correction singular, pivot magnitude " +
          std::to_string(pivot));
    }
  }
}

Eigen::VectorXd CyclicFactor::solve(const Eigen::VectorXd& b) const {
  if (b.size() != n_) {
    throw std::invalid_argument("CyclicFactor::solve: size mismatch");
  }
  Eigen::VectorXd y = band_.solve(b);
  if (m_ == 0) return y;
  return y - binv_u_ * cap_.solve(w_ * y);
}

Eigen::VectorXd solve_banded_cyclic(const BandedCyclicMatrix& A,
                                    const Eigen::VectorXd& b) {
  return CyclicFactor(A).solve(b);
}

}  // namespace serre
