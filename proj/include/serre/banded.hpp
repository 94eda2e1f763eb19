#pragma once

#include <memory>

#include <Eigen/Core>
#include <Eigen/LU>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

namespace serre {

/// Cyclic (circulant-structured sparsity, general entries) banded matrix:
/// entry (i,j) may be nonzero only when the cyclic distance of i and j is at
/// most bw. Stored by diagonals: data(i, bw+d) holds entry (i, (i+d) mod n).
struct BandedCyclicMatrix {
  int n = 0;
  int bw = 0;
  Eigen::MatrixXd data;  // n x (2bw+1)

  static BandedCyclicMatrix zero(int n, int bw);

  /// Signed cyclic offset of column j relative to row i, or throws when the
  /// pair lies outside the band.
  int offset(int i, int j) const;

  double coeff(int i, int j) const;            // 0 outside the band
  double& entry(int i, int d);                 // d in [-bw, bw]
  void add(int i, int j, double v);            // throws outside the band

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd dense() const;
  bool is_symmetric(double tol = 0.0) const;

  BandedCyclicMatrix& operator+=(const BandedCyclicMatrix& other);
  friend BandedCyclicMatrix operator+(BandedCyclicMatrix a,
                                      const BandedCyclicMatrix& b) {
    a += b;
    return a;
  }
};

/// Factorization of a banded cyclic matrix: sparse LU of the band interior
/// plus a rank-2bw Woodbury correction absorbing the wrap-around corners.
class CyclicFactor {
 public:
  explicit CyclicFactor(const BandedCyclicMatrix& A);
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
  int size() const { return n_; }

 private:
  int n_ = 0;
  int m_ = 0;  // correction rank
  Eigen::SparseLU<Eigen::SparseMatrix<double>> band_;
  Eigen::MatrixXd w_;         // m x n corner coupling
  Eigen::MatrixXd binv_u_;    // n x m
  Eigen::PartialPivLU<Eigen::MatrixXd> cap_;
};

Eigen::VectorXd solve_banded_cyclic(const BandedCyclicMatrix& A,
                                    const Eigen::VectorXd& b);

}  // namespace serre
