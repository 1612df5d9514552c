#pragma once

#include <random>

#include <Eigen/Dense>

namespace cablemass::testing {

inline Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols,
                                     unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> dist;
  Eigen::MatrixXd M(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) M(i, j) = dist(gen);
  }
  return M;
}

/// Random matrix shifted so every eigenvalue has real part <= -1.
inline Eigen::MatrixXd random_stable(Eigen::Index n, unsigned seed) {
  Eigen::MatrixXd M = random_matrix(n, n, seed);
  const double radius = M.jacobiSvd().singularValues()(0);
  M.diagonal().array() -= radius + 1.0;
  return M;
}

/// Brute-force Lyapunov oracle: (I (x) A + A (x) I) vec(X) = -vec(W).
inline Eigen::MatrixXd kron_lyapunov(const Eigen::MatrixXd& A,
                                     const Eigen::MatrixXd& W) {
  const Eigen::Index n = A.rows();
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    K.block(i * n, i * n, n, n) += A;
    for (Eigen::Index j = 0; j < n; ++j) {
      K.block(i * n, j * n, n, n).diagonal().array() += A(i, j);
    }
  }
  const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(W.data(), n * n);
  const Eigen::VectorXd x = K.fullPivLu().solve(rhs);
  return Eigen::Map<const Eigen::MatrixXd>(x.data(), n, n);
}

inline double rel_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).norm() / std::max(b.norm(), 1e-300);
}

}  // namespace cablemass::testing
