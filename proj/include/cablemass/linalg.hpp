#pragma once

// Dense real linear algebra used by balancing: real Schur form, eigenvalues,
// SVD, rank-revealing PSD factors and a Bartels-Stewart Lyapunov solver.
// Everything is templated on the scalar type and accepts any Eigen dense
// expression.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cablemass/error.hpp"

namespace cablemass {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
struct SchurForm {
  MatrixX<Scalar> Q;  // orthogonal
  MatrixX<Scalar> T;  // quasi-upper-triangular
};

template <typename Scalar>
struct SvdResult {
  MatrixX<Scalar> U;
  VectorX<Scalar> sigma;  // nonincreasing, nonnegative
  MatrixX<Scalar> V;
};

struct LinalgTolerances {
  /// Eigenvalues below `rank_drop * largest` are dropped by psd_factor.
  double rank_drop = 1e-12;
  /// Negative eigenvalues down to `-negative_slack * |P|` count as zero.
  double negative_slack = 1e-8;
  /// Relative asymmetry accepted by psd_factor.
  double symmetry = 1e-10;
};

namespace internal {

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& A, const char* what) {
  if (A.rows() != A.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + " requires a square matrix");
  }
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& A, const char* what) {
  if (!A.allFinite()) {
    throw Error(ErrorCode::kNonFiniteState,
                std::string(what) + " received non-finite entries");
  }
}

/// Start indices and sizes (1 or 2) of the diagonal blocks of a real Schur
/// factor.
template <typename Scalar>
std::vector<std::pair<Eigen::Index, Eigen::Index>> schur_blocks(
    const MatrixX<Scalar>& T) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks;
  const Eigen::Index n = T.rows();
  Eigen::Index i = 0;
  while (i < n) {
    if (i + 1 < n && T(i + 1, i) != Scalar(0)) {
      blocks.emplace_back(i, 2);
      i += 2;
    } else {
      blocks.emplace_back(i, 1);
      i += 1;
    }
  }
  return blocks;
}

}  // namespace internal

template <typename Derived>
SchurForm<typename Derived::Scalar> real_schur(
    const Eigen::MatrixBase<Derived>& A) {
  using Scalar = typename Derived::Scalar;
  internal::require_square(A, "real_schur");
  internal::require_finite(A, "real_schur");
  const Eigen::Index n = A.rows();
  SchurForm<Scalar> out;
  if (n == 0) return out;
  Eigen::RealSchur<MatrixX<Scalar>> schur(n);
  schur.setMaxIterations(std::max<Eigen::Index>(100 * n, 100));
  schur.compute(A.eval(), /*computeU=*/true);
  if (schur.info() != Eigen::Success) {
    throw Error(ErrorCode::kNonConvergence,
                "real Schur QR iteration exceeded its budget");
  }
  out.Q = schur.matrixU();
  out.T = schur.matrixT();
  // Zero everything below the first subdiagonal.
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j + 2; i < n; ++i) out.T(i, j) = Scalar(0);
  }
  return out;
}

/// Eigenvalues read from the diagonal blocks of a real Schur factor.
template <typename Scalar>
std::vector<std::complex<Scalar>> schur_eigenvalues(const MatrixX<Scalar>& T) {
  std::vector<std::complex<Scalar>> eig;
  eig.reserve(static_cast<std::size_t>(T.rows()));
  for (const auto& [i, size] : internal::schur_blocks(T)) {
    if (size == 1) {
      eig.emplace_back(T(i, i), Scalar(0));
      continue;
    }
    const Scalar a = T(i, i), b = T(i, i + 1);
    const Scalar c = T(i + 1, i), d = T(i + 1, i + 1);
    const Scalar mean = (a + d) / 2;
    const Scalar half_diff = (a - d) / 2;
    const Scalar disc = half_diff * half_diff + b * c;
    if (disc < 0) {
      const Scalar im = std::sqrt(-disc);
      eig.emplace_back(mean, im);
      eig.emplace_back(mean, -im);
    } else {
      const Scalar re = std::sqrt(disc);
      eig.emplace_back(mean + re, Scalar(0));
      eig.emplace_back(mean - re, Scalar(0));
    }
  }
  return eig;
}

template <typename Derived>
std::vector<std::complex<typename Derived::Scalar>> eigenvalues(
    const Eigen::MatrixBase<Derived>& A) {
  return schur_eigenvalues(real_schur(A).T);
}

template <typename Derived>
SvdResult<typename Derived::Scalar> svd(const Eigen::MatrixBase<Derived>& M) {
  using Scalar = typename Derived::Scalar;
  internal::require_finite(M, "svd");
  SvdResult<Scalar> out;
  if (M.rows() == 0 || M.cols() == 0) {
    out.U.setIdentity(M.rows(), 0);
    out.V.setIdentity(M.cols(), 0);
    out.sigma.resize(0);
    return out;
  }
  Eigen::JacobiSVD<MatrixX<Scalar>> jsvd(
      M.eval(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (jsvd.info() != Eigen::Success) {
    throw Error(ErrorCode::kNonConvergence, "SVD did not converge");
  }
  out.U = jsvd.matrixU();
  out.sigma = jsvd.singularValues();
  out.V = jsvd.matrixV();
  return out;
}

/// Returns F with F * F^T = P, keeping only eigen-directions above the rank
/// drop threshold. Columns are ordered by decreasing eigenvalue.
template <typename Derived>
MatrixX<typename Derived::Scalar> psd_factor(
    const Eigen::MatrixBase<Derived>& P, const LinalgTolerances& tol = {}) {
  using Scalar = typename Derived::Scalar;
  internal::require_square(P, "psd_factor");
  internal::require_finite(P, "psd_factor");
  const Eigen::Index n = P.rows();
  if (n == 0) return MatrixX<Scalar>(0, 0);
  const Scalar norm = P.norm();
  if (norm == Scalar(0)) return MatrixX<Scalar>(n, 0);
  if ((P - P.transpose()).norm() > Scalar(tol.symmetry) * norm) {
    throw Error(ErrorCode::kNotPsd, "matrix is not symmetric");
  }
  const MatrixX<Scalar> sym = (P + P.transpose()) / Scalar(2);
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> es(sym);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::kNonConvergence, "symmetric eigensolver failed");
  }
  const VectorX<Scalar>& lambda = es.eigenvalues();  // ascending
  if (lambda(0) < -Scalar(tol.negative_slack) * norm) {
    throw Error(ErrorCode::kNotPsd, "negative eigenvalue " +
                                        std::to_string(double(lambda(0))));
  }
  const Scalar cutoff = Scalar(tol.rank_drop) * lambda(n - 1);
  Eigen::Index rank = 0;
  while (rank < n && lambda(n - 1 - rank) > cutoff) ++rank;
  MatrixX<Scalar> F(n, rank);
  for (Eigen::Index k = 0; k < rank; ++k) {
    F.col(k) = es.eigenvectors().col(n - 1 - k) * std::sqrt(lambda(n - 1 - k));
  }
  return F;
}

/// Solves A X + X A^T + W = 0 for stable A (Bartels-Stewart).
template <typename DerivedA, typename DerivedW>
MatrixX<typename DerivedA::Scalar> solve_lyapunov(
    const Eigen::MatrixBase<DerivedA>& A, const Eigen::MatrixBase<DerivedW>& W) {
  using Scalar = typename DerivedA::Scalar;
  internal::require_square(A, "solve_lyapunov");
  internal::require_square(W, "solve_lyapunov");
  if (A.rows() != W.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "A and W sizes differ");
  }
  internal::require_finite(W, "solve_lyapunov");
  const Eigen::Index n = A.rows();
  if (n == 0) return MatrixX<Scalar>(0, 0);

  const SchurForm<Scalar> schur = real_schur(A);
  for (const auto& lambda : schur_eigenvalues(schur.T)) {
    if (!(lambda.real() < Scalar(0))) {
      throw Error(ErrorCode::kUnstableSystem,
                  "eigenvalue with real part " +
                      std::to_string(double(lambda.real())) + " >= 0");
    }
  }
  const MatrixX<Scalar>& T = schur.T;
  const MatrixX<Scalar> rhs = -(schur.Q.transpose() * W * schur.Q);
  MatrixX<Scalar> Y = MatrixX<Scalar>::Zero(n, n);
  const auto blocks = internal::schur_blocks(T);

  // T Y + Y T^T = rhs, solved block by block from the bottom-right corner.
  for (auto bj = blocks.rbegin(); bj != blocks.rend(); ++bj) {
    const auto [cj, q] = *bj;
    const Eigen::Index tail_j = cj + q;
    for (auto bi = blocks.rbegin(); bi != blocks.rend(); ++bi) {
      const auto [ri, p] = *bi;
      const Eigen::Index tail_i = ri + p;
      MatrixX<Scalar> R = rhs.block(ri, cj, p, q);
      if (tail_i < n) {
        R.noalias() -= T.block(ri, tail_i, p, n - tail_i) *
                       Y.block(tail_i, cj, n - tail_i, q);
      }
      if (tail_j < n) {
        R.noalias() -= Y.block(ri, tail_j, p, n - tail_j) *
                       T.block(cj, tail_j, q, n - tail_j).transpose();
      }
      // (I_q (x) T_ii + T_jj (x) I_p) vec(Y_ij) = vec(R)
      const MatrixX<Scalar> Tii = T.block(ri, ri, p, p);
      const MatrixX<Scalar> Tjj = T.block(cj, cj, q, q);
      MatrixX<Scalar> K = MatrixX<Scalar>::Zero(p * q, p * q);
      for (Eigen::Index b = 0; b < q; ++b) {
        K.block(b * p, b * p, p, p) += Tii;
        for (Eigen::Index a = 0; a < q; ++a) {
          K.block(b * p, a * p, p, p).diagonal().array() += Tjj(b, a);
        }
      }
      Eigen::JacobiSVD<MatrixX<Scalar>> small(K, Eigen::ComputeFullU |
                                                    Eigen::ComputeFullV);
      const VectorX<Scalar>& sv = small.singularValues();
      if (!(sv(sv.size() - 1) > std::numeric_limits<Scalar>::epsilon() * sv(0))) {
        throw Error(ErrorCode::kSingularBlock,
                    "degenerate Schur block in Lyapunov back-substitution");
      }
      const VectorX<Scalar> vecY =
          small.solve(Eigen::Map<const VectorX<Scalar>>(R.data(), p * q));
      Y.block(ri, cj, p, q) = Eigen::Map<const MatrixX<Scalar>>(vecY.data(), p, q);
    }
  }
  MatrixX<Scalar> X = schur.Q * Y * schur.Q.transpose();
  return (X + X.transpose()) / Scalar(2);
}

}  // namespace cablemass
