#include "cablemass/balance.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cablemass/error.hpp"

namespace cablemass {

namespace {

struct SquareRootFactors {
  Eigen::MatrixXd U;  // P = U U^T
  Eigen::MatrixXd L;  // Q = L L^T
  SvdResult<double> hankel;  // of L^T U
};

SquareRootFactors factor(const Eigen::MatrixXd& P, const Eigen::MatrixXd& Q,
                         const LinalgTolerances& tol) {
  if (P.rows() != Q.rows() || P.cols() != Q.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "Gramian sizes differ");
  }
  SquareRootFactors f;
  f.U = psd_factor(P, tol);
  f.L = psd_factor(Q, tol);
  f.hankel = svd(f.L.transpose() * f.U);
  return f;
}

// Count of singular values that are numerically nonzero.
Eigen::Index numerical_rank(const Eigen::VectorXd& sigma) {
  if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
  const double cutoff =
      sigma(0) * std::numeric_limits<double>::epsilon() * sigma.size();
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;
  return rank;
}

}  // namespace

Gramians gramians(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                  const Eigen::MatrixXd& C) {
  if (A.rows() != B.rows() || A.cols() != C.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "A, B, C sizes disagree");
  }
  Gramians g;
  g.P = solve_lyapunov(A, B * B.transpose());
  g.Q = solve_lyapunov(A.transpose(), C.transpose() * C);
  return g;
}

Gramians gramians(const StateSpaceSystem& sys) {
  return gramians(sys.A, sys.B, sys.C);
}

Eigen::VectorXd hankel_values(const Eigen::MatrixXd& P, const Eigen::MatrixXd& Q,
                              const LinalgTolerances& tol) {
  return factor(P, Q, tol).hankel.sigma;
}

BalanceResult square_root_transform(const Eigen::MatrixXd& P,
                                    const Eigen::MatrixXd& Q, int r,
                                    const BalanceOptions& options) {
  const SquareRootFactors f = factor(P, Q, options.linalg);
  const Eigen::Index rank = numerical_rank(f.hankel.sigma);
  if (r < 1 || r > rank) {
    throw Error(ErrorCode::kRankDeficient,
                "requested order " + std::to_string(r) +
                    " exceeds numerical rank " + std::to_string(rank));
  }
  const Eigen::VectorXd& sigma = f.hankel.sigma;
  if (r < rank && !options.allow_plateau_split &&
      sigma(r - 1) - sigma(r) <= options.plateau_tol * sigma(r - 1)) {
    throw Error(ErrorCode::kPlateauSplit,
                "sigma_r and sigma_{r+1} are equal; truncation would split a "
                "Hankel plateau");
  }

  BalanceResult out;
  out.P = P;
  out.Q = Q;
  out.hsv = sigma.head(rank);
  out.r = r;
  const Eigen::VectorXd inv_sqrt = sigma.head(r).cwiseSqrt().cwiseInverse();
  // L^T U = Z S Y^T, Tr = U Y_r S_r^{-1/2}, Sr = S_r^{-1/2} Z_r^T L^T
  out.Tr = f.U * f.hankel.V.leftCols(r) * inv_sqrt.asDiagonal();
  out.Sr = inv_sqrt.asDiagonal() * f.hankel.U.leftCols(r).transpose() *
           f.L.transpose();
  return out;
}

BalanceResult balance(const StateSpaceSystem& sys, int r,
                      const BalanceOptions& options) {
  const Gramians g = gramians(sys);
  return square_root_transform(g.P, g.Q, r, options);
}

ReducedSystem reduce(const StateSpaceSystem& sys, const BalanceResult& bal) {
  if (bal.Tr.rows() != sys.states() || bal.Sr.cols() != sys.states() ||
      bal.Tr.cols() != bal.Sr.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "projection does not match the system size");
  }
  ReducedSystem red;
  red.Ar = bal.Sr * sys.A * bal.Tr;
  red.Br = bal.Sr * sys.B;
  red.Cr = sys.C * bal.Tr;
  red.nl_in_weights = bal.Tr.row(sys.nl_state_index).transpose();
  red.nl_out_weights = bal.Sr.col(sys.nl_target_index);
  red.nl_coeff = sys.nl_coeff;
  return red;
}

double error_bound(const Eigen::VectorXd& hsv, int r) {
  if (r < 0 || r > hsv.size()) {
    throw Error(ErrorCode::kOutOfRange, "r outside [0, len(hsv)]");
  }
  return 2.0 * hsv.tail(hsv.size() - r).sum();
}

int suggest_r(const Eigen::VectorXd& hsv, double tol) {
  for (int r = 1; r <= hsv.size(); ++r) {
    if (error_bound(hsv, r) <= tol) return r;
  }
  return static_cast<int>(hsv.size());
}

Eigen::MatrixXcd transfer_function(const Eigen::MatrixXd& A,
                                   const Eigen::MatrixXd& B,
                                   const Eigen::MatrixXd& C,
                                   std::complex<double> s) {
  if (A.rows() != A.cols() || A.rows() != B.rows() || A.cols() != C.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "A, B, C sizes disagree");
  }
  Eigen::MatrixXcd shifted = -A.cast<std::complex<double>>();
  shifted.diagonal().array() += s;
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
  if (!(lu.rcond() > std::numeric_limits<double>::epsilon())) {
    throw Error(ErrorCode::kSingularShift, "sI - A is singular");
  }
  return C.cast<std::complex<double>>() *
         lu.solve(B.cast<std::complex<double>>());
}

double max_frequency_error(const StateSpaceSystem& sys,
                           const ReducedSystem& red,
                           const Eigen::VectorXd& omegas) {
  double worst = 0.0;
  for (const double w : omegas) {
    const std::complex<double> s(0.0, w);
    const Eigen::MatrixXcd diff = transfer_function(sys.A, sys.B, sys.C, s) -
                                  transfer_function(red.Ar, red.Br, red.Cr, s);
    const Eigen::JacobiSVD<Eigen::MatrixXcd> sv(diff);
    worst = std::max(worst, sv.singularValues()(0));
  }
  return worst;
}

Eigen::VectorXd logspace(double lo_exp, double hi_exp, int count) {
  Eigen::VectorXd out(count);
  for (int k = 0; k < count; ++k) {
    const double e =
        count == 1 ? lo_exp : lo_exp + (hi_exp - lo_exp) * k / (count - 1);
    out(k) = std::pow(10.0, e);
  }
  return out;
}

}  // namespace cablemass
