#pragma once

// Balanced truncation by the square-root method.

#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "cablemass/linalg.hpp"
#include "cablemass/model.hpp"

namespace cablemass {

struct Gramians {
  Eigen::MatrixXd P;  // controllability: A P + P A^T + B B^T = 0
  Eigen::MatrixXd Q;  // observability:  A^T Q + Q A + C^T C = 0
};

struct BalanceResult {
  Eigen::MatrixXd P;
  Eigen::MatrixXd Q;
  Eigen::VectorXd hsv;  // all numerically nonzero Hankel singular values
  Eigen::MatrixXd Tr;   // 2n x r
  Eigen::MatrixXd Sr;   // r x 2n
  int r = 0;
};

/// Balanced-truncation ROM of the cable-mass system. The cubic term enters
/// only through the d_n row of Tr and the v_n column of Sr, stored here as
/// r-vectors so the reduced nonlinearity never touches full-order data.
struct ReducedSystem {
  Eigen::MatrixXd Ar;
  Eigen::VectorXd Br;
  Eigen::MatrixXd Cr;
  Eigen::VectorXd nl_out_weights;  // psi_i at the v_n entry, i = 1..r
  Eigen::VectorXd nl_in_weights;   // phi_j at the d_n entry, j = 1..r
  double nl_coeff = 0.0;

  int order() const { return static_cast<int>(Ar.rows()); }
};

struct BalanceOptions {
  LinalgTolerances linalg;
  /// Relative gap below which sigma_r and sigma_{r+1} count as equal.
  double plateau_tol = 1e-10;
  bool allow_plateau_split = false;
};

Gramians gramians(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                  const Eigen::MatrixXd& C);
Gramians gramians(const StateSpaceSystem& sys);

Eigen::VectorXd hankel_values(const Eigen::MatrixXd& P, const Eigen::MatrixXd& Q,
                              const LinalgTolerances& tol = {});

BalanceResult square_root_transform(const Eigen::MatrixXd& P,
                                    const Eigen::MatrixXd& Q, int r,
                                    const BalanceOptions& options = {});

/// Gramians plus square-root transform in one call.
BalanceResult balance(const StateSpaceSystem& sys, int r,
                      const BalanceOptions& options = {});

ReducedSystem reduce(const StateSpaceSystem& sys, const BalanceResult& bal);

/// 2 * sum_{i > r} sigma_i.
double error_bound(const Eigen::VectorXd& hsv, int r);

/// Smallest r whose error bound is at most tol.
int suggest_r(const Eigen::VectorXd& hsv, double tol);

/// C (sI - A)^{-1} B via an LU solve.
Eigen::MatrixXcd transfer_function(const Eigen::MatrixXd& A,
                                   const Eigen::MatrixXd& B,
                                   const Eigen::MatrixXd& C,
                                   std::complex<double> s);

/// Largest singular value of G(i w) - G_r(i w) over the given frequencies.
double max_frequency_error(const StateSpaceSystem& sys,
                           const ReducedSystem& red,
                           const Eigen::VectorXd& omegas);

Eigen::VectorXd logspace(double lo_exp, double hi_exp, int count);

}  // namespace cablemass
