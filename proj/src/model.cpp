#include "cablemass/model.hpp"

#include <cmath>
#include <string>

#include "cablemass/error.hpp"

namespace cablemass {

namespace {

void require_positive(double value, const char* name) {
  if (!(std::isfinite(value) && value > 0.0)) {
    throw Error(ErrorCode::kInvalidParams,
                std::string(name) + " must be positive");
  }
}

void require_nonnegative(double value, const char* name) {
  if (!(std::isfinite(value) && value >= 0.0)) {
    throw Error(ErrorCode::kInvalidParams,
                std::string(name) + " must be nonnegative");
  }
}

void require_nodes(int n) {
  if (n < 3) {
    throw Error(ErrorCode::kGridTooCoarse,
                "one-sided boundary stencils need n >= 3, got " +
                    std::to_string(n));
  }
}

// Path-graph Laplacian scaled by 1/h: the quadratic form sum (w_{j+1}-w_j)^2/h.
Eigen::MatrixXd cell_stiffness(int n, double h) {
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j + 1 < n; ++j) {
    K(j, j) += 1.0 / h;
    K(j + 1, j + 1) += 1.0 / h;
    K(j, j + 1) -= 1.0 / h;
    K(j + 1, j) -= 1.0 / h;
  }
  return K;
}

Eigen::VectorXd trapezoid_weights(int n, double h) {
  Eigen::VectorXd w = Eigen::VectorXd::Constant(n, h);
  w(0) = w(n - 1) = h / 2;
  return w;
}

}  // namespace

void PhysicalParams::validate() const {
  require_positive(l, "l");
  require_positive(m0, "m0");
  require_positive(ml, "ml");
  require_positive(k0, "k0");
  require_positive(kl, "kl");
  require_nonnegative(k3, "k3");  // zero gives the linear model
  require_positive(beta, "beta");
  require_nonnegative(gamma, "gamma");
  require_nonnegative(alpha, "alpha");
  require_nonnegative(alpha0, "alpha0");
  require_nonnegative(alphal, "alphal");
}

Grid::Grid(double length, int nodes) : n(nodes) {
  require_nodes(nodes);
  require_positive(length, "l");
  h = length / (nodes - 1);
}

StateSpaceSystem build_system(const PhysicalParams& p, int n) {
  require_nodes(n);
  p.validate();
  const Grid grid(p.l, n);
  const double h = grid.h;
  const double b2 = p.beta * p.beta;

  StateSpaceSystem sys;
  sys.n = n;
  sys.params = p;
  sys.A = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  sys.A.topRightCorner(n, n).setIdentity();
  auto A11 = sys.A.bottomLeftCorner(n, n);
  auto A12 = sys.A.bottomRightCorner(n, n);

  const double stiff = b2 / (h * h);
  const double kv = p.gamma / (h * h);
  for (int i = 1; i < n - 1; ++i) {
    A11(i, i - 1) = stiff;
    A11(i, i) = -2.0 * stiff;
    A11(i, i + 1) = stiff;
    A12(i, i - 1) = kv;
    A12(i, i) = -2.0 * kv - p.alpha;
    A12(i, i + 1) = kv;
  }

  // One-sided second-order stencils for the cable force on each mass.
  const double left = 1.0 / (2.0 * h * p.m0);
  A11(0, 0) = -p.k0 / p.m0 - 3.0 * b2 * left;
  A11(0, 1) = 4.0 * b2 * left;
  A11(0, 2) = -b2 * left;
  A12(0, 0) = -3.0 * p.gamma * left - p.alpha0 / p.m0;
  A12(0, 1) = 4.0 * p.gamma * left;
  A12(0, 2) = -p.gamma * left;

  const double right = 1.0 / (2.0 * h * p.ml);
  const int e = n - 1;
  A11(e, e) = -p.kl / p.ml - 3.0 * b2 * right;
  A11(e, e - 1) = 4.0 * b2 * right;
  A11(e, e - 2) = -b2 * right;
  A12(e, e) = -p.alphal / p.ml - 3.0 * p.gamma * right;
  A12(e, e - 1) = 4.0 * p.gamma * right;
  A12(e, e - 2) = -p.gamma * right;

  sys.B = Eigen::VectorXd::Zero(2 * n);
  sys.B(n) = 1.0 / p.m0;

  sys.C = Eigen::MatrixXd::Zero(2, 2 * n);
  sys.C(0, n - 1) = 1.0;
  sys.C(1, 2 * n - 1) = 1.0;

  sys.nl_coeff = -p.k3 / p.ml;
  sys.nl_state_index = n - 1;
  sys.nl_target_index = 2 * n - 1;
  return sys;
}

namespace {
void require_state(const StateSpaceSystem& sys,
                   const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() != sys.states()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "state has length " + std::to_string(x.size()) +
                    ", expected " + std::to_string(sys.states()));
  }
}
}  // namespace

Eigen::VectorXd eval_nonlinearity(const StateSpaceSystem& sys,
                                  const Eigen::Ref<const Eigen::VectorXd>& x) {
  require_state(sys, x);
  Eigen::VectorXd f = Eigen::VectorXd::Zero(sys.states());
  const double d = x(sys.nl_state_index);
  f(sys.nl_target_index) = sys.nl_coeff * d * d * d;
  return f;
}

Eigen::VectorXd fom_rhs(const StateSpaceSystem& sys,
                        const Eigen::Ref<const Eigen::VectorXd>& x, double u) {
  require_state(sys, x);
  Eigen::VectorXd dx = sys.A * x + sys.B * u;
  const double d = x(sys.nl_state_index);
  dx(sys.nl_target_index) += sys.nl_coeff * d * d * d;
  return dx;
}

Eigen::MatrixXd fom_jacobian(const StateSpaceSystem& sys,
                             const Eigen::Ref<const Eigen::VectorXd>& x) {
  require_state(sys, x);
  Eigen::MatrixXd J = sys.A;
  const double d = x(sys.nl_state_index);
  J(sys.nl_target_index, sys.nl_state_index) += 3.0 * sys.nl_coeff * d * d;
  return J;
}

Eigen::VectorXd sample_initial_data(const PhysicalParams& params, int n,
                                    const std::function<double(double)>& pos,
                                    const std::function<double(double)>& vel) {
  const Grid grid(params.l, n);
  Eigen::VectorXd x(2 * n);
  for (int j = 0; j < n; ++j) {
    // The last node is placed at l exactly.
    const double xj = (j == n - 1) ? params.l : grid.node(j);
    x(j) = pos(xj);
    x(n + j) = vel(xj);
  }
  if (!x.allFinite()) {
    throw Error(ErrorCode::kNonFiniteState,
                "initial data produced non-finite samples");
  }
  return x;
}

QuadraticForms quadratic_forms(const PhysicalParams& p, int n) {
  p.validate();
  const Grid grid(p.l, n);
  const Eigen::VectorXd trap = trapezoid_weights(n, grid.h);
  const Eigen::MatrixXd stiffness = cell_stiffness(n, grid.h);

  QuadraticForms forms;
  forms.M_H = trap.asDiagonal();
  forms.M_H(0, 0) += p.m0;
  forms.M_H(n - 1, n - 1) += p.ml;

  forms.K_V = p.beta * p.beta * stiffness;
  forms.K_V(0, 0) += p.k0;
  forms.K_V(n - 1, n - 1) += p.kl;

  forms.D_sig2 = p.gamma * stiffness;
  forms.D_sig2.diagonal() += p.alpha * trap;
  forms.D_sig2(0, 0) += p.alpha0;
  forms.D_sig2(n - 1, n - 1) += p.alphal;
  return forms;
}

}  // namespace cablemass
