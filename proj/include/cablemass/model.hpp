#pragma once

// Finite-difference state-space model of the cable-mass system and the
// discrete quadratic forms (mass, stiffness, damping) used for energy
// diagnostics.
//
// State ordering is x = [d_1 .. d_n, v_1 .. v_n] where d and v are nodal
// displacement and velocity; node 1 is the left (forced) mass and node n the
// right mass carrying the cubic spring.

#include <functional>

#include <Eigen/Dense>

namespace cablemass {

struct PhysicalParams {
  double l = 1.0;       // cable length
  double m0 = 1.0;      // left mass
  double ml = 1.5;      // right mass
  double k0 = 1.0;      // left linear stiffness
  double kl = 1.0;      // right linear stiffness
  double k3 = 1.0;      // right cubic stiffness
  double beta = 1.0;    // wave speed
  double gamma = 0.1;   // Kelvin-Voigt damping
  double alpha = 0.0;   // interior viscous damping
  double alpha0 = 0.0;  // left boundary damping
  double alphal = 0.1;  // right boundary damping

  /// Throws InvalidParams naming the first offending field.
  void validate() const;
};

struct Grid {
  int n = 0;
  double h = 0.0;

  Grid(double length, int nodes);
  double node(int j) const { return h * j; }  // zero-based
};

struct StateSpaceSystem {
  int n = 0;
  Eigen::MatrixXd A;  // 2n x 2n
  Eigen::VectorXd B;  // 2n
  Eigen::MatrixXd C;  // 2 x 2n
  double nl_coeff = 0.0;           // -k3 / ml
  Eigen::Index nl_state_index = 0;   // d_n
  Eigen::Index nl_target_index = 0;  // v_n equation
  PhysicalParams params;

  Eigen::Index states() const { return 2 * n; }
};

struct QuadraticForms {
  Eigen::MatrixXd M_H;     // kinetic (mass) form
  Eigen::MatrixXd K_V;     // potential (stiffness) form
  Eigen::MatrixXd D_sig2;  // damping form
};

StateSpaceSystem build_system(const PhysicalParams& params, int n);

/// F(x): zero except entry nl_target_index = nl_coeff * x[nl_state_index]^3.
Eigen::VectorXd eval_nonlinearity(const StateSpaceSystem& sys,
                                  const Eigen::Ref<const Eigen::VectorXd>& x);

/// A x + F(x) + B u.
Eigen::VectorXd fom_rhs(const StateSpaceSystem& sys,
                        const Eigen::Ref<const Eigen::VectorXd>& x, double u);

/// Jacobian of fom_rhs with respect to x.
Eigen::MatrixXd fom_jacobian(const StateSpaceSystem& sys,
                             const Eigen::Ref<const Eigen::VectorXd>& x);

Eigen::VectorXd sample_initial_data(const PhysicalParams& params, int n,
                                    const std::function<double(double)>& pos,
                                    const std::function<double(double)>& vel);

QuadraticForms quadratic_forms(const PhysicalParams& params, int n);

}  // namespace cablemass
