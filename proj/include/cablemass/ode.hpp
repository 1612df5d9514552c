#pragma once

// Linearly implicit Rosenbrock 2(3) integrator (the modified Rosenbrock pair
// of Shampine and Reichelt) with embedded error control and cubic Hermite
// dense output.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace cablemass {

struct OdeProblem {
  std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> rhs;
  /// df/dx; a forward-difference approximation is used when empty.
  std::function<Eigen::MatrixXd(double, const Eigen::VectorXd&)> jacobian;
  /// df/dt; a forward-difference approximation is used when empty.
  std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> time_derivative;
};

struct OdeOptions {
  double rtol = 1e-3;
  double atol = 1e-6;
  std::optional<double> initial_step;
  std::optional<double> max_step;
  long max_steps = 10'000'000;
};

struct OdeStats {
  long accepted = 0;
  long rejected = 0;
  long rhs_evals = 0;
  long jacobian_evals = 0;
  long factorizations = 0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  std::vector<Eigen::VectorXd> derivatives;  // f(t_k, x_k), for interpolation
  OdeStats stats;

  double t0() const { return times.front(); }
  double tf() const { return times.back(); }
};

Trajectory integrate(const OdeProblem& problem, const Eigen::VectorXd& x0,
                     double t0, double tf, const OdeOptions& options = {});

/// Cubic Hermite interpolation of the stored steps at the query times.
std::vector<Eigen::VectorXd> sample(const Trajectory& traj,
                                    std::span<const double> query_times);

/// n equally spaced points covering [t0, tf] inclusive.
std::vector<double> uniform_grid(double t0, double tf, int count);

}  // namespace cablemass
