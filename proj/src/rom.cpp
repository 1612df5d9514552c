#include "cablemass/rom.hpp"

#include <string>

#include "cablemass/error.hpp"

namespace cablemass {

namespace {

void require_reduced(const ReducedSystem& red,
                     const Eigen::Ref<const Eigen::VectorXd>& a) {
  if (a.size() != red.order()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "reduced state has length " + std::to_string(a.size()) +
                    ", expected " + std::to_string(red.order()));
  }
}

OutputSeries sample_outputs(const Trajectory& traj, const Eigen::MatrixXd& C,
                            const SimulationOptions& opt) {
  const std::vector<double> grid =
      uniform_grid(opt.t0, opt.tf, opt.sample_count);
  const auto states = sample(traj, grid);
  OutputSeries out;
  out.t = Eigen::Map<const Eigen::VectorXd>(grid.data(),
                                            static_cast<Eigen::Index>(grid.size()));
  out.y.resize(static_cast<Eigen::Index>(grid.size()), C.rows());
  for (std::size_t k = 0; k < states.size(); ++k) {
    out.y.row(static_cast<Eigen::Index>(k)) = (C * states[k]).transpose();
  }
  return out;
}

void require_options(const SimulationOptions& opt) {
  if (!(opt.tf > opt.t0)) {
    throw Error(ErrorCode::kValidationError, "tf must exceed t0");
  }
  if (opt.sample_count < 2) {
    throw Error(ErrorCode::kValidationError, "sample_count must be >= 2");
  }
}

}  // namespace

Eigen::VectorXd rom_nonlinear(const ReducedSystem& red,
                              const Eigen::Ref<const Eigen::VectorXd>& a) {
  require_reduced(red, a);
  const double s = red.nl_in_weights.dot(a);
  return (red.nl_coeff * s * s * s) * red.nl_out_weights;
}

Eigen::VectorXd rom_rhs(const ReducedSystem& red,
                        const Eigen::Ref<const Eigen::VectorXd>& a, double u) {
  require_reduced(red, a);
  const double s = red.nl_in_weights.dot(a);
  return red.Ar * a + red.Br * u +
         (red.nl_coeff * s * s * s) * red.nl_out_weights;
}

Eigen::MatrixXd rom_jacobian(const ReducedSystem& red,
                             const Eigen::Ref<const Eigen::VectorXd>& a) {
  require_reduced(red, a);
  const double s = red.nl_in_weights.dot(a);
  return red.Ar + (3.0 * red.nl_coeff * s * s) * red.nl_out_weights *
                      red.nl_in_weights.transpose();
}

SimulationResult simulate_rom(const ReducedSystem& red, const InputSpec& input,
                              const SimulationOptions& opt) {
  require_options(opt);
  OdeProblem problem;
  problem.rhs = [&](double t, const Eigen::VectorXd& a) {
    return rom_rhs(red, a, eval_input(input, t));
  };
  problem.jacobian = [&](double, const Eigen::VectorXd& a) {
    return rom_jacobian(red, a);
  };
  problem.time_derivative = [&](double t, const Eigen::VectorXd&) {
    return Eigen::VectorXd(red.Br * eval_input_derivative(input, t));
  };
  const Trajectory traj = integrate(
      problem, Eigen::VectorXd::Zero(red.order()), opt.t0, opt.tf, opt.ode);
  return {sample_outputs(traj, red.Cr, opt), traj.stats};
}

SimulationResult simulate_fom(const StateSpaceSystem& sys,
                              const InputSpec& input,
                              const SimulationOptions& opt) {
  require_options(opt);
  OdeProblem problem;
  problem.rhs = [&](double t, const Eigen::VectorXd& x) {
    return fom_rhs(sys, x, eval_input(input, t));
  };
  problem.jacobian = [&](double, const Eigen::VectorXd& x) {
    return fom_jacobian(sys, x);
  };
  problem.time_derivative = [&](double t, const Eigen::VectorXd&) {
    return Eigen::VectorXd(sys.B * eval_input_derivative(input, t));
  };
  const Trajectory traj = integrate(
      problem, Eigen::VectorXd::Zero(sys.states()), opt.t0, opt.tf, opt.ode);
  return {sample_outputs(traj, sys.C, opt), traj.stats};
}

}  // namespace cablemass
