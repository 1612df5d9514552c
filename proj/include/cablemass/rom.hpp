#pragma once

// Simulation of the full and reduced cable-mass models from rest.

#include <Eigen/Dense>

#include "cablemass/balance.hpp"
#include "cablemass/model.hpp"
#include "cablemass/ode.hpp"
#include "cablemass/signals.hpp"

namespace cablemass {

/// Uniformly sampled outputs: one row per time, one column per channel.
struct OutputSeries {
  Eigen::VectorXd t;
  Eigen::MatrixXd y;
};

struct SimulationOptions {
  double t0 = 0.0;
  double tf = 100.0;
  OdeOptions ode;
  int sample_count = 1000;
};

struct SimulationResult {
  OutputSeries output;
  OdeStats stats;
};

/// [S_r F(T_r a)]_i = nl_coeff * psi_i * (phi . a)^3, in O(r).
Eigen::VectorXd rom_nonlinear(const ReducedSystem& red,
                              const Eigen::Ref<const Eigen::VectorXd>& a);

Eigen::VectorXd rom_rhs(const ReducedSystem& red,
                        const Eigen::Ref<const Eigen::VectorXd>& a, double u);

Eigen::MatrixXd rom_jacobian(const ReducedSystem& red,
                             const Eigen::Ref<const Eigen::VectorXd>& a);

SimulationResult simulate_rom(const ReducedSystem& red, const InputSpec& input,
                              const SimulationOptions& options = {});

SimulationResult simulate_fom(const StateSpaceSystem& sys,
                              const InputSpec& input,
                              const SimulationOptions& options = {});

}  // namespace cablemass
