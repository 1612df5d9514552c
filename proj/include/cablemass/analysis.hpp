#pragma once

// Energy, stability and output-error diagnostics.

#include <vector>

#include <Eigen/Dense>

#include "cablemass/model.hpp"
#include "cablemass/ode.hpp"
#include "cablemass/rom.hpp"

namespace cablemass {

struct EnergyValue {
  double E = 0.0;
  double EK = 0.0;
  double EP = 0.0;
};

struct EnergyReport {
  Eigen::VectorXd times;
  Eigen::VectorXd E;
  Eigen::VectorXd EK;
  Eigen::VectorXd EP;
  double fitted_rate = 0.0;  // slope of log E over the fit window
  double r_squared = 0.0;
  bool rate_defined = false;  // false when E vanishes on the fit window
  OdeStats stats;
};

struct EnergyOptions {
  OdeOptions ode;
  int sample_count = 1000;
  /// Fit log E on [fit_start * tf, tf].
  double fit_start = 0.1;
};

struct ErrorMetrics {
  Eigen::VectorXd rel_l2;    // per channel
  Eigen::VectorXd rel_linf;  // per channel
  double rel_l2_combined = 0.0;
  double rel_linf_combined = 0.0;
};

EnergyValue compute_energy(const QuadraticForms& forms,
                           const PhysicalParams& params,
                           const Eigen::Ref<const Eigen::VectorXd>& x);

/// Unforced FOM run from x0 with energy sampled on a uniform grid.
EnergyReport energy_decay(const StateSpaceSystem& sys,
                          const QuadraticForms& forms, const Eigen::VectorXd& x0,
                          double tf, const EnergyOptions& options = {});

/// Largest real part of the spectrum of A.
double stability_margin(const Eigen::MatrixXd& A);
double stability_margin(const StateSpaceSystem& sys);

/// Relative errors of y_test against y_ref; absolute when y_ref vanishes.
ErrorMetrics output_error(const OutputSeries& ref, const OutputSeries& test);

/// Largest rise E[k] - min_{j<k} E[j]; zero for a nonincreasing sequence.
double max_energy_increase(const Eigen::VectorXd& E);

/// Values at strict interior local maxima: E[k-1] < E[k] >= E[k+1].
std::vector<double> local_maxima(const Eigen::VectorXd& E);

/// Least-squares slope and R^2 of log(values) against t on [t_lo, t_hi].
struct LogFit {
  double rate = 0.0;
  double r_squared = 0.0;
  bool defined = false;
};
LogFit fit_log_rate(const Eigen::VectorXd& t, const Eigen::VectorXd& values,
                    double t_lo, double t_hi);

/// Pointwise error |y_ref(t) - y_test(t)| scaled by the peak of |y_ref| over
/// the run, maximised over channels.
Eigen::VectorXd pointwise_relative_error(const OutputSeries& ref,
                                         const OutputSeries& test);

/// Time at which pointwise_relative_error first exceeds threshold; the final
/// time when it never does.
double accurate_prefix_length(const OutputSeries& ref, const OutputSeries& test,
                              double threshold);

/// Restriction of a series to samples with t <= t_end.
OutputSeries head_until(const OutputSeries& series, double t_end);

}  // namespace cablemass
