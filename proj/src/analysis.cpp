#include "cablemass/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cablemass/error.hpp"
#include "cablemass/linalg.hpp"

namespace cablemass {

EnergyValue compute_energy(const QuadraticForms& forms,
                           const PhysicalParams& params,
                           const Eigen::Ref<const Eigen::VectorXd>& x) {
  const Eigen::Index n = forms.M_H.rows();
  if (x.size() != 2 * n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "state length does not match the quadratic forms");
  }
  const auto d = x.head(n);
  const auto v = x.tail(n);
  const double dn = d(n - 1);
  EnergyValue e;
  e.EK = 0.5 * v.dot(forms.M_H * v);
  e.EP = 0.5 * d.dot(forms.K_V * d) + 0.25 * params.k3 * dn * dn * dn * dn;
  e.E = e.EK + e.EP;
  return e;
}

LogFit fit_log_rate(const Eigen::VectorXd& t, const Eigen::VectorXd& values,
                    double t_lo, double t_hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  int count = 0;
  for (Eigen::Index k = 0; k < t.size(); ++k) {
    if (t(k) < t_lo || t(k) > t_hi) continue;
    if (!(values(k) > 0.0)) return {};
    const double y = std::log(values(k));
    sx += t(k);
    sy += y;
    sxx += t(k) * t(k);
    sxy += t(k) * y;
    syy += y * y;
    ++count;
  }
  if (count < 2) return {};
  const double cov = sxy - sx * sy / count;
  const double var_t = sxx - sx * sx / count;
  const double var_y = syy - sy * sy / count;
  if (!(var_t > 0.0)) return {};
  LogFit fit;
  fit.rate = cov / var_t;
  fit.r_squared = var_y > 0.0 ? cov * cov / (var_t * var_y) : 1.0;
  fit.defined = true;
  return fit;
}

EnergyReport energy_decay(const StateSpaceSystem& sys,
                          const QuadraticForms& forms, const Eigen::VectorXd& x0,
                          double tf, const EnergyOptions& options) {
  EnergyReport report;
  const std::vector<double> grid = uniform_grid(0.0, tf, options.sample_count);
  const auto count = static_cast<Eigen::Index>(grid.size());
  report.times = Eigen::Map<const Eigen::VectorXd>(grid.data(), count);
  report.E.setZero(count);
  report.EK.setZero(count);
  report.EP.setZero(count);
  if (x0.isZero(0.0)) return report;  // rest stays at rest

  OdeProblem problem;
  problem.rhs = [&](double, const Eigen::VectorXd& x) {
    return fom_rhs(sys, x, 0.0);
  };
  problem.jacobian = [&](double, const Eigen::VectorXd& x) {
    return fom_jacobian(sys, x);
  };
  problem.time_derivative = [&](double, const Eigen::VectorXd& x) {
    return Eigen::VectorXd(Eigen::VectorXd::Zero(x.size()));
  };
  const Trajectory traj = integrate(problem, x0, 0.0, tf, options.ode);
  report.stats = traj.stats;
  const auto states = sample(traj, grid);
  for (Eigen::Index k = 0; k < count; ++k) {
    const EnergyValue e =
        compute_energy(forms, sys.params, states[static_cast<std::size_t>(k)]);
    report.E(k) = e.E;
    report.EK(k) = e.EK;
    report.EP(k) = e.EP;
  }
  const LogFit fit =
      fit_log_rate(report.times, report.E, options.fit_start * tf, tf);
  report.fitted_rate = fit.defined ? fit.rate : 0.0;
  report.r_squared = fit.r_squared;
  report.rate_defined = fit.defined;
  return report;
}

double stability_margin(const Eigen::MatrixXd& A) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& lambda : eigenvalues(A)) {
    worst = std::max(worst, lambda.real());
  }
  return worst;
}

double stability_margin(const StateSpaceSystem& sys) {
  return stability_margin(sys.A);
}

ErrorMetrics output_error(const OutputSeries& ref, const OutputSeries& test) {
  if (ref.t.size() != test.t.size() || ref.y.rows() != test.y.rows() ||
      ref.y.cols() != test.y.cols() ||
      (ref.t - test.t).cwiseAbs().maxCoeff() >
          1e-12 * std::max(1.0, ref.t.cwiseAbs().maxCoeff())) {
    throw Error(ErrorCode::kGridMismatch, "output series grids differ");
  }
  const Eigen::MatrixXd diff = test.y - ref.y;
  const auto rel = [](double num, double den) {
    return den > 0.0 ? num / den : num;
  };
  ErrorMetrics m;
  const Eigen::Index channels = ref.y.cols();
  m.rel_l2.resize(channels);
  m.rel_linf.resize(channels);
  for (Eigen::Index c = 0; c < channels; ++c) {
    m.rel_l2(c) = rel(diff.col(c).norm(), ref.y.col(c).norm());
    m.rel_linf(c) = rel(diff.col(c).cwiseAbs().maxCoeff(),
                        ref.y.col(c).cwiseAbs().maxCoeff());
  }
  m.rel_l2_combined = rel(diff.norm(), ref.y.norm());
  m.rel_linf_combined =
      rel(diff.cwiseAbs().maxCoeff(), ref.y.cwiseAbs().maxCoeff());
  return m;
}

double max_energy_increase(const Eigen::VectorXd& E) {
  double running_min = std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const double e : E) {
    worst = std::max(worst, e - running_min);
    running_min = std::min(running_min, e);
  }
  return worst;
}

std::vector<double> local_maxima(const Eigen::VectorXd& E) {
  std::vector<double> peaks;
  for (Eigen::Index k = 1; k + 1 < E.size(); ++k) {
    if (E(k - 1) < E(k) && E(k) >= E(k + 1)) peaks.push_back(E(k));
  }
  return peaks;
}

Eigen::VectorXd pointwise_relative_error(const OutputSeries& ref,
                                         const OutputSeries& test) {
  if (ref.y.rows() != test.y.rows() || ref.y.cols() != test.y.cols()) {
    throw Error(ErrorCode::kGridMismatch, "output series shapes differ");
  }
  Eigen::VectorXd peak = ref.y.cwiseAbs().colwise().maxCoeff().transpose();
  for (Eigen::Index c = 0; c < peak.size(); ++c) {
    if (!(peak(c) > 0.0)) peak(c) = 1.0;
  }
  const Eigen::MatrixXd scaled =
      (test.y - ref.y).cwiseAbs() * peak.cwiseInverse().asDiagonal();
  return scaled.rowwise().maxCoeff();
}

double accurate_prefix_length(const OutputSeries& ref, const OutputSeries& test,
                              double threshold) {
  const Eigen::VectorXd err = pointwise_relative_error(ref, test);
  for (Eigen::Index k = 0; k < err.size(); ++k) {
    if (err(k) > threshold) return ref.t(k) - ref.t(0);
  }
  return ref.t(ref.t.size() - 1) - ref.t(0);
}

OutputSeries head_until(const OutputSeries& series, double t_end) {
  Eigen::Index count = 0;
  while (count < series.t.size() && series.t(count) <= t_end) ++count;
  return {series.t.head(count), series.y.topRows(count)};
}

}  // namespace cablemass
