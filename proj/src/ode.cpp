#include "cablemass/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cablemass/error.hpp"

namespace cablemass {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

Eigen::MatrixXd numerical_jacobian(const OdeProblem& problem, double t,
                                   const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& fx, OdeStats& stats) {
  const Eigen::Index n = x.size();
  Eigen::MatrixXd J(n, n);
  Eigen::VectorXd xp = x;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double delta = std::sqrt(kEps) * std::max(1e-5, std::abs(x(j)));
    xp(j) = x(j) + delta;
    J.col(j) = (problem.rhs(t, xp) - fx) / delta;
    xp(j) = x(j);
  }
  stats.rhs_evals += n;
  return J;
}

double weighted_max(const Eigen::VectorXd& e, const Eigen::VectorXd& y0,
                    const Eigen::VectorXd& y1, double threshold) {
  const Eigen::ArrayXd wt =
      y0.cwiseAbs().cwiseMax(y1.cwiseAbs()).array().max(threshold);
  return (e.array().abs() / wt).maxCoeff();
}

}  // namespace

Trajectory integrate(const OdeProblem& problem, const Eigen::VectorXd& x0,
                     double t0, double tf, const OdeOptions& opt) {
  if (!(tf > t0)) {
    throw Error(ErrorCode::kOutOfRange, "integrate requires tf > t0");
  }
  if (!(opt.rtol > 0.0 && opt.atol > 0.0)) {
    throw Error(ErrorCode::kValidationError, "rtol and atol must be positive");
  }
  if (!x0.allFinite()) {
    throw Error(ErrorCode::kNonFiniteState, "initial state is not finite");
  }

  // Coefficients of the 2(3) pair.
  const double d = 1.0 / (2.0 + std::sqrt(2.0));
  const double e32 = 6.0 + std::sqrt(2.0);

  const double span = tf - t0;
  const double rtol = std::max(opt.rtol, 100.0 * kEps);
  const double threshold = opt.atol / rtol;
  const double hmax = opt.max_step.value_or(span / 10.0);
  const Eigen::Index n = x0.size();

  Trajectory traj;
  OdeStats& stats = traj.stats;
  double t = t0;
  Eigen::VectorXd y = x0;
  Eigen::VectorXd f0 = problem.rhs(t, y);
  ++stats.rhs_evals;
  traj.times.push_back(t);
  traj.states.push_back(y);
  traj.derivatives.push_back(f0);

  const double pow = 1.0 / 3.0;
  double h;
  if (opt.initial_step) {
    h = std::min(*opt.initial_step, hmax);
  } else {
    h = std::min(hmax, span);
    const double rh = (f0.array().abs() /
                       y.cwiseAbs().array().max(threshold)).maxCoeff() /
                      (0.8 * std::pow(rtol, pow));
    if (h * rh > 1.0) h = 1.0 / rh;
  }

  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd k1(n), k2(n), k3(n), f1(n), f2(n), ynew(n), dfdt(n);
  bool done = false;
  while (!done) {
    if (stats.accepted + stats.rejected >= opt.max_steps) {
      throw Error(ErrorCode::kStepSizeUnderflow, "step budget exhausted");
    }
    const double hmin = 16.0 * kEps * std::abs(t);
    h = std::clamp(h, hmin, hmax);
    if (1.1 * h >= tf - t) {
      h = tf - t;
      done = true;
    }

    const Eigen::MatrixXd J = problem.jacobian
                                  ? problem.jacobian(t, y)
                                  : numerical_jacobian(problem, t, y, f0, stats);
    ++stats.jacobian_evals;
    if (problem.time_derivative) {
      dfdt = problem.time_derivative(t, y);
    } else {
      const double dt = std::sqrt(kEps) * std::max(std::abs(t), std::abs(h));
      dfdt = (problem.rhs(t + dt, y) - f0) / dt;
      ++stats.rhs_evals;
    }

    bool accepted = false;
    while (!accepted) {
      const Eigen::PartialPivLU<Eigen::MatrixXd> W(identity - (h * d) * J);
      ++stats.factorizations;
      k1 = W.solve(f0 + (h * d) * dfdt);
      f1 = problem.rhs(t + 0.5 * h, y + (0.5 * h) * k1);
      k2 = W.solve(f1 - k1) + k1;
      ynew = y + h * k2;
      f2 = problem.rhs(t + h, ynew);
      k3 = W.solve(f2 - e32 * (k2 - f1) - 2.0 * (k1 - f0) + (h * d) * dfdt);
      stats.rhs_evals += 2;

      double err = std::numeric_limits<double>::infinity();
      if (ynew.allFinite() && k3.allFinite()) {
        err = (h / 6.0) * weighted_max(k1 - 2.0 * k2 + k3, y, ynew, threshold);
      }
      if (err <= rtol) {
        accepted = true;
        const double temp = 1.25 * std::pow(err / rtol, pow);
        const double grow = temp > 0.2 ? 1.0 / temp : 5.0;
        t = done ? tf : t + h;
        y = ynew;
        f0 = f2;
        ++stats.accepted;
        traj.times.push_back(t);
        traj.states.push_back(y);
        traj.derivatives.push_back(f0);
        h *= grow;
      } else {
        ++stats.rejected;
        done = false;
        if (h <= hmin) {
          throw Error(ErrorCode::kStepSizeUnderflow,
                      "step size underflow at t = " + std::to_string(t));
        }
        const double shrink =
            std::isfinite(err) ? std::max(0.5, 0.8 * std::pow(rtol / err, pow))
                               : 0.5;
        h = std::max(hmin, h * shrink);
        if (1.1 * h >= tf - t) {
          h = tf - t;
          done = true;
        }
      }
    }
  }
  for (const auto& s : traj.states) {
    if (!s.allFinite()) {
      throw Error(ErrorCode::kNonFiniteState, "trajectory left finite range");
    }
  }
  return traj;
}

std::vector<Eigen::VectorXd> sample(const Trajectory& traj,
                                    std::span<const double> query_times) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(query_times.size());
  if (query_times.empty()) return out;
  const auto& ts = traj.times;
  for (const double q : query_times) {
    if (!(q >= ts.front() && q <= ts.back())) {
      throw Error(ErrorCode::kOutOfRange,
                  "query time " + std::to_string(q) + " outside trajectory");
    }
    auto it = std::upper_bound(ts.begin(), ts.end(), q);
    std::size_t k1 = static_cast<std::size_t>(it - ts.begin());
    if (k1 == ts.size()) k1 = ts.size() - 1;
    const std::size_t k0 = k1 - 1;
    if (q == ts[k0]) {
      out.push_back(traj.states[k0]);
      continue;
    }
    if (q == ts[k1]) {
      out.push_back(traj.states[k1]);
      continue;
    }
    const double h = ts[k1] - ts[k0];
    const double s = (q - ts[k0]) / h;
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    out.push_back(h00 * traj.states[k0] + (h10 * h) * traj.derivatives[k0] +
                  h01 * traj.states[k1] + (h11 * h) * traj.derivatives[k1]);
  }
  return out;
}

std::vector<double> uniform_grid(double t0, double tf, int count) {
  std::vector<double> grid(static_cast<std::size_t>(std::max(count, 0)));
  if (count == 1) {
    grid[0] = t0;
    return grid;
  }
  for (int k = 0; k < count; ++k) {
    grid[static_cast<std::size_t>(k)] =
        (k == count - 1) ? tf : t0 + (tf - t0) * k / (count - 1);
  }
  return grid;
}

}  // namespace cablemass
