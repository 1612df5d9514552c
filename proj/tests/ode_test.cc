#include "cablemass/ode.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "cablemass/error.hpp"
#include "cablemass/signals.hpp"

namespace cablemass {
namespace {

OdeProblem linear_problem(const Eigen::MatrixXd& A) {
  OdeProblem p;
  p.rhs = [A](double, const Eigen::VectorXd& x) { return Eigen::VectorXd(A * x); };
  p.jacobian = [A](double, const Eigen::VectorXd&) { return A; };
  return p;
}

double decay_error(double rtol) {
  OdeOptions opt;
  opt.rtol = rtol;
  opt.atol = rtol * 1e-3;
  const Trajectory traj = integrate(linear_problem(-Eigen::MatrixXd::Identity(1, 1)),
                                    Eigen::VectorXd::Ones(1), 0.0, 1.0, opt);
  return std::abs(traj.states.back()(0) - std::exp(-1.0));
}

TEST(Integrate, ExponentialDecay) {
  for (double rtol : {1e-3, 1e-4, 1e-5, 1e-6}) {
    EXPECT_LE(decay_error(rtol), 10 * rtol) << "rtol " << rtol;
  }
}

// Above rtol ~ 1e-4 the default step cap (span / 10) decides the step, not the
// error controller, so the ratio is only meaningful below that.
TEST(Integrate, TighterToleranceImproves) {
  for (double rtol : {1e-5, 1e-6, 1e-7}) {
    EXPECT_GE(decay_error(rtol) / decay_error(rtol / 2), 1.5) << "rtol " << rtol;
  }
}


TEST(Integrate, StiffDiagonal) {
  const Eigen::MatrixXd A = Eigen::Vector2d(-1.0, -1000.0).asDiagonal();
  OdeOptions opt;
  const Trajectory traj =
      integrate(linear_problem(A), Eigen::Vector2d(1.0, 1.0), 0.0, 1.0, opt);
  EXPECT_NEAR(traj.states.back()(0), std::exp(-1.0), 10 * opt.rtol);
  EXPECT_NEAR(traj.states.back()(1), std::exp(-1000.0), 10 * opt.rtol);
  // A stiff solver should not be forced down to h ~ 1/1000 for the whole span.
  EXPECT_LT(traj.stats.accepted, 500);
}

TEST(Integrate, NumericalJacobianFallback) {
  OdeProblem p;
  p.rhs = [](double, const Eigen::VectorXd& x) { return Eigen::VectorXd(-x); };
  OdeOptions opt;
  opt.rtol = 1e-5;
  opt.atol = 1e-9;
  const Trajectory traj = integrate(p, Eigen::VectorXd::Ones(1), 0.0, 1.0, opt);
  EXPECT_NEAR(traj.states.back()(0), std::exp(-1.0), 1e-4);
}

TEST(Integrate, HarmonicOscillatorEnergyDrift) {
  Eigen::Matrix2d A;
  A << 0, 1, -1, 0;
  OdeOptions opt;
  opt.rtol = 1e-6;
  opt.atol = 1e-9;
  const Trajectory traj =
      integrate(linear_problem(A), Eigen::Vector2d(1.0, 0.0), 0.0, 2 * std::numbers::pi, opt);
  for (const auto& x : traj.states) {
    EXPECT_LE(std::abs(x.squaredNorm() - 1.0), 1e-3);
  }
  EXPECT_NEAR(traj.states.back()(0), 1.0, 1e-4);
}

TEST(Integrate, SquareWaveForcing) {
  InputSpec in = input_preset("input4");
  auto forced = [&](const OdeOptions& opt) {
    OdeProblem p;
    p.rhs = [&](double t, const Eigen::VectorXd& x) {
      return Eigen::VectorXd(-x + Eigen::VectorXd::Constant(1, eval_input(in, t)));
    };
    p.jacobian = [](double, const Eigen::VectorXd&) {
      return Eigen::MatrixXd(-Eigen::MatrixXd::Identity(1, 1));
    };
    return integrate(p, Eigen::VectorXd::Zero(1), 0.0, 20.0, opt);
  };
  OdeOptions opt;
  OdeOptions ref_opt;
  ref_opt.rtol = 1e-8;
  ref_opt.atol = 1e-12;
  const Trajectory coarse = forced(opt);
  const Trajectory ref = forced(ref_opt);
  const std::vector<double> grid = uniform_grid(0.0, 20.0, 201);
  const auto a = sample(coarse, grid);
  const auto b = sample(ref, grid);
  double peak = 0.0, err = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    peak = std::max(peak, std::abs(b[k](0)));
    err = std::max(err, std::abs(a[k](0) - b[k](0)));
  }
  EXPECT_LE(err, 100 * opt.rtol * peak);
}

TEST(Sample, ExactAtNodesAndInterpolatesBetween) {
  OdeOptions opt;
  opt.rtol = 1e-8;
  opt.atol = 1e-12;
  Trajectory traj = integrate(linear_problem(-Eigen::MatrixXd::Identity(1, 1)),
                              Eigen::VectorXd::Ones(1), 0.0, 1.0, opt);
  const auto at_nodes = sample(traj, traj.times);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    EXPECT_EQ(at_nodes[k](0), traj.states[k](0));
  }
  const std::vector<double> q{0.5};
  for (double rtol : {1e-3, 1e-5}) {
    opt.rtol = rtol;
    opt.atol = rtol * 1e-3;
    traj = integrate(linear_problem(-Eigen::MatrixXd::Identity(1, 1)),
                     Eigen::VectorXd::Ones(1), 0.0, 1.0, opt);
    EXPECT_NEAR(sample(traj, q)[0](0), std::exp(-0.5), 10 * rtol);
  }
  EXPECT_TRUE(sample(traj, std::vector<double>{}).empty());
}

TEST(Sample, RejectsOutsideSpan) {
  const Trajectory traj = integrate(linear_problem(-Eigen::MatrixXd::Identity(1, 1)),
                                    Eigen::VectorXd::Ones(1), 0.0, 1.0);
  try {
    sample(traj, std::vector<double>{1.5});
    FAIL() << "expected OutOfRange";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfRange);
  }
}

TEST(Integrate, RejectsEmptySpan) {
  EXPECT_THROW(integrate(linear_problem(-Eigen::MatrixXd::Identity(1, 1)),
                         Eigen::VectorXd::Ones(1), 1.0, 1.0),
               Error);
}

TEST(Integrate, BlowUpIsReported) {
  OdeProblem p;
  p.rhs = [](double, const Eigen::VectorXd& x) {
    return Eigen::VectorXd(x.array().square());
  };
  p.jacobian = [](double, const Eigen::VectorXd& x) {
    return Eigen::MatrixXd((2.0 * x).asDiagonal());
  };
  // x' = x^2, x(0) = 1 blows up at t = 1.
  try {
    integrate(p, Eigen::VectorXd::Ones(1), 0.0, 2.0);
    FAIL() << "expected a step-size or finiteness failure";
  } catch (const Error& e) {
    EXPECT_TRUE(e.code() == ErrorCode::kStepSizeUnderflow ||
                e.code() == ErrorCode::kNonFiniteState);
  }
}

TEST(UniformGrid, Endpoints) {
  const auto g = uniform_grid(0.0, 100.0, 1000);
  ASSERT_EQ(g.size(), 1000u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 100.0);
}

}  // namespace
}  // namespace cablemass
