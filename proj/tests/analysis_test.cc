#include "cablemass/analysis.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "cablemass/config.hpp"
#include "cablemass/error.hpp"

namespace cablemass {
namespace {

OutputSeries series(const Eigen::VectorXd& t, const Eigen::MatrixXd& y) {
  return {t, y};
}

TEST(Energy, QuadraticTerms) {
  QuadraticForms f;
  f.M_H = Eigen::Matrix2d::Identity();
  f.K_V = Eigen::Matrix2d::Identity() * 2.0;
  f.D_sig2 = Eigen::Matrix2d::Zero();
  PhysicalParams p;
  p.k3 = 0.0;
  Eigen::VectorXd x(4);
  x << 0.5, 0.0, 1.0, 1.0;
  // EK = 0.5 * 2, EP = 0.5 * 2 * 0.25
  const EnergyValue e = compute_energy(f, p, x);
  EXPECT_NEAR(e.EK, 1.0, 1e-15);
  EXPECT_NEAR(e.EP, 0.25, 1e-15);
  EXPECT_NEAR(e.E, 1.25, 1e-15);
  x(0) = 1.0;
  EXPECT_NEAR(compute_energy(f, p, x).E, 2.0, 1e-15);
}

TEST(Energy, QuarticSpringTerm) {
  QuadraticForms f;
  f.M_H = Eigen::Matrix2d::Identity();
  f.K_V = Eigen::Matrix2d::Zero();
  f.D_sig2 = Eigen::Matrix2d::Zero();
  PhysicalParams p;
  p.k3 = 1.0;
  Eigen::VectorXd x(4);
  x << 0.0, 1.0, 0.0, 0.0;
  EXPECT_NEAR(compute_energy(f, p, x).EP, 0.25, 1e-15);
}

TEST(Energy, DecaysOnDampedModel) {
  const ExperimentConfig cfg = preset_config("exp_stab_Ex1");
  const StateSpaceSystem sys = build_system(cfg.params, 20);
  const QuadraticForms f = quadratic_forms(cfg.params, 20);
  const Eigen::VectorXd x0 = sample_initial_data(
      cfg.params, 20, energy_initial_position, energy_initial_velocity);
  EnergyOptions opt;
  opt.sample_count = 200;
  const EnergyReport rep = energy_decay(sys, f, x0, 20.0, opt);
  EXPECT_LE(max_energy_increase(rep.E), 1e-6 * rep.E(0));
  EXPECT_LT(rep.E(rep.E.size() - 1), rep.E(0));
  EXPECT_TRUE(rep.rate_defined);
  EXPECT_LT(rep.fitted_rate, 0.0);
}

TEST(Energy, ZeroInitialDataHasNoRate) {
  const ExperimentConfig cfg = preset_config("exp_stab_Ex1");
  const StateSpaceSystem sys = build_system(cfg.params, 10);
  const QuadraticForms f = quadratic_forms(cfg.params, 10);
  EnergyOptions opt;
  opt.sample_count = 20;
  const EnergyReport rep = energy_decay(sys, f, Eigen::VectorXd::Zero(20), 5.0, opt);
  EXPECT_EQ(rep.E.norm(), 0.0);
  EXPECT_FALSE(rep.rate_defined);
}

TEST(OutputError, IdenticalAndScaled) {
  const Eigen::VectorXd t = Eigen::VectorXd::LinSpaced(50, 0.0, 5.0);
  Eigen::MatrixXd y(50, 2);
  y.col(0) = t.array().sin();
  y.col(1) = t.array().cos();
  const ErrorMetrics same = output_error(series(t, y), series(t, y));
  EXPECT_EQ(same.rel_l2_combined, 0.0);
  EXPECT_EQ(same.rel_linf_combined, 0.0);
  const ErrorMetrics scaled = output_error(series(t, y), series(t, 1.1 * y));
  EXPECT_NEAR(scaled.rel_l2_combined, 0.1, 1e-12);
  EXPECT_NEAR(scaled.rel_l2(0), 0.1, 1e-12);
  EXPECT_NEAR(scaled.rel_linf(1), 0.1, 1e-12);
}

TEST(OutputError, ZeroReferenceFallsBackToAbsolute) {
  const Eigen::VectorXd t = Eigen::VectorXd::LinSpaced(10, 0.0, 1.0);
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(10, 2);
  const ErrorMetrics m = output_error(series(t, zero), series(t, zero));
  EXPECT_TRUE(std::isfinite(m.rel_l2_combined));
  EXPECT_EQ(m.rel_l2_combined, 0.0);
}

TEST(OutputError, RejectsDifferentGrids) {
  const Eigen::MatrixXd y = Eigen::MatrixXd::Ones(10, 2);
  try {
    output_error(series(Eigen::VectorXd::LinSpaced(10, 0, 1), y),
                 series(Eigen::VectorXd::LinSpaced(10, 0, 2), y));
    FAIL() << "expected GridMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGridMismatch);
  }
}

TEST(StabilityMargin, DiagonalAndUndamped) {
  EXPECT_DOUBLE_EQ(stability_margin(Eigen::Vector2d(-1, -2).asDiagonal().toDenseMatrix()),
                   -1.0);
  PhysicalParams p;
  p.gamma = p.alpha = p.alpha0 = p.alphal = 0.0;
  EXPECT_GE(stability_margin(build_system(p, 20)), -1e-8);
}

TEST(LocalMaxima, InteriorPeaksOnly) {
  const Eigen::VectorXd E = (Eigen::VectorXd(7) << 5, 1, 3, 2, 2, 4, 0).finished();
  const std::vector<double> peaks = local_maxima(E);
  ASSERT_EQ(peaks.size(), 2u);
  EXPECT_EQ(peaks[0], 3.0);
  EXPECT_EQ(peaks[1], 4.0);
  EXPECT_DOUBLE_EQ(max_energy_increase(E), 3.0);
}

TEST(LogFit, RecoversExponentialRate) {
  const Eigen::VectorXd t = Eigen::VectorXd::LinSpaced(100, 0.0, 10.0);
  const Eigen::VectorXd v = (-0.3 * t.array()).exp() * 2.0;
  const LogFit fit = fit_log_rate(t, v, 1.0, 10.0);
  EXPECT_TRUE(fit.defined);
  EXPECT_NEAR(fit.rate, -0.3, 1e-12);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
}

TEST(PrefixLength, StopsAtFirstLargeError) {
  const Eigen::VectorXd t = Eigen::VectorXd::LinSpaced(101, 0.0, 10.0);
  Eigen::MatrixXd ref(101, 2);
  ref.col(0) = t.array().sin();
  ref.col(1) = t.array().cos();
  Eigen::MatrixXd test = ref;
  for (Eigen::Index k = 60; k < 101; ++k) test(k, 0) += 0.2;
  EXPECT_NEAR(accurate_prefix_length(series(t, ref), series(t, test), 0.05), 6.0, 1e-12);
  EXPECT_NEAR(accurate_prefix_length(series(t, ref), series(t, ref), 0.05), 10.0, 1e-12);
  const OutputSeries head = head_until(series(t, ref), 2.0);
  EXPECT_EQ(head.t.size(), 21);
}

}  // namespace
}  // namespace cablemass
