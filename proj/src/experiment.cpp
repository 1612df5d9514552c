#include "cablemass/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "cablemass/csv.hpp"
#include "cablemass/linalg.hpp"

namespace cablemass {

namespace {

std::filesystem::path prepare_dir(const Experiment& ex) {
  std::filesystem::create_directories(ex.cfg.out_dir);
  return ex.cfg.out_dir;
}

}  // namespace

Experiment::Experiment(ExperimentConfig config)
    : cfg(std::move(config)), sys(), input(cfg.input) {
  cfg.validate();
  sys = build_system(cfg.params, cfg.n);
  if (input.kind == InputKind::kEigCos2 && input.a == 0.0 && input.b == 0.0) {
    const auto [a, b] = input2_frequencies(sys, cfg.input2_mode);
    // cos is even, so the literal (negative) reading keeps its magnitude.
    input.a = std::abs(a);
    input.b = std::abs(b);
  }
}

SimulationOptions Experiment::simulation_options() const {
  SimulationOptions opt;
  opt.t0 = cfg.t0;
  opt.tf = cfg.tf;
  opt.ode.rtol = cfg.rtol;
  opt.ode.atol = cfg.atol;
  opt.sample_count = cfg.sample_count;
  return opt;
}

BalanceOptions Experiment::balance_options() const {
  BalanceOptions opt;
  opt.allow_plateau_split = cfg.force_plateau_split;
  return opt;
}

ComparisonResult compare(const Experiment& ex) {
  ComparisonResult out;
  out.balance = balance(ex.sys, ex.cfg.r, ex.balance_options());
  out.reduced = reduce(ex.sys, out.balance);
  const SimulationOptions opt = ex.simulation_options();
  out.fom = simulate_fom(ex.sys, ex.input, opt);
  out.rom = simulate_rom(out.reduced, ex.input, opt);
  out.metrics = output_error(out.fom.output, out.rom.output);
  return out;
}

EnergyReport energy_study(const Experiment& ex) {
  const QuadraticForms forms = quadratic_forms(ex.cfg.params, ex.cfg.n);
  const Eigen::VectorXd x0 =
      sample_initial_data(ex.cfg.params, ex.cfg.n, energy_initial_position,
                          energy_initial_velocity);
  EnergyOptions opt;
  opt.ode.rtol = ex.cfg.rtol;
  opt.ode.atol = ex.cfg.atol;
  opt.sample_count = ex.cfg.sample_count;
  return energy_decay(ex.sys, forms, x0, ex.cfg.energy_tf, opt);
}

std::filesystem::path write_system(const Experiment& ex) {
  const auto dir = prepare_dir(ex);
  const auto header = [](Eigen::Index cols) {
    std::vector<std::string> h;
    for (Eigen::Index c = 0; c < cols; ++c) h.push_back("c" + std::to_string(c));
    return h;
  };
  write_csv(dir / "A.csv", header(ex.sys.A.cols()), ex.sys.A);
  write_csv(dir / "B.csv", header(1), ex.sys.B);
  write_csv(dir / "C.csv", header(ex.sys.C.cols()), ex.sys.C);
  return dir / "A.csv";
}

std::filesystem::path write_eigs(const Experiment& ex) {
  const auto dir = prepare_dir(ex);
  auto eig = eigenvalues(ex.sys.A);
  std::sort(eig.begin(), eig.end(), [](const auto& x, const auto& y) {
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
  });
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(eig.size()), 2);
  for (std::size_t k = 0; k < eig.size(); ++k) {
    rows(static_cast<Eigen::Index>(k), 0) = eig[k].real();
    rows(static_cast<Eigen::Index>(k), 1) = eig[k].imag();
  }
  write_csv(dir / "eigs.csv", {"re", "im"}, rows);
  return dir / "eigs.csv";
}

std::filesystem::path write_hsv(const Experiment& ex) {
  const auto dir = prepare_dir(ex);
  const Gramians g = gramians(ex.sys);
  const Eigen::VectorXd hsv = hankel_values(g.P, g.Q);
  Eigen::MatrixXd rows(hsv.size(), 3);
  for (Eigen::Index i = 0; i < hsv.size(); ++i) {
    rows(i, 0) = static_cast<double>(i + 1);
    rows(i, 1) = hsv(i);
    rows(i, 2) = error_bound(hsv, static_cast<int>(i + 1));
  }
  write_csv(dir / "hsv.csv", {"index", "sigma", "bound"}, rows);
  return dir / "hsv.csv";
}

std::filesystem::path write_outputs(const Experiment& ex,
                                    const ComparisonResult& result) {
  const auto dir = prepare_dir(ex);
  const OutputSeries& fom = result.fom.output;
  const OutputSeries& rom = result.rom.output;
  Eigen::MatrixXd rows(fom.t.size(), 5);
  rows.col(0) = fom.t;
  rows.middleCols(1, 2) = fom.y;
  rows.middleCols(3, 2) = rom.y;
  write_csv(dir / "outputs.csv", {"t", "y1_fom", "y2_fom", "y1_rom", "y2_rom"},
            rows);
  return dir / "outputs.csv";
}

std::filesystem::path write_error(const Experiment& ex,
                                  const ComparisonResult& result) {
  const auto dir = prepare_dir(ex);
  const ErrorMetrics& m = result.metrics;
  Eigen::MatrixXd rows(1, 6);
  rows << m.rel_l2(0), m.rel_l2(1), m.rel_l2_combined, m.rel_linf(0),
      m.rel_linf(1), m.rel_linf_combined;
  write_csv(dir / "error.csv",
            {"relL2_y1", "relL2_y2", "relL2", "relLinf_y1", "relLinf_y2",
             "relLinf"},
            rows);
  return dir / "error.csv";
}

std::filesystem::path write_energy(const Experiment& ex,
                                   const EnergyReport& report) {
  const auto dir = prepare_dir(ex);
  Eigen::MatrixXd rows(report.times.size(), 4);
  rows.col(0) = report.times;
  rows.col(1) = report.E;
  rows.col(2) = report.EK;
  rows.col(3) = report.EP;
  write_csv(dir / "energy.csv", {"t", "E", "EK", "EP"}, rows);
  Eigen::MatrixXd fit(1, 3);
  fit << report.fitted_rate, report.r_squared, report.rate_defined ? 1.0 : 0.0;
  write_csv(dir / "energy_fit.csv", {"rate", "r_squared", "defined"}, fit);
  return dir / "energy.csv";
}

std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& cfg) {
  const Experiment ex(cfg);
  std::vector<std::filesystem::path> written;
  written.push_back(write_eigs(ex));
  written.push_back(write_hsv(ex));
  const ComparisonResult result = compare(ex);
  written.push_back(write_outputs(ex, result));
  written.push_back(write_error(ex, result));
  if (cfg.energy) written.push_back(write_energy(ex, energy_study(ex)));
  return written;
}

}  // namespace cablemass
