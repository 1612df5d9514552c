// Command-line front end: one subcommand per artifact family.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cablemass/config.hpp"
#include "cablemass/csv.hpp"
#include "cablemass/error.hpp"
#include "cablemass/experiment.hpp"

namespace {

using namespace cablemass;

struct Flags {
  std::string config;
  std::string preset;
  std::optional<int> r;
  std::optional<int> n;
  std::optional<double> tf;
  std::string out;
};

void add_flags(CLI::App& cmd, Flags& f) {
  cmd.add_option("--config", f.config, "key = value config file")
      ->envname("CABLEMASS_CONFIG");
  cmd.add_option("--preset", f.preset, "named experiment preset")
      ->envname("CABLEMASS_PRESET");
  cmd.add_option("--r", f.r, "reduced order")->envname("CABLEMASS_R");
  cmd.add_option("--n", f.n, "finite-difference nodes")->envname("CABLEMASS_N");
  cmd.add_option("--tf", f.tf, "final simulation time")->envname("CABLEMASS_TF");
  cmd.add_option("--out", f.out, "artifact directory")->envname("CABLEMASS_OUT");
}

// The config file is read first; --preset then replaces it wholesale and the
// scalar flags override whatever remains.
ExperimentConfig resolve(const Flags& f) {
  ExperimentConfig cfg;
  if (!f.config.empty()) cfg = load_config(f.config);
  if (!f.preset.empty()) set_config_value(cfg, "run.preset", f.preset);
  if (f.r) cfg.r = *f.r;
  if (f.n) cfg.n = *f.n;
  if (f.tf) cfg.tf = *f.tf;
  if (!f.out.empty()) cfg.out_dir = f.out;
  cfg.validate();
  return cfg;
}

void report(const std::filesystem::path& p) { std::cout << "wrote " << p.string() << '\n'; }

int run(const std::string& command, const Flags& flags) {
  const Experiment ex(resolve(flags));
  if (command == "build") {
    report(write_system(ex));
  } else if (command == "eigs") {
    report(write_eigs(ex));
    std::cout << "stability_margin " << format_double(stability_margin(ex.sys)) << '\n';
  } else if (command == "balance") {
    report(write_hsv(ex));
  } else if (command == "simulate") {
    const ComparisonResult res = compare(ex);
    report(write_outputs(ex, res));
  } else if (command == "compare") {
    report(write_eigs(ex));
    report(write_hsv(ex));
    const ComparisonResult res = compare(ex);
    report(write_outputs(ex, res));
    report(write_error(ex, res));
    if (ex.cfg.energy) report(write_energy(ex, energy_study(ex)));
    std::cout << "relL2 " << format_double(res.metrics.rel_l2_combined) << '\n';
  } else if (command == "energy") {
    const EnergyReport rep = energy_study(ex);
    report(write_energy(ex, rep));
    std::cout << "fitted_rate " << format_double(rep.fitted_rate) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Balanced truncation for the nonlinear cable-mass system"};
  app.require_subcommand(1);
  Flags flags;
  const char* commands[][2] = {
      {"build", "write the state-space matrices A, B, C"},
      {"eigs", "write the spectrum of A to eigs.csv"},
      {"balance", "write Hankel singular values and error bounds to hsv.csv"},
      {"simulate", "simulate full and reduced models, write outputs.csv"},
      {"compare", "full run: eigs, hsv, outputs, error (and energy if enabled)"},
      {"energy", "unforced energy study, write energy.csv"},
  };
  for (const auto& c : commands) add_flags(*app.add_subcommand(c[0], c[1]), flags);

  CLI11_PARSE(app, argc, argv);

  try {
    return run(app.get_subcommands().front()->get_name(), flags);
  } catch (const std::exception& e) {
    std::cerr << "cablemass: " << e.what() << '\n';
    return 1;
  }
}
