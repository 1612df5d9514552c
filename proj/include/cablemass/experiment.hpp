#pragma once

// Experiment runner behind the command-line tool. Each write_* call emits one
// CSV artifact into cfg.out_dir.

#include <filesystem>
#include <vector>

#include "cablemass/analysis.hpp"
#include "cablemass/balance.hpp"
#include "cablemass/config.hpp"
#include "cablemass/model.hpp"
#include "cablemass/rom.hpp"

namespace cablemass {

struct Experiment {
  ExperimentConfig cfg;
  StateSpaceSystem sys;
  InputSpec input;  // with Input 2 frequencies resolved

  explicit Experiment(ExperimentConfig config);

  SimulationOptions simulation_options() const;
  BalanceOptions balance_options() const;
};

struct ComparisonResult {
  BalanceResult balance;
  ReducedSystem reduced;
  SimulationResult fom;
  SimulationResult rom;
  ErrorMetrics metrics;
};

ComparisonResult compare(const Experiment& ex);
EnergyReport energy_study(const Experiment& ex);

std::filesystem::path write_system(const Experiment& ex);   // A/B/C CSVs
std::filesystem::path write_eigs(const Experiment& ex);     // eigs.csv
std::filesystem::path write_hsv(const Experiment& ex);      // hsv.csv
std::filesystem::path write_outputs(const Experiment& ex,
                                    const ComparisonResult& result);
std::filesystem::path write_error(const Experiment& ex,
                                  const ComparisonResult& result);
std::filesystem::path write_energy(const Experiment& ex,
                                   const EnergyReport& report);

/// Full run: eigs, hsv, outputs, error and (when cfg.energy) energy CSVs.
std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& cfg);

}  // namespace cablemass
