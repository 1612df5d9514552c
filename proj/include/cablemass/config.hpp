#pragma once

// Experiment configuration: named presets plus a small key = value file
// format with [params], [input] and [run] sections.
//
//   # comment
//   preset = "small_damp_ex1_in2"
//   [params]
//   gamma = 0.001
//   [input]
//   kind = input2
//   input2_mode = imag
//   [run]
//   n = 100
//   r = 4
//
// The preset is applied first wherever it appears; every other key then
// overrides it. Keys may also be written fully qualified (`run.r = 8`).

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cablemass/model.hpp"
#include "cablemass/signals.hpp"

namespace cablemass {

struct ExperimentConfig {
  std::string preset;  // empty when built from explicit values
  PhysicalParams params;
  InputSpec input;
  Input2Mode input2_mode = Input2Mode::kLiteral;
  int n = 100;
  int r = 4;
  double t0 = 0.0;
  double tf = 100.0;
  double rtol = 1e-3;
  double atol = 1e-6;
  int sample_count = 1000;
  std::filesystem::path out_dir = "out";
  bool energy = false;        // run the unforced energy study
  double energy_tf = 50.0;
  bool force_plateau_split = false;

  /// Throws ValidationError naming the offending field.
  void validate() const;
};

/// Preset names in catalogue order.
std::vector<std::string> preset_names();

/// Applies a named preset on top of the defaults. Throws ValidationError for
/// unknown names.
ExperimentConfig preset_config(std::string_view name);

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Sets one `section.key` (or bare run/params/input key) from text.
void set_config_value(ExperimentConfig& cfg, std::string_view key,
                      std::string_view value);

/// Initial data used by the energy study: position e^x sin(1 - x), velocity
/// cos(x).
double energy_initial_position(double x);
double energy_initial_velocity(double x);

}  // namespace cablemass
