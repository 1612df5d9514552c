#pragma once

// Forcing signals applied to the left mass.

#include <numbers>
#include <string>
#include <string_view>
#include <utility>

namespace cablemass {

struct StateSpaceSystem;

enum class InputKind { kZero, kSine1, kEigCos2, kSinCos3, kSquare4 };

/// How Input 2 turns the two slowest-decaying eigenvalues into frequencies.
enum class Input2Mode {
  kLiteral,  // Re(lambda) (default)
  kImag,     // |Im(lambda)|: forcing at the two dominant resonances
};

struct InputSpec {
  InputKind kind = InputKind::kSine1;
  double c1 = 0.1;
  double c2 = 0.0;
  double m = 0.2 * std::numbers::pi;  // sine / square frequency
  double nfreq = 0.0;                 // Input 3 cosine frequency
  double a = 0.0;                     // Input 2 frequencies
  double b = 0.0;
  double scale = 1.0;

  void validate() const;
};

/// +1 where sin(s) > 0, -1 where sin(s) < 0, 0 on the zero set.
double square_wave(double s);

double eval_input(const InputSpec& spec, double t);

/// du/dt away from the jumps of the square wave (zero there).
double eval_input_derivative(const InputSpec& spec, double t);

/// Named presets: "zero", "input1" .. "input4". Input 2 frequencies are left
/// at zero; fill them with input2_frequencies().
InputSpec input_preset(std::string_view name);
std::string input_name(InputKind kind);

Input2Mode parse_input2_mode(std::string_view name);

std::pair<double, double> input2_frequencies(const StateSpaceSystem& sys,
                                             Input2Mode mode = Input2Mode::kLiteral);

}  // namespace cablemass
