#include "cablemass/signals.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "cablemass/error.hpp"
#include "cablemass/linalg.hpp"
#include "cablemass/model.hpp"

namespace cablemass {

void InputSpec::validate() const {
  for (const double f : {m, nfreq, a, b}) {
    if (!(std::isfinite(f) && f >= 0.0)) {
      throw Error(ErrorCode::kValidationError,
                  "input frequencies must be finite and nonnegative");
    }
  }
  if (!std::isfinite(c1) || !std::isfinite(c2) || !std::isfinite(scale)) {
    throw Error(ErrorCode::kValidationError, "input amplitudes must be finite");
  }
}

double square_wave(double s) {
  const double v = std::sin(s);
  if (v > 0.0) return 1.0;
  if (v < 0.0) return -1.0;
  return 0.0;
}

double eval_input(const InputSpec& spec, double t) {
  double u = 0.0;
  switch (spec.kind) {
    case InputKind::kZero:
      return 0.0;
    case InputKind::kSine1:
      u = spec.c1 * std::sin(spec.m * t);
      break;
    case InputKind::kEigCos2:
      u = spec.c1 * std::cos(spec.a * t) + spec.c2 * std::cos(spec.b * t);
      break;
    case InputKind::kSinCos3:
      u = spec.c1 * std::sin(spec.m * t) + spec.c2 * std::cos(spec.nfreq * t);
      break;
    case InputKind::kSquare4:
      u = spec.c1 * square_wave(spec.m * t);
      break;
  }
  return spec.scale * u;
}

double eval_input_derivative(const InputSpec& spec, double t) {
  double du = 0.0;
  switch (spec.kind) {
    case InputKind::kZero:
    case InputKind::kSquare4:
      return 0.0;
    case InputKind::kSine1:
      du = spec.c1 * spec.m * std::cos(spec.m * t);
      break;
    case InputKind::kEigCos2:
      du = -spec.c1 * spec.a * std::sin(spec.a * t) -
           spec.c2 * spec.b * std::sin(spec.b * t);
      break;
    case InputKind::kSinCos3:
      du = spec.c1 * spec.m * std::cos(spec.m * t) -
           spec.c2 * spec.nfreq * std::sin(spec.nfreq * t);
      break;
  }
  return spec.scale * du;
}

InputSpec input_preset(std::string_view name) {
  InputSpec spec;
  if (name == "zero") {
    spec.kind = InputKind::kZero;
    spec.c1 = 0.0;
  } else if (name == "input1") {
    spec.kind = InputKind::kSine1;
  } else if (name == "input2") {
    spec.kind = InputKind::kEigCos2;
    spec.c1 = 0.02;
    spec.c2 = 0.03;
    spec.m = 0.0;
  } else if (name == "input3") {
    // Amplitudes and frequencies are user choices; these defaults are ours.
    spec.kind = InputKind::kSinCos3;
    spec.c1 = 0.05;
    spec.c2 = 0.05;
    spec.m = 1.0;
    spec.nfreq = 2.0;
  } else if (name == "input4") {
    spec.kind = InputKind::kSquare4;
  } else {
    throw Error(ErrorCode::kValidationError,
                "unknown input '" + std::string(name) + "'");
  }
  return spec;
}

std::string input_name(InputKind kind) {
  switch (kind) {
    case InputKind::kZero: return "zero";
    case InputKind::kSine1: return "input1";
    case InputKind::kEigCos2: return "input2";
    case InputKind::kSinCos3: return "input3";
    case InputKind::kSquare4: return "input4";
  }
  return "zero";
}

Input2Mode parse_input2_mode(std::string_view name) {
  if (name == "imag") return Input2Mode::kImag;
  if (name == "literal") return Input2Mode::kLiteral;
  throw Error(ErrorCode::kValidationError,
              "input2_mode must be 'imag' or 'literal'");
}

std::pair<double, double> input2_frequencies(const StateSpaceSystem& sys,
                                             Input2Mode mode) {
  std::vector<std::complex<double>> reps;
  for (const auto& lambda : eigenvalues(sys.A)) {
    if (lambda.imag() >= 0.0) reps.push_back(lambda);
  }
  if (reps.size() < 2) {
    throw Error(ErrorCode::kValidationError,
                "need two eigenvalue representatives for Input 2");
  }
  // Real part descending; ties broken by |Im| so the choice is reproducible.
  std::sort(reps.begin(), reps.end(), [](const auto& x, const auto& y) {
    if (x.real() != y.real()) return x.real() > y.real();
    return std::abs(x.imag()) < std::abs(y.imag());
  });
  if (mode == Input2Mode::kLiteral) return {reps[0].real(), reps[1].real()};
  return {std::abs(reps[0].imag()), std::abs(reps[1].imag())};
}

}  // namespace cablemass
