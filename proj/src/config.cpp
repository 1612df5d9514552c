#include "cablemass/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "cablemass/error.hpp"

namespace cablemass {

namespace {

struct Preset {
  const char* name;
  const char* alias;
  void (*apply)(ExperimentConfig&);
};

void damping(PhysicalParams& p, double gamma, double alpha, double alpha0,
             double alphal) {
  p.gamma = gamma;
  p.alpha = alpha;
  p.alpha0 = alpha0;
  p.alphal = alphal;
}

void stiffness(PhysicalParams& p, double k) { p.k0 = p.kl = k; }

const Preset kPresets[] = {
    {"exp_stab_Ex1", "example1_stability",
     [](ExperimentConfig& c) {
       damping(c.params, 0.1, 0.0, 0.0, 0.1);
       stiffness(c.params, 1.0);
       c.input = input_preset("zero");
       c.energy = true;
       c.energy_tf = 50.0;
     }},
    {"exp_stability2", "example2_stability",
     [](ExperimentConfig& c) {
       damping(c.params, 0.0, 0.01, 0.01, 0.01);
       stiffness(c.params, 0.01);
       c.input = input_preset("zero");
       c.energy = true;
       c.energy_tf = 100.0;
     }},
    {"small_damp_ex1_in2", "example1_input2_smalldamp",
     [](ExperimentConfig& c) {
       damping(c.params, 0.001, 0.0, 0.0, 0.1);
       stiffness(c.params, 0.1);
       c.input = input_preset("input2");
     }},
    {"small_damp_ex5_in4", "example5_input4_smalldamp",
     [](ExperimentConfig& c) {
       damping(c.params, 0.001, 0.0, 0.0, 0.0);
       stiffness(c.params, 0.1);
       c.input = input_preset("input4");
     }},
    {"small_stiff_ex2_in1", "example2_input1_smallstiff",
     [](ExperimentConfig& c) {
       damping(c.params, 0.0, 0.1, 0.1, 0.1);
       stiffness(c.params, 0.001);
       c.input = input_preset("input1");
     }},
    {"small_stiff_ex1_in4", "example1_input4_smallstiff",
     [](ExperimentConfig& c) {
       damping(c.params, 0.1, 0.0, 0.0, 0.1);
       stiffness(c.params, 0.001);
       c.input = input_preset("input4");
     }},
    {"small_stiff_ex5_in4", "example5_input4_smallstiff",
     [](ExperimentConfig& c) {
       damping(c.params, 0.1, 0.0, 0.0, 0.0);
       stiffness(c.params, 0.001);
       c.input = input_preset("input4");
       c.tf = 300.0;
     }},
    {"small_all_ex3_in2", "example3_input2_smallall",
     [](ExperimentConfig& c) {
       damping(c.params, 0.001, 0.001, 0.0, 0.0);
       stiffness(c.params, 0.001);
       c.input = input_preset("input2");
     }},
    {"small_all_ex3_in4", "example3_input4_smallall",
     [](ExperimentConfig& c) {
       damping(c.params, 0.001, 0.001, 0.0, 0.0);
       stiffness(c.params, 0.001);
       c.input = input_preset("input4");
     }},
};

[[noreturn]] void parse_error(int line, const std::string& what) {
  throw Error(ErrorCode::kParseError,
              "line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view unquote(std::string_view s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') &&
      s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

double to_double(std::string_view key, std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kParseError, std::string(key) +
                                            ": expected a number, got '" +
                                            std::string(text) + "'");
  }
  return value;
}

int to_int(std::string_view key, std::string_view text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kParseError, std::string(key) +
                                            ": expected an integer, got '" +
                                            std::string(text) + "'");
  }
  return value;
}

bool to_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw Error(ErrorCode::kParseError,
              std::string(key) + ": expected a boolean, got '" +
                  std::string(text) + "'");
}

// Qualifies a bare key with the section it belongs to.
std::string qualify(std::string_view key) {
  if (key.find('.') != std::string_view::npos) return std::string(key);
  static const std::map<std::string, std::string, std::less<>> kSections = {
      {"l", "params"},      {"m0", "params"},     {"ml", "params"},
      {"k0", "params"},     {"kl", "params"},     {"k3", "params"},
      {"beta", "params"},   {"gamma", "params"},  {"alpha", "params"},
      {"alpha0", "params"}, {"alphal", "params"}, {"kind", "input"},
      {"c1", "input"},      {"c2", "input"},      {"m", "input"},
      {"nfreq", "input"},   {"a", "input"},       {"b", "input"},
      {"scale", "input"},   {"input2_mode", "input"}};
  const auto it = kSections.find(key);
  return (it == kSections.end() ? std::string("run") : it->second) + "." +
         std::string(key);
}

}  // namespace

void ExperimentConfig::validate() const {
  try {
    params.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kValidationError, e.what());
  }
  input.validate();
  const auto fail = [](const std::string& field, const std::string& why) {
    throw Error(ErrorCode::kValidationError, field + " " + why);
  };
  if (n < 3) fail("n", "must be >= 3");
  if (r < 1 || r > 2 * n) fail("r", "must lie in [1, 2n]");
  if (!(std::isfinite(t0) && std::isfinite(tf) && tf > t0)) {
    fail("tf", "must be finite and exceed t0");
  }
  if (!(rtol > 0.0)) fail("rtol", "must be positive");
  if (!(atol > 0.0)) fail("atol", "must be positive");
  if (sample_count < 2) fail("sample_count", "must be >= 2");
  if (!(energy_tf > 0.0)) fail("energy_tf", "must be positive");
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& p : kPresets) names.emplace_back(p.name);
  return names;
}

ExperimentConfig preset_config(std::string_view name) {
  for (const auto& p : kPresets) {
    if (name == p.name || name == p.alias) {
      ExperimentConfig cfg;
      cfg.preset = p.name;
      p.apply(cfg);
      return cfg;
    }
  }
  throw Error(ErrorCode::kValidationError,
              "preset: unknown name '" + std::string(name) + "'");
}

void set_config_value(ExperimentConfig& cfg, std::string_view raw_key,
                      std::string_view raw_value) {
  const std::string key = qualify(raw_key);
  const std::string_view v = unquote(trim(raw_value));
  auto& p = cfg.params;
  auto& in = cfg.input;
  const std::map<std::string, double*, std::less<>> doubles = {
      {"params.l", &p.l},           {"params.m0", &p.m0},
      {"params.ml", &p.ml},         {"params.k0", &p.k0},
      {"params.kl", &p.kl},         {"params.k3", &p.k3},
      {"params.beta", &p.beta},     {"params.gamma", &p.gamma},
      {"params.alpha", &p.alpha},   {"params.alpha0", &p.alpha0},
      {"params.alphal", &p.alphal}, {"input.c1", &in.c1},
      {"input.c2", &in.c2},         {"input.m", &in.m},
      {"input.nfreq", &in.nfreq},   {"input.a", &in.a},
      {"input.b", &in.b},           {"input.scale", &in.scale},
      {"run.t0", &cfg.t0},          {"run.tf", &cfg.tf},
      {"run.rtol", &cfg.rtol},      {"run.atol", &cfg.atol},
      {"run.energy_tf", &cfg.energy_tf}};
  if (const auto it = doubles.find(key); it != doubles.end()) {
    *it->second = to_double(key, v);
  } else if (key == "run.n") {
    cfg.n = to_int(key, v);
  } else if (key == "run.r") {
    cfg.r = to_int(key, v);
  } else if (key == "run.sample_count") {
    cfg.sample_count = to_int(key, v);
  } else if (key == "run.out") {
    cfg.out_dir = std::string(v);
  } else if (key == "run.energy") {
    cfg.energy = to_bool(key, v);
  } else if (key == "run.force_plateau_split") {
    cfg.force_plateau_split = to_bool(key, v);
  } else if (key == "input.kind") {
    // Switching kind resets the amplitudes and frequencies to that input's
    // defaults.
    const double scale = in.scale;
    in = input_preset(v);
    in.scale = scale;
  } else if (key == "input.input2_mode") {
    cfg.input2_mode = parse_input2_mode(v);
  } else if (key == "run.preset") {
    const auto out = cfg.out_dir;
    cfg = preset_config(v);
    cfg.out_dir = out;
  } else {
    throw Error(ErrorCode::kParseError, "unknown key '" + key + "'");
  }
}

ExperimentConfig parse_config(std::string_view text) {
  struct Entry {
    std::string key;
    std::string value;
    int line;
  };
  std::vector<Entry> entries;
  std::string section;
  std::istringstream stream{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') parse_error(line_no, "unterminated section");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "params" && section != "input" && section != "run") {
        parse_error(line_no, "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) parse_error(line_no, "expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) parse_error(line_no, "empty key");
    std::string full = std::string(key);
    if (!section.empty() && key.find('.') == std::string_view::npos) {
      full = section + "." + full;
    }
    entries.push_back({qualify(full), std::string(value), line_no});
  }

  ExperimentConfig cfg;
  for (const auto& e : entries) {
    if (e.key != "run.preset") continue;
    try {
      set_config_value(cfg, e.key, e.value);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::kValidationError) throw;
      parse_error(e.line, err.what());
    }
  }
  for (const auto& e : entries) {
    if (e.key == "run.preset") continue;
    try {
      set_config_value(cfg, e.key, e.value);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::kValidationError) throw;
      parse_error(e.line, err.what());
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kParseError,
                "cannot open config file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

double energy_initial_position(double x) { return std::exp(x) * std::sin(1.0 - x); }
double energy_initial_velocity(double x) { return std::cos(x); }

}  // namespace cablemass
