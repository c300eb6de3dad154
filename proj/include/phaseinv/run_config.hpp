#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "phaseinv/global_min.hpp"

namespace phaseinv {

enum class Mode { kForward, kInvert };

// Everything a forward table or an inversion campaign needs. Defaults are the
// reference parameter set: L = 5000, gamma = 0.01, nu = 0.16, epsilon = 0.02,
// beta = 1.1, j_max = 30, eps_r = 0.1, M = 2, R = 10, q in [-20, 0], l = 0..30.
struct RunConfig {
  Mode mode = Mode::kInvert;
  std::string potential_name = "q3";  // preset name, or "custom"
  LayeredPotential potential;         // resolved from potential_name / custom layers
  std::vector<double> k_values{2.5};
  int l_max = 30;
  std::vector<double> noise_levels{0.0};
  AdmissibleBox box;
  IrrsParams irrs;
  std::string output_dir = "out";

  RunConfig();
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// q1 (-2/3), q2 (-4), q3 (-10) on [0, 8); "zero" is the empty potential.
// Throws ConfigError for unknown names.
LayeredPotential preset_potential(std::string_view name);

// `key = value` lines, '#' starts a comment. Every problem is reported in one
// ConfigError, each prefixed with its source line.
RunConfig parse_config_text(std::string_view text, std::string_view source = "<config>");
RunConfig parse_config(const std::filesystem::path& path);

// Text that parse_config_text reads back to an equal RunConfig.
std::string serialize_config(const RunConfig& config);

}  // namespace phaseinv
