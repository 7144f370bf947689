#pragma once

// Run configuration: a single JSON document.
//
// {
//   "params": {
//     "gamma31": 1e7, "gamma32": 6e7, "omega13": 4e15, "omega12": 1e15,
//     "T13": 3778, "T23": 5778, "p": 0.7,
//     "OmegaC": {"value": 0.7, "unit": "gamma31"},
//     "g": {"value": 0.05, "unit": "OmegaC"},
//     "deltaOmega21": 0
//   },
//   "grids": {
//     "detuning": {"min": -3, "max": 3, "count": 601},
//     "p": [0.1, 0.3, 0.5, 0.7],
//     "OmegaC": {"min": 0.1, "max": 1.0, "count": 10}
//   },
//   "brightness": {"nSteps": 2000, "zTildeMax": 500, "detunings": [0.0]},
//   "outputs": {"directory": "out"}
// }
//
// Plain numbers are rad/s. "gamma31" units mean multiples of the dephasing
// gamma31bar of the configured atom; "OmegaC" units (g only) mean g / Omega_c
// and follow Omega_c through sweeps. Grids are in gamma31 units.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eitqhe/error.hpp"
#include "eitqhe/model.hpp"

namespace eitqhe {

/// Every problem found in a configuration, one message per entry.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const noexcept { return errors_; }

 private:
  std::vector<std::string> errors_;
};

struct GridSpec {
  double min = -3.0;
  double max = 3.0;
  std::size_t count = 601;

  /// count equally spaced points, endpoints exact, times `unit`.
  std::vector<double> values(double unit = 1.0) const;
};

struct BrightnessSettings {
  std::size_t nSteps = 2000;
  std::optional<double> zTildeMax;
  std::vector<double> detunings{0.0};  // gamma31 units
};

struct RunConfig {
  SystemParams params;
  /// g / Omega_c when g was given in OmegaC units; sweeps over Omega_c keep it.
  std::optional<double> gOverOmegaC;
  GridSpec detuning;
  std::vector<double> pValues;       // defaults to {params.p}
  std::vector<double> omegaCValues;  // gamma31 units; defaults to {params.OmegaC / unit}
  BrightnessSettings brightness;
  std::filesystem::path outputDir = "out";
  std::string mode;  // optional default mode; empty when absent

  /// gamma31bar of params: the unit of every "gamma31" quantity.
  double gamma31Unit() const;

  /// params with p and Omega_c (rad/s) replaced, g rescaled when tied to Omega_c.
  SystemParams at(double p, double omegaC) const;
};

/// Parses and validates; throws ConfigError listing every error at once.
RunConfig validate_config(std::string_view text);

/// Reads `path` and validates it. I/O failures are ConfigErrors too.
RunConfig load_config(const std::filesystem::path& path);

}  // namespace eitqhe
