#pragma once

// Batch modes behind the eit-qhe command line.

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "eitqhe/config.hpp"

namespace eitqhe {

enum class Mode { Spectrum, SweepP, Sweep2d, Verify, BrightnessProfile };

std::optional<Mode> parse_mode(std::string_view name);
std::string_view to_string(Mode mode);

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitConsistencyFailure = 2;

/// Column contract of the per-p spectrum CSVs.
const std::vector<std::string>& spectrum_columns();

/// File name of the spectrum CSV for one p value, e.g. "spectrum_p0.7.csv".
std::string spectrum_file_name(double p);

struct RunOutcome {
  int exitCode = kExitOk;
  std::vector<std::filesystem::path> written;
};

/// Runs one mode and writes its artifacts into outDir (created if missing).
/// Throws ConfigError for unusable output locations and ConsistencyFailure
/// for internal disagreements; verify failures are reported via exitCode.
RunOutcome run(Mode mode, const RunConfig& config, const std::filesystem::path& outDir,
               unsigned threads, std::ostream& log);

}  // namespace eitqhe
