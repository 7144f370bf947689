#pragma once

// Self-contained consistency suite: every closed form against the full master
// equation, plus the structural invariants of each module.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "eitqhe/model.hpp"

namespace eitqhe {

struct CheckResult {
  std::string name;
  std::string module;
  bool passed = false;
  double value = 0.0;      // measured residual or statistic
  double tolerance = 0.0;  // pass bound on value (meaning stated in detail)
  std::string detail;
};

/// Reported quantities that have no pass/fail bound of their own.
struct InfoEntry {
  std::string name;
  double value = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::vector<InfoEntry> info;

  bool all_passed() const;
};

/// Random parameters around `base`: Gamma31 in [0.5, 2] x base, Gamma32 in
/// [0.5, 2] x base, temperatures within +-20 %, p in [0, 0.7],
/// Omega_c in [0.1, 1] gamma31bar, g = 0.
SystemParams sample_parameters(const SystemParams& base, std::mt19937_64& rng);

inline constexpr std::uint64_t kVerifySeed = 20240611;

VerifyReport run_verification(const SystemParams& base, unsigned threads = 1);

}  // namespace eitqhe
