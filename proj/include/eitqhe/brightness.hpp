#pragma once

// Spectral brightness of the emitted field along the medium.
//
// In the optical-depth coordinate z~ = N sigma_0 z the brightness obeys
//   dB/dz~ = -kappa B + source,  kappa = sA rho11 - sE (rho22 + rho33),
//   source = sE (rho22 + rho33),  B(0) = 0,
// with sA, sE in units of sigma_0 and populations from the zeroth-order state
// (held constant along z). The fixed point is source / kappa = B_black.

#include <optional>
#include <string>
#include <vector>

#include "eitqhe/model.hpp"

namespace eitqhe {

/// Lambda sE / (sA - Lambda sE); throws AboveThreshold when sA <= Lambda sE.
double black_body_limit(double lambdaRatio, double sigmaA, double sigmaE);

struct BrightnessProfile {
  std::vector<double> zTilde;
  std::vector<double> B;
  double bBlack = 0.0;  // NaN above threshold
  double kappa = 0.0;
  double source = 0.0;
  bool aboveThreshold = false;

  /// bBlack (1 - exp(-kappa z~)).
  double analytic(double z) const;
};

inline constexpr std::size_t kDefaultBrightnessSteps = 2000;
inline constexpr double kDefaultSaturationDepths = 20.0;  // zTildeMax = 20 / kappa

/// RK4 profile of the linear ODE for given loss and source.
BrightnessProfile integrate_linear(double kappa, double source, double zTildeMax,
                                   std::size_t nSteps);

/// Profile at one detuning. zTildeMax defaults to 20/kappa (20 when kappa <= 0).
BrightnessProfile integrate_brightness(const SystemParams& params, double deltaOmega31,
                                       std::optional<double> zTildeMax = std::nullopt,
                                       std::size_t nSteps = kDefaultBrightnessSteps);

/// Profiles for many detunings in one vectorized sweep. Without zTildeMax
/// each lane uses its own default depth 20/kappa.
std::vector<BrightnessProfile> integrate_brightness_batch(
    const SystemParams& params, const std::vector<double>& deltas,
    std::optional<double> zTildeMax = std::nullopt,
    std::size_t nSteps = kDefaultBrightnessSteps, unsigned threads = 1);

enum class RowFlag { Ok, AboveThreshold, Error };

std::string to_string(RowFlag flag);

struct SpectrumRow {
  double deltaOmega31 = 0.0;
  double deltaOverGamma31 = 0.0;
  double imRho13_0 = 0.0;
  double rho33_1 = 0.0;
  double sigmaA = 0.0;
  double sigmaE = 0.0;
  double sigmaEIT = 0.0;
  double sigmaSGC = 0.0;
  double bBlackOverN13 = 0.0;  // 0 when flagged
  RowFlag flag = RowFlag::Ok;
  std::string message;
};

/// One row per detuning (rad/s). The grid must be non-empty and strictly
/// increasing. Row failures are flagged, never thrown, except
/// ConsistencyFailure which signals an internal bug.
std::vector<SpectrumRow> spectrum(const SystemParams& params, const std::vector<double>& grid,
                                  unsigned threads = 1);

/// Same with explicitly supplied rates (e.g. gamma_s forced to zero).
std::vector<SpectrumRow> spectrum(const SystemParams& params, const DerivedRates& rates,
                                  const std::vector<double>& grid, unsigned threads = 1);

}  // namespace eitqhe
