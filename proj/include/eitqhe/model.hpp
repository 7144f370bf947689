#pragma once

// Physical parameters of the three-level Lambda engine and the rates derived
// from them. Frequencies and rates are angular (rad/s) throughout.
//
// Level labels: |1> ground, |2> metastable, |3> excited. Gamma31/Gamma32 are
// bare spontaneous decays; gamma21/gamma31bar/gamma32bar are the coherence
// dephasings built from them and the thermal pumping rates.

namespace eitqhe {

struct PhysicalConstants {
  static constexpr double hbar = 1.054571817e-34;  // J s
  static constexpr double kB = 1.380649e-23;       // J / K
};

struct SystemParams {
  double gamma31 = 1e7;   // Gamma_31, decay 3 -> 1
  double gamma32 = 6e7;   // Gamma_32, decay 3 -> 2
  double omega13 = 4e15;  // transition frequency 1 <-> 3
  double omega12 = 1e15;  // transition frequency 1 <-> 2
  double T13 = 3778.0;    // K
  double T23 = 5778.0;    // K
  double p = 0.0;         // cos of the angle between d31 and d32
  double OmegaC = 5e7;    // control Rabi frequency
  double g = 2.5e6;       // probe coupling
  /// Two-photon detuning at probe line centre. The two-photon detuning seen
  /// by the generator is deltaOmega21 + deltaOmega31, so zero means the
  /// control field is resonant with 2 <-> 3.
  double deltaOmega21 = 0.0;

  double omega23() const { return omega13 - omega12; }
};

/// Throws InvalidParameter naming the first violated invariant.
void validate(const SystemParams& params);

struct DerivedRates {
  double n13 = 0.0;
  double n23 = 0.0;
  double R13 = 0.0;
  double R23 = 0.0;
  double gamma21 = 0.0;
  double gamma31bar = 0.0;
  double gamma32bar = 0.0;
  double gammaS = 0.0;
};

/// Bose-Einstein occupation 1/(exp(hbar w / kB T) - 1); exactly 0 at T = 0.
double planck_occupation(double omega, double T);

DerivedRates derive_rates(const SystemParams& params);

/// Same as derive_rates but with the photon occupations supplied directly.
DerivedRates derive_rates_with_occupations(const SystemParams& params, double n13,
                                           double n23);

/// The default probe coupling used when a configuration leaves g unset.
inline constexpr double kDefaultProbeCouplingRatio = 0.05;  // g / Omega_c

}  // namespace eitqhe
