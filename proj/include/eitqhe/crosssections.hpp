#pragma once

// Absorption and emission cross-sections in units of the bare resonant
// cross-section sigma_0. They are read off the first-order probe coherence:
//
//   Im(g rho13^(1)) = c11 rho11 + c22 rho22 + c33 rho33
//                   = sigma_A rho11 - sigma_E (rho22 + rho33)   (times g^2/gamma31)
//
// so sigma_A = c11 gamma31 / g^2 and sigma_E is the population-weighted
// emission coefficient. The bare two-level resonant sigma_A is exactly 1.

#include "eitqhe/model.hpp"

namespace eitqhe {

struct CoefficientTriple {
  double c11 = 0.0;
  double c22 = 0.0;
  double c33 = 0.0;
};

struct CrossSections {
  double sigmaA = 0.0;
  double sigmaE = 0.0;    // sigmaEIT + sigmaSGC
  double sigmaEIT = 0.0;  // emission with gamma_s = 0
  double sigmaSGC = 0.0;  // closed form
  double sigmaEDirect = 0.0;  // extraction at the actual gamma_s
  CoefficientTriple coefficients;
  bool weakFieldViolated = false;
};

/// Requires g > 0. The weak-field flag (g >= Omega_c) is reported by sigma_E.
CoefficientTriple extract_coefficients(const SystemParams& params, const DerivedRates& rates,
                                       double deltaOmega31);

double sigma_A(const SystemParams& params, const DerivedRates& rates, double deltaOmega31);

/// Throws ConsistencyFailure when closed form and extraction differ by more
/// than 5 % relative.
CrossSections sigma_E(const SystemParams& params, const DerivedRates& rates,
                      double deltaOmega31);

/// sigma_SGC = (gamma31/g) [gamma_s D - gamma_s^2 g D K]: linear term from the
/// zeroth-order SGC coherence, quadratic term from its feedback on rho33.
double sigma_sgc_closed_form(const SystemParams& params, const DerivedRates& rates,
                             double deltaOmega31);

/// Fraction rho33 / (rho22 + rho33) of the zeroth-order state (independent of R13).
double excited_fraction(const SystemParams& params, const DerivedRates& rates);

}  // namespace eitqhe
