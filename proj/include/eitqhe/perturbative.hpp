#pragma once

// Closed-form steady state of the Lambda engine, perturbative in the probe
// coupling g and exact in the control field. Valid for a resonant control
// field (params.deltaOmega21 == 0); the probe detuning is free.

#include <complex>

#include "eitqhe/liouvillian.hpp"
#include "eitqhe/model.hpp"

namespace eitqhe {

struct ZerothOrderSolution {
  double rho11 = 1.0;
  double rho22 = 0.0;
  double rho33 = 0.0;
  Complex rho12{};
  Complex rho13{};
  Complex rho23{};

  DensityMatrix to_density_matrix() const;
};

struct FirstOrderSolution {
  double rho33_1 = 0.0;  // rho33 through first order in g
  Complex rho13_1{};     // rho13 through first order in g
  double g = 0.0;
  bool weakFieldViolated = false;  // g >= Omega_c
};

/// Detuning-dependent pieces shared by the first-order formulas.
struct FirstOrderKernel {
  Complex lineDenominator;   // (gamma31 - 2i d)(gamma21 - 2i d) + Omega_c^2
  double populationDenominator = 0.0;
  /// rho33^(1) / rho33^(0): 1 + g * (SGC-driven population change per unit rho33).
  double excitedGrowth = 1.0;

  /// rho13 through first order in g for arbitrary zeroth-order populations;
  /// linear in (p11, p22, p33).
  Complex rho13(const SystemParams& params, const DerivedRates& rates, double deltaOmega31,
                double p11, double p22, double p33) const;
};

FirstOrderKernel first_order_kernel(const SystemParams& params, const DerivedRates& rates,
                                    double deltaOmega31);

ZerothOrderSolution rho0(const SystemParams& params, const DerivedRates& rates,
                         double deltaOmega31);

FirstOrderSolution rho1(const SystemParams& params, const DerivedRates& rates,
                        double deltaOmega31, const ZerothOrderSolution& z0);

/// (rho22 + rho33) / rho11 of the zeroth-order state.
double lambda_ratio(const ZerothOrderSolution& z0);

}  // namespace eitqhe
