#include "eitqhe/perturbative.hpp"

#include <cmath>

#include "eitqhe/error.hpp"

namespace eitqhe {

namespace {

const Complex I(0.0, 1.0);

void require_resonant_control(const SystemParams& params) {
  validate(params);
  if (params.deltaOmega21 != 0.0)
    throw InvalidParameter("closed forms need a resonant control field (deltaOmega21 == 0)");
}

// Common denominator of the zeroth-order populations.
double population_denominator(const SystemParams& p, const DerivedRates& r) {
  const double oc2 = p.OmegaC * p.OmegaC;
  return r.R23 * p.gamma31 * r.gamma32bar + r.R13 * r.gamma32bar * (3 * r.R23 + p.gamma32) +
         (3 * r.R13 + p.gamma31) * oc2;
}

Complex line_denominator(const SystemParams& p, const DerivedRates& r, double d) {
  return (r.gamma31bar - 2.0 * I * d) * (r.gamma21 - 2.0 * I * d) + p.OmegaC * p.OmegaC;
}

}  // namespace

DensityMatrix ZerothOrderSolution::to_density_matrix() const {
  Eigen::Matrix3cd m;
  m << rho11, rho12, rho13, std::conj(rho12), rho22, rho23, std::conj(rho13), std::conj(rho23),
      rho33;
  return DensityMatrix(m);
}

ZerothOrderSolution rho0(const SystemParams& params, const DerivedRates& r, double d) {
  require_resonant_control(params);
  const double den = population_denominator(params, r);
  if (!(den > 0)) throw InvalidParameter("rho0: vanishing population denominator");

  const double oc = params.OmegaC, oc2 = oc * oc;
  const double dark = r.R23 * r.gamma32bar + oc2;
  ZerothOrderSolution z;
  z.rho11 = (r.R13 + params.gamma31) * dark / den;
  z.rho22 = r.R13 * (r.gamma32bar * (r.R23 + params.gamma32) + oc2) / den;
  z.rho33 = r.R13 * dark / den;
  z.rho23 = -I * r.R13 * params.gamma32 * oc / den;

  // SGC coherences, written in terms of rho33.
  const Complex e = line_denominator(params, r, d);
  z.rho12 = 2.0 * r.gammaS * z.rho33 * (r.gamma31bar - 2.0 * I * d) / e;
  z.rho13 = -2.0 * I * r.gammaS * z.rho33 * oc / e;
  return z;
}

FirstOrderKernel first_order_kernel(const SystemParams& params, const DerivedRates& r,
                                    double d) {
  require_resonant_control(params);
  FirstOrderKernel k;
  k.lineDenominator = line_denominator(params, r, d);
  k.populationDenominator = population_denominator(params, r);
  if (!(k.populationDenominator > 0))
    throw InvalidParameter("first order: vanishing population denominator");

  // Zeroth-order coherences per unit rho33.
  const double oc = params.OmegaC, oc2 = oc * oc;
  const Complex q12 = 2.0 * r.gammaS * (r.gamma31bar - 2.0 * I * d) / k.lineDenominator;
  const Complex q13 = -2.0 * I * r.gammaS * oc / k.lineDenominator;
  // The probe acting on the SGC coherences moves population out of |3>:
  // rho33^(1) = rho33 - g [(rho12 + rho21) R13 Oc + i(rho13 - rho31)(R23 g32 + Oc^2)] / 2D.
  const Complex bracket = (q12 + std::conj(q12)) * r.R13 * oc +
                          I * (q13 - std::conj(q13)) * (r.R23 * r.gamma32bar + oc2);
  k.excitedGrowth = 1.0 - params.g * bracket.real() / (2.0 * k.populationDenominator);
  return k;
}

Complex FirstOrderKernel::rho13(const SystemParams& params, const DerivedRates& r, double d,
                                double p11, double p22, double p33) const {
  const double g = params.g, oc = params.OmegaC;
  const Complex absorption = I * g * (p11 - p33) * (r.gamma21 - 2.0 * I * d);
  const Complex raman = -I * g * oc * oc * (p22 - p33) / r.gamma32bar;
  const Complex sgc = -2.0 * I * oc * r.gammaS * (excitedGrowth * p33);
  return (absorption + raman + sgc) / lineDenominator;
}

FirstOrderSolution rho1(const SystemParams& params, const DerivedRates& r, double d,
                        const ZerothOrderSolution& z0) {
  const FirstOrderKernel k = first_order_kernel(params, r, d);
  FirstOrderSolution s;
  s.g = params.g;
  s.weakFieldViolated = params.g >= params.OmegaC;
  s.rho33_1 = k.excitedGrowth * z0.rho33;
  s.rho13_1 = k.rho13(params, r, d, z0.rho11, z0.rho22, z0.rho33);
  return s;
}

double lambda_ratio(const ZerothOrderSolution& z0) {
  if (!(z0.rho11 > 0)) throw InvalidParameter("lambda_ratio: rho11 must be > 0");
  return (z0.rho22 + z0.rho33) / z0.rho11;
}

}  // namespace eitqhe
