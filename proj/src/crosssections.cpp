#include "eitqhe/crosssections.hpp"

#include <algorithm>
#include <cmath>

#include "eitqhe/error.hpp"
#include "eitqhe/perturbative.hpp"

namespace eitqhe {

namespace {

constexpr double kClosedFormTolerance = 0.05;

void require_probe(const SystemParams& params) {
  if (!(params.g > 0)) throw InvalidParameter("cross-sections need g > 0");
}

double emission_from(const CoefficientTriple& c, double w33, double scale) {
  return -(c.c22 * (1.0 - w33) + c.c33 * w33) * scale;
}

}  // namespace

double excited_fraction(const SystemParams& p, const DerivedRates& r) {
  const double dark = r.R23 * r.gamma32bar + p.OmegaC * p.OmegaC;
  return dark / (r.gamma32bar * (r.R23 + p.gamma32) + 2 * dark);
}

CoefficientTriple extract_coefficients(const SystemParams& params, const DerivedRates& rates,
                                       double d) {
  require_probe(params);
  const FirstOrderKernel k = first_order_kernel(params, rates, d);
  auto im_g_rho13 = [&](double p11, double p22, double p33) {
    return (params.g * k.rho13(params, rates, d, p11, p22, p33)).imag();
  };
  return {im_g_rho13(1, 0, 0), im_g_rho13(0, 1, 0), im_g_rho13(0, 0, 1)};
}

double sigma_A(const SystemParams& params, const DerivedRates& rates, double d) {
  const CoefficientTriple c = extract_coefficients(params, rates, d);
  return c.c11 * rates.gamma31bar / (params.g * params.g);
}

double sigma_sgc_closed_form(const SystemParams& p, const DerivedRates& r, double d) {
  require_probe(p);
  const double gs = r.gammaS;
  if (gs == 0.0) return 0.0;

  const double oc = p.OmegaC, oc2 = oc * oc, d2 = 4 * d * d;
  const double g21 = r.gamma21, g31 = r.gamma31bar, g32 = r.gamma32bar;
  const double dark = r.R23 * g32 + oc2;
  const double den = r.R23 * p.gamma31 * g32 + r.R13 * g32 * (3 * r.R23 + p.gamma32) +
                     (3 * r.R13 + p.gamma31) * oc2;

  // |E|^2 and Re E of E = (g31 - 2id)(g21 - 2id) + Oc^2.
  const double line2 = (g21 * g21 + d2) * (g31 * g31 + d2) + 2 * (g21 * g31 - d2) * oc2 + oc2 * oc2;
  const double lineRe = g21 * g31 - d2 + oc2;

  const double linear = 2 * oc * dark * lineRe / ((3 * r.R23 * g32 + g32 * p.gamma32 + 2 * oc2) * line2);
  const double feedback =
      2 * oc * (r.R13 * ((g31 * g31 + d2) * g21 + oc2 * g31) + dark * lineRe) / (den * line2);

  return g31 / p.g * (gs * linear - gs * gs * p.g * linear * feedback);
}

CrossSections sigma_E(const SystemParams& params, const DerivedRates& rates, double d) {
  require_probe(params);
  const double scale = rates.gamma31bar / (params.g * params.g);
  const double w33 = excited_fraction(params, rates);

  CrossSections cs;
  cs.weakFieldViolated = params.g >= params.OmegaC;
  cs.coefficients = extract_coefficients(params, rates, d);
  cs.sigmaA = cs.coefficients.c11 * scale;
  cs.sigmaEDirect = emission_from(cs.coefficients, w33, scale);

  DerivedRates noSgc = rates;
  noSgc.gammaS = 0.0;
  cs.sigmaEIT = emission_from(extract_coefficients(params, noSgc, d), w33, scale);
  cs.sigmaSGC = sigma_sgc_closed_form(params, rates, d);
  cs.sigmaE = cs.sigmaEIT + cs.sigmaSGC;

  const double gap = std::abs(cs.sigmaE - cs.sigmaEDirect);
  const double ref = std::max(std::abs(cs.sigmaE), std::abs(cs.sigmaEDirect));
  if (gap > kClosedFormTolerance * ref && gap > 1e-12)
    throw ConsistencyFailure("sigma_E closed form disagrees with extraction", cs.sigmaE,
                             cs.sigmaEDirect);
  return cs;
}

}  // namespace eitqhe
