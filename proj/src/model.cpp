#include "eitqhe/model.hpp"

#include <cmath>
#include <string>

#include "eitqhe/error.hpp"

namespace eitqhe {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidParameter(what);
}

}  // namespace

void validate(const SystemParams& p) {
  require(std::isfinite(p.gamma31) && p.gamma31 > 0, "gamma31 must be > 0");
  require(std::isfinite(p.gamma32) && p.gamma32 > 0, "gamma32 must be > 0");
  require(std::isfinite(p.OmegaC) && p.OmegaC > 0, "OmegaC must be > 0");
  require(std::isfinite(p.g) && p.g >= 0, "g must be >= 0");
  require(p.p >= 0 && p.p <= 1, "p out of [0,1]");
  require(std::isfinite(p.T13) && p.T13 >= 0, "T13 must be >= 0");
  require(std::isfinite(p.T23) && p.T23 >= 0, "T23 must be >= 0");
  require(std::isfinite(p.omega12) && p.omega12 > 0, "omega12 must be > 0");
  require(std::isfinite(p.omega13) && p.omega13 > p.omega12, "omega13 must exceed omega12");
  require(std::isfinite(p.deltaOmega21), "deltaOmega21 must be finite");
}

double planck_occupation(double omega, double T) {
  if (!(omega > 0)) throw InvalidParameter("planck_occupation: omega must be > 0");
  if (!(T >= 0)) throw InvalidParameter("planck_occupation: T must be >= 0");
  if (T == 0) return 0.0;
  const double x = PhysicalConstants::hbar * omega / (PhysicalConstants::kB * T);
  return 1.0 / std::expm1(x);
}

DerivedRates derive_rates_with_occupations(const SystemParams& params, double n13,
                                           double n23) {
  validate(params);
  DerivedRates r;
  r.n13 = n13;
  r.n23 = n23;
  r.R13 = params.gamma31 * n13;
  r.R23 = params.gamma32 * n23;
  r.gamma21 = r.R13 + r.R23;
  r.gamma31bar = params.gamma31 + params.gamma32 + r.R23 + 2 * r.R13;
  r.gamma32bar = params.gamma31 + params.gamma32 + 2 * r.R23 + r.R13;
  r.gammaS = params.p * std::sqrt(params.gamma31 * params.gamma32) / 2;
  return r;
}

DerivedRates derive_rates(const SystemParams& params) {
  validate(params);
  return derive_rates_with_occupations(params, planck_occupation(params.omega13, params.T13),
                                       planck_occupation(params.omega23(), params.T23));
}

}  // namespace eitqhe
