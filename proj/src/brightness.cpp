#include "eitqhe/brightness.hpp"

#include <cmath>
#include <limits>
#include <span>

#include "eitqhe/crosssections.hpp"
#include "eitqhe/error.hpp"
#include "eitqhe/kernels.hpp"
#include "eitqhe/parallel.hpp"
#include "eitqhe/perturbative.hpp"

namespace eitqhe {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct LossAndSource {
  double kappa;
  double source;
};

LossAndSource loss_and_source(const SystemParams& params, const DerivedRates& rates,
                              double d) {
  const ZerothOrderSolution z = rho0(params, rates, d);
  const CrossSections cs = sigma_E(params, rates, d);
  const double upper = z.rho22 + z.rho33;
  return {cs.sigmaA * z.rho11 - cs.sigmaE * upper, cs.sigmaE * upper};
}

double default_depth(double kappa) {
  return kappa > 0 ? kDefaultSaturationDepths / kappa : kDefaultSaturationDepths;
}

void fill_profile(BrightnessProfile& prof, double kappa, double source, double zMax,
                  std::size_t nSteps) {
  prof.kappa = kappa;
  prof.source = source;
  prof.aboveThreshold = !(kappa > 0);
  prof.bBlack = prof.aboveThreshold ? kNaN : source / kappa;
  prof.zTilde.resize(nSteps + 1);
  const double h = zMax / static_cast<double>(nSteps);
  for (std::size_t k = 0; k <= nSteps; ++k) prof.zTilde[k] = h * static_cast<double>(k);
  prof.zTilde.back() = zMax;
}

}  // namespace

double black_body_limit(double lambdaRatio, double sigmaA, double sigmaE) {
  const double gain = lambdaRatio * sigmaE;
  if (!(sigmaA > gain))
    throw AboveThreshold("black_body_limit: sigma_A <= Lambda sigma_E (above gain threshold)");
  return gain / (sigmaA - gain);
}

double BrightnessProfile::analytic(double z) const {
  if (aboveThreshold) {
    if (kappa == 0) return source * z;
    return source / kappa * (1.0 - std::exp(-kappa * z));
  }
  return -bBlack * std::expm1(-kappa * z);
}

BrightnessProfile integrate_linear(double kappa, double source, double zTildeMax,
                                   std::size_t nSteps) {
  if (!(zTildeMax > 0)) throw InvalidParameter("zTildeMax must be > 0");
  if (nSteps < 10) throw InvalidParameter("nSteps must be >= 10");
  BrightnessProfile prof;
  fill_profile(prof, kappa, source, zTildeMax, nSteps);
  prof.B.resize(nSteps + 1);
  const double h = zTildeMax / static_cast<double>(nSteps);
  kernels::rk4_linear(std::span(&kappa, 1), std::span(&source, 1), std::span(&h, 1), nSteps,
                      prof.B);
  return prof;
}

BrightnessProfile integrate_brightness(const SystemParams& params, double d,
                                       std::optional<double> zTildeMax, std::size_t nSteps) {
  const DerivedRates rates = derive_rates(params);
  const LossAndSource ls = loss_and_source(params, rates, d);
  return integrate_linear(ls.kappa, ls.source, zTildeMax.value_or(default_depth(ls.kappa)),
                          nSteps);
}

std::vector<BrightnessProfile> integrate_brightness_batch(const SystemParams& params,
                                                          const std::vector<double>& deltas,
                                                          std::optional<double> zTildeMax,
                                                          std::size_t nSteps,
                                                          unsigned threads) {
  if (zTildeMax && !(*zTildeMax > 0)) throw InvalidParameter("zTildeMax must be > 0");
  if (nSteps < 10) throw InvalidParameter("nSteps must be >= 10");
  const DerivedRates rates = derive_rates(params);
  const std::size_t lanes = deltas.size();
  std::vector<double> kappa(lanes), source(lanes), h(lanes);
  parallel_for(lanes, threads, [&](std::size_t i) {
    const LossAndSource ls = loss_and_source(params, rates, deltas[i]);
    kappa[i] = ls.kappa;
    source[i] = ls.source;
    h[i] = zTildeMax.value_or(default_depth(ls.kappa)) / static_cast<double>(nSteps);
  });

  std::vector<double> table((nSteps + 1) * lanes);
  kernels::rk4_linear(kappa, source, h, nSteps, table);

  std::vector<BrightnessProfile> out(lanes);
  for (std::size_t i = 0; i < lanes; ++i) {
    fill_profile(out[i], kappa[i], source[i], zTildeMax.value_or(default_depth(kappa[i])),
                 nSteps);
    out[i].B.resize(nSteps + 1);
    for (std::size_t k = 0; k <= nSteps; ++k) out[i].B[k] = table[k * lanes + i];
  }
  return out;
}

std::string to_string(RowFlag flag) {
  switch (flag) {
    case RowFlag::Ok:
      return "ok";
    case RowFlag::AboveThreshold:
      return "above_threshold";
    case RowFlag::Error:
      return "error";
  }
  return "error";
}

std::vector<SpectrumRow> spectrum(const SystemParams& params, const DerivedRates& rates,
                                  const std::vector<double>& grid, unsigned threads) {
  if (grid.empty()) throw InvalidParameter("spectrum: empty detuning grid");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw InvalidParameter("spectrum: detuning grid must be strictly increasing");

  std::vector<SpectrumRow> rows(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    SpectrumRow& row = rows[i];
    row.deltaOmega31 = grid[i];
    row.deltaOverGamma31 = grid[i] / rates.gamma31bar;
    try {
      const ZerothOrderSolution z = rho0(params, rates, grid[i]);
      const FirstOrderSolution f = rho1(params, rates, grid[i], z);
      const CrossSections cs = sigma_E(params, rates, grid[i]);
      row.imRho13_0 = z.rho13.imag();
      row.rho33_1 = f.rho33_1;
      row.sigmaA = cs.sigmaA;
      row.sigmaE = cs.sigmaE;
      row.sigmaEIT = cs.sigmaEIT;
      row.sigmaSGC = cs.sigmaSGC;
      if (!(rates.n13 > 0)) {
        row.flag = RowFlag::Error;
        row.message = "n13 = 0: brightness normalization undefined";
        return;
      }
      row.bBlackOverN13 = black_body_limit(lambda_ratio(z), cs.sigmaA, cs.sigmaE) / rates.n13;
    } catch (const AboveThreshold& e) {
      row.flag = RowFlag::AboveThreshold;
      row.message = e.what();
      row.bBlackOverN13 = 0.0;
    } catch (const ConsistencyFailure&) {
      throw;
    } catch (const Error& e) {
      row.flag = RowFlag::Error;
      row.message = e.what();
    }
  });
  return rows;
}

std::vector<SpectrumRow> spectrum(const SystemParams& params, const std::vector<double>& grid,
                                  unsigned threads) {
  return spectrum(params, derive_rates(params), grid, threads);
}

}  // namespace eitqhe
