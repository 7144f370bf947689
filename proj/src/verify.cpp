#include "eitqhe/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eitqhe/brightness.hpp"
#include "eitqhe/crosssections.hpp"
#include "eitqhe/error.hpp"
#include "eitqhe/kernels.hpp"
#include "eitqhe/liouvillian.hpp"
#include "eitqhe/parallel.hpp"
#include "eitqhe/perturbative.hpp"

namespace eitqhe {

namespace {

struct Physicality {
  double hermiticity = 0.0;
  double trace = 0.0;
  double minEigenvalue = 1.0;
  std::size_t states = 0;

  void add(const DensityMatrix& rho) {
    hermiticity = std::max(hermiticity, rho.hermiticity_error());
    trace = std::max(trace, std::abs(rho.trace() - 1.0));
    minEigenvalue = std::min(minEigenvalue, rho.min_eigenvalue());
    ++states;
  }
};

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

CheckResult upper_bound(std::string name, std::string module, double value, double tol,
                        std::string detail) {
  return {std::move(name), std::move(module), std::isfinite(value) && value <= tol, value, tol,
          std::move(detail)};
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  return out;
}

double max_element_diff(const Eigen::Matrix3cd& a, const Eigen::Matrix3cd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

Eigen::Matrix3cd random_hermitian(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::Matrix3cd m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = Complex(u(rng), u(rng));
  return 0.5 * (m + m.adjoint());
}

double residual_first_order(const SystemParams& params, double d, Physicality& phys) {
  const DerivedRates rates = derive_rates(params);
  const DensityMatrix numeric = steady_state(build_generator(params, rates, d));
  phys.add(numeric);
  const ZerothOrderSolution z0 = rho0(params, rates, d);
  const FirstOrderSolution z1 = rho1(params, rates, d, z0);
  return std::max(std::abs(numeric(2, 2).real() - z1.rho33_1),
                  std::abs(numeric(0, 2) - z1.rho13_1));
}

double peak_sigma_e(const SystemParams& params, double unit) {
  const DerivedRates rates = derive_rates(params);
  double best = -1e300;
  for (int i = -300; i <= 300; ++i)
    best = std::max(best, sigma_E(params, rates, unit * i / 100.0).sigmaE);
  return best;
}

}  // namespace

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

SystemParams sample_parameters(const SystemParams& base, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SystemParams s = base;
  s.gamma31 = base.gamma31 * (0.5 + 1.5 * u(rng));
  s.gamma32 = base.gamma32 * (0.5 + 1.5 * u(rng));
  s.T13 = base.T13 * (0.8 + 0.4 * u(rng));
  s.T23 = base.T23 * (0.8 + 0.4 * u(rng));
  s.p = 0.7 * u(rng);
  s.g = 0.0;
  s.deltaOmega21 = 0.0;
  const double unit = derive_rates(s).gamma31bar;
  s.OmegaC = unit * (0.1 + 0.9 * u(rng));
  return s;
}

VerifyReport run_verification(const SystemParams& base, unsigned threads) {
  VerifyReport report;
  auto& checks = report.checks;
  std::mt19937_64 rng(kVerifySeed);
  Physicality phys;
  const DerivedRates baseRates = derive_rates(base);
  const double unit = baseRates.gamma31bar;

  // Generator structure on random Hermitian inputs.
  {
    double trace = 0.0, herm = 0.0;
    const Generator gen = build_generator(base, baseRates, 0.3 * unit);
    for (int k = 0; k < 100; ++k) {
      const Eigen::Matrix3cd out = gen.apply(random_hermitian(rng));
      trace = std::max(trace, std::abs(out.trace()) / gen.norm());
      herm = std::max(herm, (out - out.adjoint()).cwiseAbs().maxCoeff() / gen.norm());
    }
    checks.push_back(upper_bound("generator_trace_preservation", "liouvillian", trace, 1e-12,
                                 "max |tr G(rho)| / ||G|| over 100 random Hermitian rho"));
    checks.push_back(upper_bound("generator_hermiticity_preservation", "liouvillian", herm, 1e-12,
                                 "max |G(rho) - G(rho)^+| / ||G|| over 100 random Hermitian rho"));
  }

  // Zeroth order against the full steady state.
  {
    constexpr std::size_t kDraws = 200;
    std::vector<SystemParams> draws(kDraws);
    std::vector<double> deltas(kDraws);
    std::uniform_real_distribution<double> ud(-3.0, 3.0);
    for (std::size_t i = 0; i < kDraws; ++i) {
      draws[i] = sample_parameters(base, rng);
      deltas[i] = ud(rng) * derive_rates(draws[i]).gamma31bar;
    }
    std::vector<double> diff(kDraws);
    std::vector<int> rank(kDraws);
    std::vector<DensityMatrix> states(kDraws);
    parallel_for(kDraws, threads, [&](std::size_t i) {
      const DerivedRates r = derive_rates(draws[i]);
      const Generator gen = build_generator(draws[i], r, deltas[i]);
      rank[i] = constrained_rank(gen);
      states[i] = steady_state(gen);
      diff[i] = max_element_diff(states[i].matrix(),
                                 rho0(draws[i], r, deltas[i]).to_density_matrix().matrix());
    });
    for (const auto& s : states) phys.add(s);
    checks.push_back(upper_bound("oracle_equivalence_zeroth_order", "perturbative",
                                 *std::max_element(diff.begin(), diff.end()), 1e-8,
                                 "max elementwise |rho0 - steady_state| over 200 draws, g = 0"));
    const int minRank = *std::min_element(rank.begin(), rank.end());
    checks.push_back({"steady_state_uniqueness", "liouvillian", minRank == 18,
                      static_cast<double>(minRank), 18.0,
                      "min constrained rank over 200 draws (18 = one-dimensional null space)"});
  }

  // Without SGC and probe the lower coherences have no source.
  {
    SystemParams s = base;
    s.p = 0.0;
    s.g = 0.0;
    const DensityMatrix rho = steady_state(build_generator(s, derive_rates(s), 0.2 * unit));
    phys.add(rho);
    checks.push_back(upper_bound("sgc_off_reduction", "liouvillian",
                                 std::max(std::abs(rho(0, 1)), std::abs(rho(0, 2))), 1e-12,
                                 "max(|rho12|, |rho13|) at gamma_s = 0, g = 0"));
  }

  // Time propagation converges to the steady state (hot reservoirs keep it short).
  {
    SystemParams hot = base;
    hot.T13 = 4e4;
    hot.T23 = 4e4;
    hot.p = 0.7;
    const DerivedRates r = derive_rates(hot);
    const Generator gen = build_generator(hot, r, 0.1 * r.gamma31bar);
    const double slow = std::min({hot.gamma31, r.R13, r.R23});
    const double fast = r.gamma32bar + r.gamma31bar;
    const DensityMatrix ss = steady_state(gen);
    const DensityMatrix end = propagate(gen, DensityMatrix::ground(), 60.0 / slow, 0.05 / fast);
    phys.add(ss);
    phys.add(end);
    checks.push_back(upper_bound("propagation_to_steady_state", "liouvillian",
                                 max_element_diff(ss.matrix(), end.matrix()), 1e-6,
                                 "max |propagate(ground, t >> 1/rates) - steady_state|"));

    const double tEnd = 40.0 / fast, dt = 0.4 / fast;
    const auto ref = propagate(gen, DensityMatrix::ground(), tEnd, dt / 64).matrix();
    const double e1 = max_element_diff(propagate(gen, DensityMatrix::ground(), tEnd, dt).matrix(), ref);
    const double e2 =
        max_element_diff(propagate(gen, DensityMatrix::ground(), tEnd, dt / 2).matrix(), ref);
    const double ratio = e1 / e2;
    checks.push_back({"rk4_convergence_order", "liouvillian", std::abs(ratio / 16.0 - 1.0) <= 0.3,
                      ratio, 16.0, "error ratio under dt halving, expected 16 +- 30 %"});
  }

  // First order in g: residual shrinks as g^2.
  for (double p : {0.0, 0.7}) {
    SystemParams s = base;
    s.p = p;
    const double r1 = residual_first_order(s, 0.0, phys);
    s.g = base.g / 2;
    const double r2 = residual_first_order(s, 0.0, phys);
    const double ratio = r1 / r2;
    checks.push_back({"first_order_convergence_p" + fmt(p), "perturbative",
                      std::abs(ratio / 4.0 - 1.0) <= 0.2, ratio, 4.0,
                      "residual ratio under g halving, expected 4 +- 20 % (residual at g = " +
                          fmt(base.g) + ": " + fmt(r1) + ")"});
  }

  // Gain deepens with p.
  {
    std::vector<double> im;
    for (double p : {0.1, 0.3, 0.5, 0.7}) {
      SystemParams s = base;
      s.p = p;
      im.push_back(rho0(s, derive_rates(s), 0.0).rho13.imag());
    }
    bool ok = im[0] < 0;
    for (std::size_t i = 1; i < im.size(); ++i) ok = ok && im[i] < im[i - 1];
    checks.push_back({"gain_monotonicity", "perturbative", ok, im.back(), 0.0,
                      "Im rho13(0) strictly decreasing over p = 0.1, 0.3, 0.5, 0.7; value at p = 0.7"});
  }

  // Absorption does not see SGC.
  {
    double dev = 0.0;
    for (int i = -30; i <= 30; ++i) {
      const double d = unit * i / 10.0;
      SystemParams s = base;
      s.p = 0.0;
      const double ref = sigma_A(s, derive_rates(s), d);
      for (int k = 1; k <= 7; ++k) {
        s.p = 0.1 * k;
        dev = std::max(dev, std::abs(sigma_A(s, derive_rates(s), d) - ref) / std::abs(ref));
      }
    }
    checks.push_back(upper_bound("sigmaA_p_invariance", "crosssections", dev, 1e-8,
                                 "max relative deviation of sigma_A over p in {0, ..., 0.7}"));
  }

  // gamma_s = 0 reduction, bit for bit.
  {
    SystemParams s = base;
    s.p = 0.0;
    const DerivedRates r = derive_rates(s);
    DerivedRates harris = r;
    harris.gammaS = 0.0;
    const std::vector<double> grid = linspace(-3.0 * unit, 3.0 * unit, 121);
    const auto a = spectrum(s, r, grid, threads);
    const auto b = spectrum(s, harris, grid, threads);
    bool same = true;
    double sgc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      sgc = std::max(sgc, std::abs(a[i].sigmaSGC));
      same = same && a[i].sigmaE == b[i].sigmaE && a[i].sigmaA == b[i].sigmaA &&
             a[i].imRho13_0 == b[i].imRho13_0 && a[i].rho33_1 == b[i].rho33_1 &&
             a[i].bBlackOverN13 == b[i].bBlackOverN13 && a[i].flag == b[i].flag;
    }
    checks.push_back({"gamma_s_zero_reduction", "crosssections", same && sgc == 0.0, sgc, 0.0,
                      "sigma_SGC at p = 0 and bitwise equality with gamma_s = 0 rows"});
  }

  // Closed-form sigma_SGC against direct extraction.
  {
    double worst = 0.0;
    for (double p : {0.1, 0.3, 0.5, 0.7}) {
      SystemParams s = base;
      s.p = p;
      const DerivedRates r = derive_rates(s);
      for (int i = -60; i <= 60; ++i) {
        const CrossSections cs = sigma_E(s, r, unit * i / 20.0);
        worst = std::max(worst, std::abs(cs.sigmaE - cs.sigmaEDirect) /
                                    std::max(std::abs(cs.sigmaEDirect), 1e-300));
      }
    }
    checks.push_back(upper_bound("sgc_closed_form_vs_extraction", "crosssections", worst, 0.05,
                                 "max relative gap of sigma_EIT + sigma_SGC vs extraction"));
  }

  // Linear decomposition reproduces the first-order coherence.
  {
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      SystemParams s = sample_parameters(base, rng);
      s.g = 0.05 * s.OmegaC;
      const DerivedRates r = derive_rates(s);
      const double d = (k - 25) * 0.1 * r.gamma31bar;
      const CoefficientTriple c = extract_coefficients(s, r, d);
      const ZerothOrderSolution z0 = rho0(s, r, d);
      const double direct = (s.g * rho1(s, r, d, z0).rho13_1).imag();
      const double sum = c.c11 * z0.rho11 + c.c22 * z0.rho22 + c.c33 * z0.rho33;
      worst = std::max(worst, std::abs(sum - direct) / std::abs(direct));
    }
    checks.push_back(upper_bound("decomposition_closure", "crosssections", worst, 1e-10,
                                 "max relative gap of c11 rho11 + c22 rho22 + c33 rho33 vs Im(g rho13)"));
  }

  // Brightness ODE against its exponential solution and fixed point.
  {
    SystemParams s = base;
    s.p = 0.7;
    double analytic = 0.0, fixedPoint = 0.0;
    bool thresholdAgree = true;
    std::vector<double> deltas;
    for (int i = -20; i <= 20; ++i) deltas.push_back(unit * i / 10.0);
    const auto profiles = integrate_brightness_batch(s, deltas, std::nullopt,
                                                     kDefaultBrightnessSteps, threads);
    const DerivedRates r = derive_rates(s);
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      const auto& prof = profiles[i];
      const ZerothOrderSolution z0 = rho0(s, r, deltas[i]);
      const CrossSections cs = sigma_E(s, r, deltas[i]);
      bool limitThrows = false;
      double limit = 0.0;
      try {
        limit = black_body_limit(lambda_ratio(z0), cs.sigmaA, cs.sigmaE);
      } catch (const AboveThreshold&) {
        limitThrows = true;
      }
      thresholdAgree = thresholdAgree && (limitThrows == prof.aboveThreshold);
      if (prof.aboveThreshold) continue;
      for (std::size_t k = 1; k < prof.B.size(); ++k) {
        const double a = prof.analytic(prof.zTilde[k]);
        analytic = std::max(analytic, std::abs(prof.B[k] - a) / std::abs(a));
      }
      const double end = prof.B.back() / (1.0 - std::exp(-prof.kappa * prof.zTilde.back()));
      fixedPoint = std::max(fixedPoint, std::abs(end - limit) / limit);
      fixedPoint = std::max(fixedPoint, std::abs(prof.bBlack - limit) / limit);
    }
    checks.push_back(upper_bound("brightness_analytic_profile", "brightness", analytic, 1e-8,
                                 "max relative gap of RK4 profile vs bBlack (1 - exp(-kappa z))"));
    checks.push_back(upper_bound("brightness_fixed_point", "brightness", fixedPoint, 1e-6,
                                 "max relative gap of the saturated profile vs the black-body limit"));
    checks.push_back({"brightness_threshold_agreement", "brightness", thresholdAgree,
                      thresholdAgree ? 0.0 : 1.0, 0.0,
                      "black_body_limit and integrate_brightness agree on above-threshold rows"});
  }

  // SIMD kernels against the scalar reference.
  {
    double worst = 0.0;
    if (kernels::avx2_available()) {
      std::uniform_real_distribution<double> u(0.1, 2.0);
      std::vector<double> kappa(13), source(13), h(13);
      for (std::size_t i = 0; i < kappa.size(); ++i) {
        kappa[i] = u(rng);
        source[i] = u(rng);
        h[i] = 0.01 * u(rng);
      }
      const std::size_t steps = 500;
      std::vector<double> a((steps + 1) * 13), b((steps + 1) * 13);
      kernels::scalar::rk4_linear(kappa.data(), source.data(), h.data(), 13, steps, a.data());
      kernels::avx2::rk4_linear(kappa.data(), source.data(), h.data(), 13, steps, b.data());
      for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(std::abs(a[i]), 1e-300));

      const Generator gen = build_generator(base, baseRates, 0.0);
      const RealVector18 x = to_coordinates(random_hermitian(rng));
      RealVector18 ya, yb;
      kernels::scalar::matvec(gen.matrix.data(), x.data(), ya.data(), 18);
      kernels::avx2::matvec(gen.matrix.data(), x.data(), yb.data(), 18);
      worst = std::max(worst, (ya - yb).cwiseAbs().maxCoeff() / gen.norm());
    }
    checks.push_back(upper_bound("kernel_equivalence", "kernels", worst, 1e-12,
                                 std::string("scalar vs avx2 relative gap (active: ") +
                                     std::string(kernels::to_string(kernels::active_isa())) +
                                     (kernels::avx2_available() ? ")" : ", avx2 unavailable)")));
  }

  checks.push_back(upper_bound("state_hermiticity", "liouvillian", phys.hermiticity, 1e-12,
                               "max Hermiticity error over " + std::to_string(phys.states) +
                                   " steady states"));
  checks.push_back(upper_bound("state_trace", "liouvillian", phys.trace, 1e-10,
                               "max |tr rho - 1| over the same states"));
  checks.push_back({"state_positivity", "liouvillian", phys.minEigenvalue >= -1e-10,
                    phys.minEigenvalue, -1e-10, "min eigenvalue over the same states (>= bound)"});

  // Reported values.
  {
    const ZerothOrderSolution z0 = rho0(base, baseRates, 0.0);
    report.info.push_back({"lambda_ratio", lambda_ratio(z0),
                           "(rho22 + rho33) / rho11 of the zeroth-order state"});
    report.info.push_back({"n23", baseRates.n23, "thermal occupation of the 2-3 transition"});
    report.info.push_back({"n13", baseRates.n13, "thermal occupation of the 1-3 transition"});
    SystemParams s = base;
    s.p = 0.7;
    const DerivedRates r = derive_rates(s);
    const ZerothOrderSolution z7 = rho0(s, r, 0.0);
    report.info.push_back({"rho33_1_p0.7", rho1(s, r, 0.0, z7).rho33_1,
                           "rho33 through first order in g at zero detuning, p = 0.7"});
    for (double p : {0.1, 0.3, 0.5, 0.7}) {
      s.p = p;
      report.info.push_back({"peak_sigmaE_p" + fmt(p), peak_sigma_e(s, unit),
                             "max over |detuning| <= 3 gamma31 of sigma_E / sigma_0"});
    }
  }
  return report;
}

}  // namespace eitqhe
