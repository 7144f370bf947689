#include <cmath>
#include <random>

#include "doctest.h"
#include "eitqhe/brightness.hpp"
#include "eitqhe/crosssections.hpp"
#include "eitqhe/error.hpp"
#include "eitqhe/perturbative.hpp"
#include "eitqhe/verify.hpp"
#include "helpers.hpp"

using namespace eitqhe;
using eitqhe::test::gamma31_unit;
using eitqhe::test::paper;
using eitqhe::test::rel;

namespace {

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  return out;
}

}  // namespace

TEST_SUITE("brightness") {
  TEST_CASE("black-body limit") {
    CHECK(black_body_limit(0.0, 1.0, 2.0) == 0.0);
    CHECK(black_body_limit(0.1, 1.0, 0.0) == 0.0);
    CHECK(black_body_limit(0.1, 1.0, 2.0) == doctest::Approx(0.2 / 0.8));
    CHECK_THROWS_AS(black_body_limit(0.5, 1.0, 2.0), AboveThreshold);
    CHECK_THROWS_AS(black_body_limit(0.5, 1.0, 3.0), AboveThreshold);
  }

  TEST_CASE("black-body limit is invariant under common rescaling") {
    for (double k : {1e-3, 0.5, 7.0, 1e4})
      CHECK(rel(black_body_limit(0.01, 2.0 * k, 3.0 * k), black_body_limit(0.01, 2.0, 3.0)) <
            1e-15);
    // Spectrum argmax and value survive rescaling too.
    const std::vector<double> sa{1.0, 0.5, 0.3, 0.6}, se{2.0, 3.0, 4.0, 1.0};
    auto argmax = [&](double k) {
      int best = 0;
      double v = -1;
      for (int i = 0; i < 4; ++i) {
        const double b = black_body_limit(0.05, k * sa[i], k * se[i]);
        if (b > v) v = b, best = i;
      }
      return best;
    };
    CHECK(argmax(1.0) == argmax(123.0));
  }

  TEST_CASE("no source: no brightness") {
    const BrightnessProfile prof = integrate_linear(2.0, 0.0, 10.0, 100);
    for (double b : prof.B) CHECK(b == 0.0);
  }

  TEST_CASE("profile shape and boundary condition") {
    const BrightnessProfile prof = integrate_brightness(paper(), 0.0);
    REQUIRE(prof.B.size() == kDefaultBrightnessSteps + 1);
    CHECK(prof.B.front() == 0.0);
    CHECK(prof.zTilde.front() == 0.0);
    CHECK(prof.zTilde.back() == doctest::Approx(20.0 / prof.kappa).epsilon(1e-15));
    CHECK_FALSE(prof.aboveThreshold);
    for (std::size_t k = 1; k < prof.B.size(); ++k) {
      CHECK(prof.B[k] >= prof.B[k - 1]);
      CHECK(prof.B[k] < prof.bBlack);
    }
  }

  TEST_CASE("profile matches the exponential solution") {
    for (double p : {0.0, 0.3, 0.7}) {
      for (double d : {0.0, 0.05, 0.3, 1.0}) {
        const BrightnessProfile prof = integrate_brightness(paper(p), d * gamma31_unit());
        if (prof.aboveThreshold) continue;
        double worst = 0.0;
        for (std::size_t k = 1; k < prof.B.size(); ++k)
          worst = std::max(worst, rel(prof.B[k], prof.analytic(prof.zTilde[k])));
        CHECK(worst < 1e-8);
      }
    }
  }

  TEST_CASE("fixed point, threshold agreement over random draws") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    int below = 0;
    for (int k = 0; k < 100; ++k) {
      SystemParams s = sample_parameters(paper(), rng);
      s.g = 0.05 * s.OmegaC;
      const DerivedRates r = derive_rates(s);
      const double d = ud(rng) * r.gamma31bar;
      const BrightnessProfile prof = integrate_brightness(s, d);
      const ZerothOrderSolution z = rho0(s, r, d);
      const CrossSections cs = sigma_E(s, r, d);
      bool thrown = false;
      double limit = 0.0;
      try {
        limit = black_body_limit(lambda_ratio(z), cs.sigmaA, cs.sigmaE);
      } catch (const AboveThreshold&) {
        thrown = true;
      }
      CHECK(thrown == prof.aboveThreshold);
      if (thrown) continue;
      ++below;
      CHECK(rel(prof.B.back(), limit) < 1e-6);
    }
    CHECK(below > 50);
  }

  TEST_CASE("above threshold: integration proceeds and is flagged") {
    const BrightnessProfile prof = integrate_linear(-0.5, 1.0, 4.0, 400);
    CHECK(prof.aboveThreshold);
    CHECK(std::isnan(prof.bBlack));
    CHECK(prof.B.back() > prof.B[200]);
    CHECK(rel(prof.B.back(), prof.analytic(4.0)) < 1e-8);
  }

  TEST_CASE("batch profiles equal single profiles") {
    const SystemParams s = paper();
    const double unit = gamma31_unit();
    const std::vector<double> ds{-0.4 * unit, -0.1 * unit, 0.0, 0.02 * unit, 0.3 * unit};
    const auto batch = integrate_brightness_batch(s, ds, std::nullopt, 500, 2);
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const auto single = integrate_brightness(s, ds[i], std::nullopt, 500);
      CHECK(rel(batch[i].kappa, single.kappa) == 0.0);
      for (std::size_t k = 0; k < single.B.size(); ++k)
        CHECK(std::abs(batch[i].B[k] - single.B[k]) <= 1e-12 * std::abs(single.bBlack));
    }
  }

  TEST_CASE("integration arguments are validated") {
    CHECK_THROWS_AS(integrate_linear(1.0, 1.0, 0.0, 100), InvalidParameter);
    CHECK_THROWS_AS(integrate_linear(1.0, 1.0, 1.0, 5), InvalidParameter);
  }

  TEST_CASE("spectrum rejects bad grids") {
    CHECK_THROWS_AS(spectrum(paper(), std::vector<double>{}), InvalidParameter);
    CHECK_THROWS_AS(spectrum(paper(), std::vector<double>{0.0, 0.0}), InvalidParameter);
    CHECK_THROWS_AS(spectrum(paper(), std::vector<double>{1.0, 0.0}), InvalidParameter);
  }

  TEST_CASE("spectrum peaks sharply at zero detuning") {
    const double unit = gamma31_unit();
    const auto rows = spectrum(paper(), grid(-3 * unit, 3 * unit, 601), 2);
    std::size_t best = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(rows[i].flag == RowFlag::Ok);
      if (rows[i].bBlackOverN13 > rows[best].bBlackOverN13) best = i;
    }
    CHECK(std::abs(rows[best].deltaOverGamma31) <= 0.01);
    // Narrow: down to half within 0.5 gamma31.
    CHECK(rows[300 + 50].bBlackOverN13 < 0.5 * rows[best].bBlackOverN13);
  }

  TEST_CASE("spectrum at p = 0 equals the gamma_s = 0 engine bit for bit") {
    const SystemParams s = paper(0.0);
    const DerivedRates r = derive_rates(s);
    DerivedRates harris = r;
    harris.gammaS = 0.0;
    const auto g = grid(-3 * r.gamma31bar, 3 * r.gamma31bar, 121);
    const auto a = spectrum(s, r, g), b = spectrum(s, harris, g);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].sigmaE == b[i].sigmaE);
      CHECK(a[i].sigmaA == b[i].sigmaA);
      CHECK(a[i].sigmaSGC == 0.0);
      CHECK(a[i].imRho13_0 == b[i].imRho13_0);
      CHECK(a[i].rho33_1 == b[i].rho33_1);
      CHECK(a[i].bBlackOverN13 == b[i].bBlackOverN13);
    }
  }

  TEST_CASE("peak brightness increases with p") {
    double prev = 0.0;
    for (double p : {0.0, 0.1, 0.3, 0.5, 0.7}) {
      const auto row = spectrum(paper(p), std::vector<double>{0.0}).front();
      CHECK(row.bBlackOverN13 > prev);
      prev = row.bBlackOverN13;
    }
  }

  TEST_CASE("spectrum is independent of the thread count") {
    const double unit = gamma31_unit();
    const auto g = grid(-unit, unit, 97);
    const auto a = spectrum(paper(), g, 1), b = spectrum(paper(), g, 4);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].bBlackOverN13 == b[i].bBlackOverN13);
  }

  TEST_CASE("above-threshold rows are flagged, not thrown") {
    // Hot reservoirs and full dipole alignment push gain past absorption.
    SystemParams s = paper(1.0);
    s.T23 = 3e4;
    s.T13 = 2e4;
    const double unit = derive_rates(s).gamma31bar;
    const auto rows = spectrum(s, grid(-0.2 * unit, 0.2 * unit, 41));
    int flagged = 0;
    for (const auto& r : rows)
      if (r.flag == RowFlag::AboveThreshold) {
        ++flagged;
        CHECK(r.bBlackOverN13 == 0.0);
        CHECK_FALSE(r.message.empty());
      }
    CHECK(flagged > 0);
  }
}
