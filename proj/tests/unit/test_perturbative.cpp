#include <cmath>
#include <random>

#include "doctest.h"
#include "eitqhe/error.hpp"
#include "eitqhe/liouvillian.hpp"
#include "eitqhe/perturbative.hpp"
#include "eitqhe/verify.hpp"
#include "helpers.hpp"

using namespace eitqhe;
using eitqhe::test::paper;

namespace {

double max_diff(const Eigen::Matrix3cd& a, const Eigen::Matrix3cd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

double residual(const SystemParams& s, double d) {
  const DerivedRates r = derive_rates(s);
  const DensityMatrix num = steady_state(build_generator(s, r, d));
  const ZerothOrderSolution z0 = rho0(s, r, d);
  const FirstOrderSolution z1 = rho1(s, r, d, z0);
  return std::max(std::abs(num(2, 2).real() - z1.rho33_1), std::abs(num(0, 2) - z1.rho13_1));
}

}  // namespace

TEST_SUITE("perturbative") {
  TEST_CASE("oracle equivalence over random draws") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ud(-3.0, 3.0);
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
      const SystemParams s = sample_parameters(paper(), rng);
      const DerivedRates r = derive_rates(s);
      const double d = ud(rng) * r.gamma31bar;
      const DensityMatrix num = steady_state(build_generator(s, r, d));
      worst = std::max(worst, max_diff(num.matrix(), rho0(s, r, d).to_density_matrix().matrix()));
    }
    CHECK(worst <= 1e-8);
  }

  TEST_CASE("populations sum to one") {
    std::mt19937_64 rng(12);
    for (int k = 0; k < 100; ++k) {
      const SystemParams s = sample_parameters(paper(), rng);
      const ZerothOrderSolution z = rho0(s, derive_rates(s), 0.0);
      CHECK(std::abs(z.rho11 + z.rho22 + z.rho33 - 1.0) <= 1e-12);
      CHECK(z.rho11 >= 0);
      CHECK(z.rho22 >= 0);
      CHECK(z.rho33 >= 0);
    }
  }

  TEST_CASE("no thermal pumping of 1-3: everything in the ground state") {
    SystemParams s = paper();
    s.T13 = 0.0;
    const ZerothOrderSolution z = rho0(s, derive_rates(s), 0.0);
    CHECK(z.rho11 == 1.0);
    CHECK(z.rho22 == 0.0);
    CHECK(z.rho33 == 0.0);
  }

  TEST_CASE("no SGC: no lower coherences") {
    const SystemParams s = paper(0.0);
    for (double d : {-1e7, 0.0, 2e7}) {
      const ZerothOrderSolution z = rho0(s, derive_rates(s), d);
      CHECK(z.rho12 == Complex(0.0, 0.0));
      CHECK(z.rho13 == Complex(0.0, 0.0));
    }
  }

  TEST_CASE("resonant probe coherence is pure gain") {
    for (double p : {0.1, 0.3, 0.5, 0.7, 1.0}) {
      const ZerothOrderSolution z = rho0(paper(p), derive_rates(paper(p)), 0.0);
      CHECK(z.rho13.real() == 0.0);
      CHECK(z.rho13.imag() < 0.0);
    }
  }

  TEST_CASE("gain deepens with p") {
    double prev = 0.0;
    for (double p : {0.1, 0.3, 0.5, 0.7}) {
      const double im = rho0(paper(p), derive_rates(paper(p)), 0.0).rho13.imag();
      CHECK(im < prev);
      prev = im;
    }
  }

  TEST_CASE("first order reduces to zeroth order as g vanishes") {
    SystemParams s = paper();
    const DerivedRates r = derive_rates(s);
    const ZerothOrderSolution z0 = rho0(s, r, 0.0);
    s.g = 1e-6;
    CHECK(std::abs(rho1(s, r, 0.0, z0).rho33_1 - z0.rho33) <= 1e-12 * z0.rho33);
  }

  TEST_CASE("first-order population correction is linear in g") {
    SystemParams s = paper();
    const DerivedRates r = derive_rates(s);
    const ZerothOrderSolution z0 = rho0(s, r, 0.0);
    auto delta = [&](double g) {
      s.g = g;
      return rho1(s, r, 0.0, z0).rho33_1 - z0.rho33;
    };
    const double a = delta(1e6), b = delta(2e6), c = delta(4e6);
    CHECK(b / a == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(c / a == doctest::Approx(4.0).epsilon(1e-10));
  }

  TEST_CASE("first-order residual against the oracle scales as g^2") {
    for (double p : {0.0, 0.7}) {
      SystemParams s = paper(p);
      const double r1 = residual(s, 0.0);
      s.g /= 2;
      const double r2 = residual(s, 0.0);
      CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.2));
    }
  }

  TEST_CASE("weak-field flag") {
    SystemParams s = paper();
    s.g = s.OmegaC;
    const DerivedRates r = derive_rates(s);
    CHECK(rho1(s, r, 0.0, rho0(s, r, 0.0)).weakFieldViolated);
    s.g = 0.5 * s.OmegaC;
    CHECK_FALSE(rho1(s, r, 0.0, rho0(s, r, 0.0)).weakFieldViolated);
  }

  TEST_CASE("lambda ratio") {
    ZerothOrderSolution z;
    CHECK(lambda_ratio(z) == 0.0);
    z.rho11 = 0.0;
    z.rho22 = 1.0;
    CHECK_THROWS_AS(lambda_ratio(z), InvalidParameter);
  }

  TEST_CASE("closed forms need a resonant control field") {
    SystemParams s = paper();
    s.deltaOmega21 = 1.0;
    CHECK_THROWS_AS(rho0(s, derive_rates(s), 0.0), InvalidParameter);
  }
}
