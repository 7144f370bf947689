#include <algorithm>
#include <string>

#include "doctest.h"
#include "eitqhe/config.hpp"
#include "helpers.hpp"

using namespace eitqhe;

namespace {

const char* kMinimal = R"({
  "params": {"gamma31": 1e7, "gamma32": 6e7, "omega13": 4e15, "omega12": 1e15,
             "T13": 3778, "T23": 5778, "p": 0.7, "OmegaC": 5e7}
})";

std::vector<std::string> errors_of(const std::string& text) {
  try {
    validate_config(text);
  } catch (const ConfigError& e) {
    return e.errors();
  }
  return {};
}

bool any_contains(const std::vector<std::string>& errors, const std::string& needle) {
  return std::any_of(errors.begin(), errors.end(),
                     [&](const std::string& e) { return e.find(needle) != std::string::npos; });
}

std::string with_params(const std::string& params) {
  return R"({"params": {"gamma31": 1e7, "gamma32": 6e7, "omega13": 4e15, "omega12": 1e15,
             "T13": 3778, "T23": 5778, )" +
         params + "}}";
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("minimal config takes defaults") {
    const RunConfig cfg = validate_config(kMinimal);
    CHECK(cfg.params.p == 0.7);
    CHECK(cfg.params.OmegaC == 5e7);
    CHECK(cfg.params.g == doctest::Approx(kDefaultProbeCouplingRatio * 5e7));
    CHECK(cfg.gOverOmegaC.has_value());
    CHECK(cfg.pValues == std::vector<double>{0.7});
    CHECK(cfg.detuning.count == 601);
    CHECK(cfg.outputDir == "out");
  }

  TEST_CASE("shipped paper config parses to the reference parameters") {
    const RunConfig cfg = load_config(EITQHE_SOURCE_DIR "/configs/paper_params.json");
    const SystemParams ref = eitqhe::test::paper();
    CHECK(cfg.params.gamma31 == ref.gamma31);
    CHECK(cfg.params.gamma32 == ref.gamma32);
    CHECK(cfg.params.omega13 == ref.omega13);
    CHECK(cfg.params.omega12 == ref.omega12);
    CHECK(cfg.params.T13 == ref.T13);
    CHECK(cfg.params.T23 == ref.T23);
    CHECK(cfg.params.p == ref.p);
    CHECK(cfg.params.OmegaC == ref.OmegaC);
    CHECK(cfg.params.g == doctest::Approx(ref.g).epsilon(1e-15));
    CHECK(cfg.params.deltaOmega21 == 0.0);
    CHECK(cfg.pValues == std::vector<double>{0.1, 0.3, 0.5, 0.7});
    CHECK(cfg.omegaCValues.size() == 10);
  }

  TEST_CASE("p out of range") {
    CHECK(any_contains(errors_of(with_params(R"("p": 1.3, "OmegaC": 5e7)")), "p out of [0,1]"));
  }

  TEST_CASE("missing OmegaC is named") {
    CHECK(any_contains(errors_of(with_params(R"("p": 0.5)")), "OmegaC"));
  }

  TEST_CASE("all errors are reported at once") {
    const auto errs = errors_of(R"({
      "params": {"gamma31": -1, "gamma32": 6e7, "omega13": 4e15, "omega12": 1e15,
                 "T13": 3778, "T23": "hot", "p": 2, "OmegaC": 5e7, "colour": 3},
      "grids": {"detuning": {"min": 1, "max": 0, "count": 1}, "p": [0.1, 1.5]},
      "extra": true
    })");
    CHECK(any_contains(errs, "/params/gamma31"));
    CHECK(any_contains(errs, "/params/T23: expected a number"));
    CHECK(any_contains(errs, "/params/p: p out of [0,1]"));
    CHECK(any_contains(errs, "/params/colour: unknown key"));
    CHECK(any_contains(errs, "/grids/detuning/count"));
    CHECK(any_contains(errs, "/grids/p/1: p out of [0,1]"));
    CHECK(any_contains(errs, "/extra: unknown key"));
    CHECK(errs.size() >= 7);
  }

  TEST_CASE("parse errors carry line and column") {
    const auto errs = errors_of("{\n  \"params\": {\n    \"p\": 0.7,,\n  }\n}");
    REQUIRE(errs.size() == 1);
    CHECK(any_contains(errs, "line 3"));
    CHECK(any_contains(errs, "column"));
  }

  TEST_CASE("malformed numbers are rejected") {
    CHECK(!errors_of(with_params(R"("p": 0.7, "OmegaC": "5e7")")).empty());
    CHECK(!errors_of(R"({"params": {"p": 1e999}})").empty());
  }

  TEST_CASE("gamma31 units") {
    const RunConfig cfg = validate_config(
        with_params(R"("p": 0.7, "OmegaC": {"value": 0.5, "unit": "gamma31"},
                       "g": {"value": 0.01, "unit": "gamma31"})"));
    const double unit = derive_rates(eitqhe::test::paper()).gamma31bar;
    CHECK(cfg.params.OmegaC == doctest::Approx(0.5 * unit).epsilon(1e-15));
    CHECK(cfg.params.g == doctest::Approx(0.01 * unit).epsilon(1e-15));
    CHECK_FALSE(cfg.gOverOmegaC.has_value());
    REQUIRE(cfg.omegaCValues.size() == 1);
    CHECK(cfg.omegaCValues[0] == doctest::Approx(0.5).epsilon(1e-15));
  }

  TEST_CASE("units are restricted per field") {
    CHECK(any_contains(
        errors_of(with_params(R"("p": 0.7, "OmegaC": {"value": 0.5, "unit": "OmegaC"})")),
        "not allowed"));
    CHECK(any_contains(
        errors_of(with_params(R"("p": 0.7, "OmegaC": {"value": 0.5, "unit": "furlongs"})")),
        "not allowed"));
  }

  TEST_CASE("g tied to Omega_c follows it through sweeps") {
    const RunConfig cfg =
        validate_config(with_params(R"("p": 0.7, "OmegaC": 5e7, "g": {"value": 0.02, "unit": "OmegaC"})"));
    CHECK(cfg.at(0.3, 2e7).g == doctest::Approx(4e5));
    CHECK(cfg.at(0.3, 2e7).p == 0.3);
  }

  TEST_CASE("grid values hit both ends exactly") {
    GridSpec g{-3.0, 3.0, 7};
    const auto v = g.values(2.0);
    CHECK(v.front() == -6.0);
    CHECK(v.back() == 6.0);
    CHECK(v[3] == 0.0);
  }

  TEST_CASE("mode key is checked") {
    CHECK(!errors_of(R"({"mode": "dance", )" + with_params(R"("p": 0.7, "OmegaC": 5e7)").substr(1))
               .empty());
  }

  TEST_CASE("missing file is a config error") {
    CHECK_THROWS_AS(load_config("/nonexistent/eit.json"), ConfigError);
  }
}
