#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "eitqhe/runner.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = EITQHE_CLI_PATH;
const std::string kPaper = EITQHE_SOURCE_DIR "/configs/paper_params.json";
const std::string kGolden = EITQHE_SOURCE_DIR "/tests/golden/";

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("eit-qhe-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "\"" + kCli + "\" " + args +
                          " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line + "\n";
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "config.json";
  std::ofstream(p) << text;
  return p;
}

std::string paper_with(const std::string& gSpec, const std::string& extra = "") {
  return R"({"params": {"gamma31": 1e7, "gamma32": 6e7, "omega13": 4e15, "omega12": 1e15,
             "T13": 3778, "T23": 5778, "p": 0.7, "OmegaC": 5e7, "g": )" +
         gSpec + "}" + extra + "}";
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("spectrum output is byte-identical across runs and thread counts") {
    const fs::path a = scratch("det-a"), b = scratch("det-b");
    REQUIRE(run("spectrum --config \"" + kPaper + "\" --out \"" + a.string() + "\" --threads 1") ==
            0);
    REQUIRE(run("spectrum --config \"" + kPaper + "\" --out \"" + b.string() + "\"",
                "EIT_QHE_THREADS=3") == 0);
    for (const char* p : {"0.1", "0.3", "0.5", "0.7"}) {
      const std::string name = std::string("spectrum_p") + p + ".csv";
      REQUIRE(fs::exists(a / name));
      CHECK(slurp(a / name) == slurp(b / name));
    }
  }

  TEST_CASE("spectrum schema matches the golden header") {
    const fs::path dir = scratch("schema");
    REQUIRE(run("spectrum --config \"" + kPaper + "\" --out \"" + dir.string() + "\"") == 0);
    CHECK(first_line(dir / "spectrum_p0.7.csv") == slurp(kGolden + "spectrum_header.csv"));
    std::string header;
    for (const auto& c : eitqhe::spectrum_columns()) header += (header.empty() ? "" : ",") + c;
    CHECK(header + "\n" == slurp(kGolden + "spectrum_header.csv"));
  }

  TEST_CASE("sweep-2d schema and determinism") {
    const fs::path a = scratch("s2d-a"), b = scratch("s2d-b");
    REQUIRE(run("sweep-2d --config \"" + kPaper + "\" --out \"" + a.string() + "\" --threads 2") ==
            0);
    REQUIRE(run("sweep-2d --config \"" + kPaper + "\" --out \"" + b.string() + "\" --threads 1") ==
            0);
    CHECK(first_line(a / "sweep_2d.csv") == slurp(kGolden + "sweep_2d_header.csv"));
    CHECK(slurp(a / "sweep_2d.csv") == slurp(b / "sweep_2d.csv"));
  }

  TEST_CASE("sweep-p and brightness-profile write their files") {
    const fs::path dir = scratch("other");
    CHECK(run("sweep-p --config \"" + kPaper + "\" --out \"" + dir.string() + "\"") == 0);
    CHECK(fs::exists(dir / "sweep_p.csv"));
    CHECK(fs::exists(dir / "sweep_p_peaks.csv"));
    CHECK(run("brightness-profile --config \"" + kPaper + "\" --out \"" + dir.string() + "\"") == 0);
    CHECK(fs::exists(dir / "brightness_profile.csv"));
  }

  TEST_CASE("verify passes on the paper config and writes a report") {
    const fs::path dir = scratch("verify");
    CHECK(run("verify --config \"" + kPaper + "\" --out \"" + dir.string() + "\"") == 0);
    const auto report = nlohmann::json::parse(slurp(dir / "verify_report.json"));
    CHECK(report["passed"].get<bool>());
    CHECK(report["checks"].size() >= 15);
    bool hasLambda = false;
    for (const auto& e : report["info"]) hasLambda = hasLambda || e["name"] == "lambda_ratio";
    CHECK(hasLambda);
  }

  TEST_CASE("verify exits 2 when a check fails") {
    // A probe as strong as the control field breaks first-order scaling.
    const fs::path dir = scratch("verify-fail");
    const fs::path cfg = write_config(dir, paper_with(R"({"value": 0.9, "unit": "OmegaC"})"));
    CHECK(run("verify --config \"" + cfg.string() + "\" --out \"" + dir.string() + "\"") == 2);
  }

  TEST_CASE("configuration errors exit 1") {
    const fs::path dir = scratch("bad");
    const fs::path cfg = write_config(dir, R"({"params": {"p": 1.3}})");
    CHECK(run("spectrum --config \"" + cfg.string() + "\" --out \"" + dir.string() + "\"") == 1);
    CHECK(run("spectrum --config /nonexistent.json") == 1);
    CHECK(run("dance --config \"" + kPaper + "\"") == 1);
    CHECK(run("spectrum") == 1);
    CHECK(run("spectrum --config \"" + kPaper + "\" --out /proc/eit-qhe-denied") == 1);
    CHECK(run("spectrum --config \"" + kPaper + "\" --out \"" + dir.string() + "\"",
              "EIT_QHE_THREADS=many") == 1);
    CHECK(run("spectrum --config \"" + kPaper + "\" --threads 0") == 1);
  }
}
