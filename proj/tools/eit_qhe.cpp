// eit-qhe <mode> --config <path> [--out <dir>] [--threads N]
//
// Exit status: 0 success, 1 configuration error, 2 consistency failure.

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "eitqhe/config.hpp"
#include "eitqhe/error.hpp"
#include "eitqhe/runner.hpp"

namespace {

unsigned threads_from_env() {
  const char* env = std::getenv("EIT_QHE_THREADS");
  if (env && *env) {
    try {
      const long n = std::stol(env);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
    throw eitqhe::ConfigError({"EIT_QHE_THREADS must be a positive integer"});
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gain-assisted EIT quantum heat engine simulator", "eit-qhe"};
  std::string modeName, configPath, outDir;
  unsigned threads = 0;
  app.add_option("mode", modeName, "spectrum | sweep-p | sweep-2d | verify | brightness-profile")
      ->required();
  app.add_option("--config", configPath, "JSON run configuration")->required();
  app.add_option("--out", outDir, "output directory (overrides outputs.directory)");
  app.add_option("--threads", threads, "worker threads (fallback: EIT_QHE_THREADS)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return eitqhe::kExitConfigError;
  }

  const auto mode = eitqhe::parse_mode(modeName);
  if (!mode) {
    std::cerr << "error: unknown mode '" << modeName << "'\n";
    return eitqhe::kExitConfigError;
  }

  try {
    const eitqhe::RunConfig cfg = eitqhe::load_config(configPath);
    if (threads == 0) threads = threads_from_env();
    const auto dir = outDir.empty() ? cfg.outputDir : std::filesystem::path(outDir);
    const auto outcome = eitqhe::run(*mode, cfg, dir, threads, std::cerr);
    for (const auto& p : outcome.written) std::cout << p.string() << "\n";
    return outcome.exitCode;
  } catch (const eitqhe::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return eitqhe::kExitConfigError;
  } catch (const eitqhe::InvalidParameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return eitqhe::kExitConfigError;
  } catch (const eitqhe::ConsistencyFailure& e) {
    std::cerr << "consistency failure: " << e.what() << "\n";
    return eitqhe::kExitConsistencyFailure;
  } catch (const eitqhe::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return eitqhe::kExitConsistencyFailure;
  }
}
