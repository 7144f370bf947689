#include "eitqhe/runner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include "eitqhe/brightness.hpp"
#include "eitqhe/csv.hpp"
#include "eitqhe/error.hpp"
#include "eitqhe/kernels.hpp"
#include "eitqhe/parallel.hpp"
#include "eitqhe/verify.hpp"
#include "json.hpp"

namespace eitqhe {

namespace {

namespace fs = std::filesystem;

std::string shortest(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void prepare_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw ConfigError({"output directory " + dir.string() + " cannot be created"});
  const fs::path probe = dir / ".eit-qhe-write-probe";
  {
    std::ofstream out(probe);
    if (!out) throw ConfigError({"output directory " + dir.string() + " is not writable"});
  }
  fs::remove(probe, ec);
}

void write_spectrum_fields(CsvWriter& w, const SpectrumRow& r) {
  w.field(r.deltaOverGamma31)
      .field(r.imRho13_0)
      .field(r.rho33_1)
      .field(r.sigmaA)
      .field(r.sigmaE)
      .field(r.sigmaEIT)
      .field(r.sigmaSGC)
      .field(r.bBlackOverN13)
      .field(to_string(r.flag));
}

struct Peak {
  double delta = 0.0;  // gamma31 units
  double value = -std::numeric_limits<double>::infinity();
  bool found = false;
};

Peak peak_brightness(const std::vector<SpectrumRow>& rows) {
  Peak pk;
  for (const auto& r : rows)
    if (r.flag == RowFlag::Ok && r.bBlackOverN13 > pk.value) {
      pk = {r.deltaOverGamma31, r.bBlackOverN13, true};
    }
  return pk;
}

Peak peak_emission(const std::vector<SpectrumRow>& rows) {
  Peak pk;
  for (const auto& r : rows)
    if (r.flag != RowFlag::Error && r.sigmaE > pk.value) pk = {r.deltaOverGamma31, r.sigmaE, true};
  return pk;
}

std::size_t count_flag(const std::vector<SpectrumRow>& rows, RowFlag flag) {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [&](const auto& r) { return r.flag == flag; }));
}

std::vector<std::string> with_prefix(std::vector<std::string> prefix,
                                     const std::vector<std::string>& rest) {
  prefix.insert(prefix.end(), rest.begin(), rest.end());
  return prefix;
}

double omega_c_of(const RunConfig& cfg) { return cfg.params.OmegaC; }

RunOutcome run_spectrum(const RunConfig& cfg, const fs::path& dir, unsigned threads,
                        std::ostream& log) {
  RunOutcome out;
  const double unit = cfg.gamma31Unit();
  const auto grid = cfg.detuning.values(unit);
  for (double p : cfg.pValues) {
    const auto rows = spectrum(cfg.at(p, omega_c_of(cfg)), grid, threads);
    const fs::path path = dir / spectrum_file_name(p);
    CsvWriter w(path, spectrum_columns());
    for (const auto& r : rows) {
      write_spectrum_fields(w, r);
      w.end_row();
    }
    out.written.push_back(path);
    log << "spectrum p=" << shortest(p) << ": " << rows.size() << " rows, "
        << count_flag(rows, RowFlag::AboveThreshold) << " above threshold -> " << path.string()
        << "\n";
  }
  return out;
}

RunOutcome run_sweep_p(const RunConfig& cfg, const fs::path& dir, unsigned threads,
                       std::ostream& log) {
  RunOutcome out;
  const double unit = cfg.gamma31Unit();
  const auto grid = cfg.detuning.values(unit);
  const fs::path longPath = dir / "sweep_p.csv";
  const fs::path peakPath = dir / "sweep_p_peaks.csv";
  CsvWriter all(longPath, with_prefix({"p"}, spectrum_columns()));
  CsvWriter peaks(peakPath, {"p", "im_rho13_0_at_zero", "peak_sigmaE_delta_over_gamma31",
                             "peak_sigmaE_over_sigma0", "peak_bblack_delta_over_gamma31",
                             "peak_bblack_over_n13", "above_threshold_rows"});
  for (double p : cfg.pValues) {
    const SystemParams params = cfg.at(p, omega_c_of(cfg));
    const auto rows = spectrum(params, grid, threads);
    for (const auto& r : rows) {
      all.field(p);
      write_spectrum_fields(all, r);
      all.end_row();
    }
    const auto atZero = spectrum(params, {0.0}, 1).front();
    const Peak e = peak_emission(rows);
    const Peak b = peak_brightness(rows);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    peaks.field(p)
        .field(atZero.imRho13_0)
        .field(e.found ? e.delta : nan)
        .field(e.found ? e.value : nan)
        .field(b.found ? b.delta : nan)
        .field(b.found ? b.value : nan)
        .field(static_cast<long long>(count_flag(rows, RowFlag::AboveThreshold)));
    peaks.end_row();
    log << "sweep-p p=" << shortest(p) << ": peak sigmaE " << format_double(e.value)
        << ", peak B/n13 " << format_double(b.value) << "\n";
  }
  out.written = {longPath, peakPath};
  return out;
}

RunOutcome run_sweep_2d(const RunConfig& cfg, const fs::path& dir, unsigned threads,
                        std::ostream& log) {
  RunOutcome out;
  const double unit = cfg.gamma31Unit();
  const auto grid = cfg.detuning.values(unit);
  struct Cell {
    double p, omegaC;
    Peak brightness, emission;
    std::size_t above = 0, errors = 0;
  };
  std::vector<Cell> cells;
  for (double p : cfg.pValues)
    for (double oc : cfg.omegaCValues) cells.push_back({p, oc, {}, {}, 0, 0});

  parallel_for(cells.size(), threads, [&](std::size_t i) {
    Cell& c = cells[i];
    const auto rows = spectrum(cfg.at(c.p, c.omegaC * unit), grid, 1);
    c.brightness = peak_brightness(rows);
    c.emission = peak_emission(rows);
    c.above = count_flag(rows, RowFlag::AboveThreshold);
    c.errors = count_flag(rows, RowFlag::Error);
  });

  const fs::path path = dir / "sweep_2d.csv";
  CsvWriter w(path, {"p", "omegaC_over_gamma31", "peak_delta_over_gamma31",
                     "peak_bblack_over_n13", "peak_sigmaE_over_sigma0", "above_threshold_rows",
                     "error_rows"});
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const Cell* best = nullptr;
  for (const auto& c : cells) {
    w.field(c.p)
        .field(c.omegaC)
        .field(c.brightness.found ? c.brightness.delta : nan)
        .field(c.brightness.found ? c.brightness.value : nan)
        .field(c.emission.found ? c.emission.value : nan)
        .field(static_cast<long long>(c.above))
        .field(static_cast<long long>(c.errors));
    w.end_row();
    if (c.brightness.found && (!best || c.brightness.value > best->brightness.value)) best = &c;
  }
  out.written.push_back(path);
  log << "sweep-2d: " << cells.size() << " cells -> " << path.string() << "\n";
  if (best)
    log << "sweep-2d: max peak B/n13 " << format_double(best->brightness.value) << " at p="
        << shortest(best->p) << ", OmegaC/gamma31=" << shortest(best->omegaC) << "\n";
  return out;
}

RunOutcome run_brightness_profile(const RunConfig& cfg, const fs::path& dir, unsigned threads,
                                  std::ostream& log) {
  RunOutcome out;
  const double unit = cfg.gamma31Unit();
  std::vector<double> deltas;
  for (double d : cfg.brightness.detunings) deltas.push_back(d * unit);
  const fs::path path = dir / "brightness_profile.csv";
  CsvWriter w(path, {"p", "delta_over_gamma31", "z_tilde", "b_over_n13", "b_analytic_over_n13",
                     "bblack_over_n13", "flag"});
  for (double p : cfg.pValues) {
    const SystemParams params = cfg.at(p, omega_c_of(cfg));
    const double n13 = derive_rates(params).n13;
    const auto profiles = integrate_brightness_batch(params, deltas, cfg.brightness.zTildeMax,
                                                     cfg.brightness.nSteps, threads);
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      const auto& prof = profiles[i];
      const std::string flag = prof.aboveThreshold ? "above_threshold" : "ok";
      for (std::size_t k = 0; k < prof.B.size(); ++k) {
        w.field(p)
            .field(cfg.brightness.detunings[i])
            .field(prof.zTilde[k])
            .field(prof.B[k] / n13)
            .field(prof.analytic(prof.zTilde[k]) / n13)
            .field(prof.bBlack / n13)
            .field(flag);
        w.end_row();
      }
    }
    log << "brightness-profile p=" << shortest(p) << ": " << profiles.size() << " profiles ("
        << kernels::to_string(kernels::active_isa()) << ")\n";
  }
  out.written.push_back(path);
  return out;
}

RunOutcome run_verify(const RunConfig& cfg, const fs::path& dir, unsigned threads,
                      std::ostream& log) {
  using nlohmann::ordered_json;
  const VerifyReport report = run_verification(cfg.params, threads);
  ordered_json doc;
  doc["passed"] = report.all_passed();
  doc["isa"] = std::string(kernels::to_string(kernels::active_isa()));
  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"module", c.module},
                      {"passed", c.passed},
                      {"value", c.value},
                      {"tolerance", c.tolerance},
                      {"detail", c.detail}});
    log << (c.passed ? "PASS " : "FAIL ") << c.name << " value=" << format_double(c.value)
        << " tol=" << format_double(c.tolerance) << "\n";
  }
  doc["checks"] = checks;
  ordered_json info = ordered_json::array();
  for (const auto& e : report.info) {
    info.push_back({{"name", e.name}, {"value", e.value}, {"detail", e.detail}});
    log << "INFO " << e.name << " = " << format_double(e.value) << "\n";
  }
  doc["info"] = info;

  const fs::path path = dir / "verify_report.json";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << doc.dump(2) << "\n";
  RunOutcome res;
  res.written.push_back(path);
  res.exitCode = report.all_passed() ? kExitOk : kExitConsistencyFailure;
  return res;
}

}  // namespace

std::optional<Mode> parse_mode(std::string_view name) {
  if (name == "spectrum") return Mode::Spectrum;
  if (name == "sweep-p") return Mode::SweepP;
  if (name == "sweep-2d") return Mode::Sweep2d;
  if (name == "verify") return Mode::Verify;
  if (name == "brightness-profile") return Mode::BrightnessProfile;
  return std::nullopt;
}

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Spectrum:
      return "spectrum";
    case Mode::SweepP:
      return "sweep-p";
    case Mode::Sweep2d:
      return "sweep-2d";
    case Mode::Verify:
      return "verify";
    case Mode::BrightnessProfile:
      return "brightness-profile";
  }
  return "spectrum";
}

const std::vector<std::string>& spectrum_columns() {
  static const std::vector<std::string> cols{
      "delta_over_gamma31", "im_rho13_0", "rho33_1",  "sigmaA_over_sigma0", "sigmaE_over_sigma0",
      "sigmaEIT",           "sigmaSGC",   "bblack_over_n13", "flag"};
  return cols;
}

std::string spectrum_file_name(double p) { return "spectrum_p" + shortest(p) + ".csv"; }

RunOutcome run(Mode mode, const RunConfig& config, const fs::path& outDir, unsigned threads,
               std::ostream& log) {
  prepare_directory(outDir);
  threads = std::max(1u, threads);
  switch (mode) {
    case Mode::Spectrum:
      return run_spectrum(config, outDir, threads, log);
    case Mode::SweepP:
      return run_sweep_p(config, outDir, threads, log);
    case Mode::Sweep2d:
      return run_sweep_2d(config, outDir, threads, log);
    case Mode::Verify:
      return run_verify(config, outDir, threads, log);
    case Mode::BrightnessProfile:
      return run_brightness_profile(config, outDir, threads, log);
  }
  return {};
}

}  // namespace eitqhe
