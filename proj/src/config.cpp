#include "eitqhe/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace eitqhe {

namespace {

using nlohmann::json;

enum class Unit { RadPerSec, Gamma31, OmegaC };

struct Quantity {
  double value = 0.0;
  Unit unit = Unit::RadPerSec;
};

std::string join_errors(const std::vector<std::string>& errors) {
  std::string out = "invalid configuration:";
  for (const auto& e : errors) out += "\n  " + e;
  return out;
}

class Reader {
 public:
  std::vector<std::string> errors;

  void fail(const std::string& path, const std::string& msg) {
    errors.push_back(path + ": " + msg);
  }

  /// Object at `path`, or nullptr (with an error) when it is not an object.
  const json* object(const json& parent, const std::string& key, const std::string& path,
                     bool required) {
    auto it = parent.find(key);
    if (it == parent.end()) {
      if (required) fail(path, "missing required field '" + key + "'");
      return nullptr;
    }
    if (!it->is_object()) {
      fail(path + "/" + key, "expected an object");
      return nullptr;
    }
    return &*it;
  }

  void reject_unknown(const json& obj, const std::string& path,
                      const std::set<std::string>& known) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
      if (!known.count(it.key())) fail(path + "/" + it.key(), "unknown key");
  }

  std::optional<double> number(const json& v, const std::string& path) {
    if (!v.is_number()) {
      fail(path, "expected a number");
      return std::nullopt;
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
      fail(path, "number is not finite");
      return std::nullopt;
    }
    return x;
  }

  std::optional<std::size_t> count(const json& v, const std::string& path) {
    if (!v.is_number_integer()) {
      fail(path, "expected an integer");
      return std::nullopt;
    }
    const auto n = v.get<long long>();
    if (n < 2) {
      fail(path, "count must be >= 2");
      return std::nullopt;
    }
    return static_cast<std::size_t>(n);
  }

  /// Plain number (rad/s) or {"value": x, "unit": "..."} with the allowed units.
  std::optional<Quantity> quantity(const json& v, const std::string& path,
                                   const std::set<std::string>& units) {
    if (v.is_number()) {
      auto x = number(v, path);
      if (!x) return std::nullopt;
      return Quantity{*x, Unit::RadPerSec};
    }
    if (!v.is_object()) {
      fail(path, "expected a number or {\"value\", \"unit\"}");
      return std::nullopt;
    }
    reject_unknown(v, path, {"value", "unit"});
    if (!v.contains("value") || !v.contains("unit")) {
      fail(path, "unit object needs both 'value' and 'unit'");
      return std::nullopt;
    }
    auto x = number(v["value"], path + "/value");
    if (!v["unit"].is_string()) {
      fail(path + "/unit", "expected a string");
      return std::nullopt;
    }
    const std::string u = v["unit"].get<std::string>();
    if (!units.count(u)) {
      std::string allowed;
      for (const auto& a : units) allowed += (allowed.empty() ? "" : ", ") + a;
      fail(path + "/unit", "unit '" + u + "' not allowed here (allowed: " + allowed + ")");
      return std::nullopt;
    }
    if (!x) return std::nullopt;
    if (u == "gamma31") return Quantity{*x, Unit::Gamma31};
    if (u == "OmegaC") return Quantity{*x, Unit::OmegaC};
    return Quantity{*x, Unit::RadPerSec};
  }

  std::optional<GridSpec> grid(const json& v, const std::string& path) {
    if (!v.is_object()) {
      fail(path, "expected {\"min\", \"max\", \"count\"}");
      return std::nullopt;
    }
    reject_unknown(v, path, {"min", "max", "count"});
    GridSpec g;
    bool ok = true;
    for (const char* key : {"min", "max", "count"})
      if (!v.contains(key)) {
        fail(path, std::string("missing required field '") + key + "'");
        ok = false;
      }
    if (!ok) return std::nullopt;
    auto lo = number(v["min"], path + "/min");
    auto hi = number(v["max"], path + "/max");
    auto n = count(v["count"], path + "/count");
    if (!lo || !hi || !n) return std::nullopt;
    if (!(*hi > *lo)) {
      fail(path, "max must exceed min");
      return std::nullopt;
    }
    g.min = *lo;
    g.max = *hi;
    g.count = *n;
    return g;
  }

  /// Array of numbers, or a grid object expanded to its points.
  std::optional<std::vector<double>> list(const json& v, const std::string& path) {
    if (v.is_object()) {
      auto g = grid(v, path);
      if (!g) return std::nullopt;
      return g->values();
    }
    if (!v.is_array() || v.empty()) {
      fail(path, "expected a non-empty array or a grid object");
      return std::nullopt;
    }
    std::vector<double> out;
    bool ok = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
      auto x = number(v[i], path + "/" + std::to_string(i));
      if (x)
        out.push_back(*x);
      else
        ok = false;
    }
    if (!ok) return std::nullopt;
    return out;
  }
};

std::string parse_error_location(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : Error(join_errors(errors)), errors_(std::move(errors)) {}

std::vector<double> GridSpec::values(double unit) const {
  std::vector<double> out(count);
  const double step = (max - min) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = (min + step * static_cast<double>(i)) * unit;
  out.front() = min * unit;
  out.back() = max * unit;
  return out;
}

double RunConfig::gamma31Unit() const { return derive_rates(params).gamma31bar; }

SystemParams RunConfig::at(double p, double omegaC) const {
  SystemParams out = params;
  out.p = p;
  out.OmegaC = omegaC;
  if (gOverOmegaC) out.g = *gOverOmegaC * omegaC;
  return out;
}

RunConfig validate_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError({"parse error at " + parse_error_location(text, e.byte) + ": " + e.what()});
  } catch (const json::exception& e) {
    throw ConfigError({std::string("malformed JSON: ") + e.what()});
  }

  Reader r;
  RunConfig cfg;
  if (!root.is_object()) throw ConfigError({"/: expected a JSON object"});
  r.reject_unknown(root, "", {"params", "grids", "brightness", "outputs", "mode"});
  if (root.contains("mode")) {
    static const std::set<std::string> modes{"spectrum", "sweep-p", "sweep-2d", "verify",
                                             "brightness-profile"};
    if (!root["mode"].is_string() || !modes.count(root["mode"].get<std::string>()))
      r.fail("/mode", "expected one of spectrum, sweep-p, sweep-2d, verify, brightness-profile");
    else
      cfg.mode = root["mode"].get<std::string>();
  }

  // Physical parameters: absolute quantities first, then the ones that may be
  // expressed in gamma31 units (which need the absolute ones to define the unit).
  std::optional<Quantity> omegaC, g, d21;
  if (const json* params = r.object(root, "params", "", true)) {
    const std::string path = "/params";
    r.reject_unknown(*params, path,
                     {"gamma31", "gamma32", "omega13", "omega12", "T13", "T23", "p", "OmegaC",
                      "g", "deltaOmega21"});
    struct Field {
      const char* key;
      double* target;
    };
    for (Field f : {Field{"gamma31", &cfg.params.gamma31}, Field{"gamma32", &cfg.params.gamma32},
                    Field{"omega13", &cfg.params.omega13}, Field{"omega12", &cfg.params.omega12},
                    Field{"T13", &cfg.params.T13}, Field{"T23", &cfg.params.T23},
                    Field{"p", &cfg.params.p}}) {
      if (!params->contains(f.key)) {
        r.fail(path, std::string("missing required field '") + f.key + "'");
        continue;
      }
      if (auto x = r.number((*params)[f.key], path + "/" + f.key)) *f.target = *x;
    }
    if (!params->contains("OmegaC"))
      r.fail(path, "missing required field 'OmegaC'");
    else
      omegaC = r.quantity((*params)["OmegaC"], path + "/OmegaC", {"rad/s", "gamma31"});
    if (params->contains("g"))
      g = r.quantity((*params)["g"], path + "/g", {"rad/s", "gamma31", "OmegaC"});
    if (params->contains("deltaOmega21"))
      d21 = r.quantity((*params)["deltaOmega21"], path + "/deltaOmega21", {"rad/s", "gamma31"});

    const SystemParams& sp = cfg.params;
    if (!(sp.gamma31 > 0)) r.fail(path + "/gamma31", "gamma31 must be > 0");
    if (!(sp.gamma32 > 0)) r.fail(path + "/gamma32", "gamma32 must be > 0");
    if (!(sp.omega12 > 0)) r.fail(path + "/omega12", "omega12 must be > 0");
    if (!(sp.omega13 > sp.omega12)) r.fail(path + "/omega13", "omega13 must exceed omega12");
    if (!(sp.T13 >= 0)) r.fail(path + "/T13", "T13 must be >= 0");
    if (!(sp.T23 >= 0)) r.fail(path + "/T23", "T23 must be >= 0");
    if (!(sp.p >= 0 && sp.p <= 1)) r.fail(path + "/p", "p out of [0,1]");
  }

  double unit = 0.0;
  if (r.errors.empty()) {
    unit = cfg.gamma31Unit();
    if (omegaC) {
      cfg.params.OmegaC = omegaC->unit == Unit::Gamma31 ? omegaC->value * unit : omegaC->value;
      if (!(cfg.params.OmegaC > 0)) r.fail("/params/OmegaC", "OmegaC must be > 0");
    }
    if (g) {
      switch (g->unit) {
        case Unit::RadPerSec:
          cfg.params.g = g->value;
          break;
        case Unit::Gamma31:
          cfg.params.g = g->value * unit;
          break;
        case Unit::OmegaC:
          cfg.gOverOmegaC = g->value;
          cfg.params.g = g->value * cfg.params.OmegaC;
          break;
      }
      if (!(g->value >= 0)) r.fail("/params/g", "g must be >= 0");
    } else {
      cfg.gOverOmegaC = kDefaultProbeCouplingRatio;
      cfg.params.g = kDefaultProbeCouplingRatio * cfg.params.OmegaC;
    }
    if (d21) cfg.params.deltaOmega21 = d21->unit == Unit::Gamma31 ? d21->value * unit : d21->value;
  }

  cfg.pValues = {cfg.params.p};
  if (unit > 0) cfg.omegaCValues = {cfg.params.OmegaC / unit};

  if (const json* grids = r.object(root, "grids", "", false)) {
    const std::string path = "/grids";
    r.reject_unknown(*grids, path, {"detuning", "p", "OmegaC"});
    if (grids->contains("detuning"))
      if (auto gs = r.grid((*grids)["detuning"], path + "/detuning")) cfg.detuning = *gs;
    if (grids->contains("p")) {
      if (auto ps = r.list((*grids)["p"], path + "/p")) {
        for (std::size_t i = 0; i < ps->size(); ++i)
          if (!((*ps)[i] >= 0 && (*ps)[i] <= 1))
            r.fail(path + "/p/" + std::to_string(i), "p out of [0,1]");
        cfg.pValues = *ps;
      }
    }
    if (grids->contains("OmegaC")) {
      if (auto os = r.list((*grids)["OmegaC"], path + "/OmegaC")) {
        for (std::size_t i = 0; i < os->size(); ++i)
          if (!((*os)[i] > 0)) r.fail(path + "/OmegaC/" + std::to_string(i), "OmegaC must be > 0");
        cfg.omegaCValues = *os;
      }
    }
  }

  if (const json* b = r.object(root, "brightness", "", false)) {
    const std::string path = "/brightness";
    r.reject_unknown(*b, path, {"nSteps", "zTildeMax", "detunings"});
    if (b->contains("nSteps")) {
      const json& v = (*b)["nSteps"];
      if (!v.is_number_integer() || v.get<long long>() < 10)
        r.fail(path + "/nSteps", "nSteps must be an integer >= 10");
      else
        cfg.brightness.nSteps = v.get<std::size_t>();
    }
    if (b->contains("zTildeMax")) {
      auto z = r.number((*b)["zTildeMax"], path + "/zTildeMax");
      if (z && !(*z > 0))
        r.fail(path + "/zTildeMax", "zTildeMax must be > 0");
      else if (z)
        cfg.brightness.zTildeMax = *z;
    }
    if (b->contains("detunings"))
      if (auto ds = r.list((*b)["detunings"], path + "/detunings")) cfg.brightness.detunings = *ds;
  }

  if (const json* o = r.object(root, "outputs", "", false)) {
    const std::string path = "/outputs";
    r.reject_unknown(*o, path, {"directory"});
    if (o->contains("directory")) {
      if (!(*o)["directory"].is_string() || (*o)["directory"].get<std::string>().empty())
        r.fail(path + "/directory", "expected a non-empty string");
      else
        cfg.outputDir = (*o)["directory"].get<std::string>();
    }
  }

  if (r.errors.empty()) {
    try {
      validate(cfg.params);
    } catch (const InvalidParameter& e) {
      r.fail("/params", e.what());
    }
  }
  if (!r.errors.empty()) throw ConfigError(std::move(r.errors));
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({path.string() + ": cannot open config file"});
  std::ostringstream buf;
  buf << in.rdbuf();
  return validate_config(buf.str());
}

}  // namespace eitqhe
