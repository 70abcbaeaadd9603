#include "wg/config.hpp"

#include <set>
#include <string>

#include <json.hpp>

#include "wg/error.hpp"
#include "wg/harness.hpp"

namespace wg {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError(path + ": " + message);
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!keys.count(key)) fail(path + "." + key, "unknown key");
  }
}

double get_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

int get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<int>();
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

std::vector<double> get_numbers(const json& v, const std::string& path, std::size_t count) {
  if (!v.is_array() || v.size() != count) fail(path, "expected an array of " + std::to_string(count) + " numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(get_number(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Eigen::Matrix2d get_kappa(const json& v, const std::string& path) {
  Eigen::Matrix2d k;
  if (v.is_number()) {
    k = v.get<double>() * Eigen::Matrix2d::Identity();
  } else {
    if (!v.is_array() || v.size() != 2) fail(path, "expected a number or a 2x2 matrix");
    for (int r = 0; r < 2; ++r) {
      const auto row = get_numbers(v[r], path + "[" + std::to_string(r) + "]", 2);
      k(r, 0) = row[0];
      k(r, 1) = row[1];
    }
  }
  try {
    validate_kappa(k);
  } catch (const ConfigError& e) {
    fail(path, e.what());
  }
  return k;
}

double get_mu(const json& v, const std::string& path) {
  const double mu = get_number(v, path);
  if (!(mu >= 0.0)) fail(path, "mu must be nonnegative");
  return mu;
}

Rectangle get_rectangle(const json& v, const std::string& path) {
  const auto b = get_numbers(v, path, 4);
  const Rectangle r{b[0], b[1], b[2], b[3]};
  if (!(r.x1 > r.x0 && r.y1 > r.y0)) fail(path, "degenerate rectangle");
  return r;
}

CoefficientSpec parse_coefficients(const json& v, const std::string& path) {
  reject_unknown(v, path, {"kappa", "mu", "regions"});
  CoefficientSpec spec;
  if (v.contains("kappa")) spec.kappa = get_kappa(v["kappa"], path + ".kappa");
  if (v.contains("mu")) spec.mu = get_mu(v["mu"], path + ".mu");
  if (v.contains("regions")) {
    const json& regions = v["regions"];
    if (!regions.is_array()) fail(path + ".regions", "expected an array");
    for (std::size_t i = 0; i < regions.size(); ++i) {
      const std::string rp = path + ".regions[" + std::to_string(i) + "]";
      const json& r = regions[i];
      reject_unknown(r, rp, {"shape", "bounds", "center", "radius", "kappa", "mu"});
      CoefficientRegion region;
      const std::string shape = r.contains("shape") ? get_string(r["shape"], rp + ".shape") : "rectangle";
      if (shape == "rectangle") {
        if (!r.contains("bounds")) fail(rp + ".bounds", "required for a rectangle");
        region.bounds = get_rectangle(r["bounds"], rp + ".bounds");
      } else if (shape == "disk") {
        if (!r.contains("center") || !r.contains("radius")) fail(rp, "disk requires center and radius");
        const auto c = get_numbers(r["center"], rp + ".center", 2);
        region.shape = CoefficientRegion::Shape::disk;
        region.center = Vec2(c[0], c[1]);
        region.radius = get_number(r["radius"], rp + ".radius");
        if (!(region.radius > 0.0)) fail(rp + ".radius", "must be positive");
      } else {
        fail(rp + ".shape", "expected \"rectangle\" or \"disk\"");
      }
      if (r.contains("kappa")) region.kappa = get_kappa(r["kappa"], rp + ".kappa");
      if (r.contains("mu")) region.mu = get_mu(r["mu"], rp + ".mu");
      spec.regions.push_back(region);
    }
  }
  return spec;
}

SolverConfig parse_solver(const json& v, const std::string& path) {
  reject_unknown(v, path, {"method", "tolerance", "max_iterations", "preconditioner"});
  SolverConfig s;
  if (v.contains("method")) {
    const std::string m = get_string(v["method"], path + ".method");
    if (m == "cholesky") {
      s.method = SolverConfig::Method::cholesky;
    } else if (m == "cg") {
      s.method = SolverConfig::Method::conjugate_gradient;
    } else {
      fail(path + ".method", "expected \"cholesky\" or \"cg\"");
    }
  }
  if (v.contains("tolerance")) {
    s.tolerance = get_number(v["tolerance"], path + ".tolerance");
    if (!(s.tolerance > 0.0 && s.tolerance < 1.0)) fail(path + ".tolerance", "must lie in (0, 1)");
  }
  if (v.contains("max_iterations")) {
    s.max_iterations = get_int(v["max_iterations"], path + ".max_iterations");
    if (s.max_iterations < 1) fail(path + ".max_iterations", "must be >= 1");
  }
  if (v.contains("preconditioner")) {
    const std::string p = get_string(v["preconditioner"], path + ".preconditioner");
    if (p == "none") {
      s.preconditioner = SolverConfig::Preconditioner::none;
    } else if (p == "diagonal") {
      s.preconditioner = SolverConfig::Preconditioner::diagonal;
    } else {
      fail(path + ".preconditioner", "expected \"none\" or \"diagonal\"");
    }
  }
  return s;
}

AssemblyOptions parse_assembly(const json& v, const std::string& path) {
  reject_unknown(v, path, {"stabilizer_trace", "stabilizer_scale"});
  AssemblyOptions a;
  if (v.contains("stabilizer_trace")) {
    const std::string t = get_string(v["stabilizer_trace"], path + ".stabilizer_trace");
    if (t == "projected") {
      a.trace = StabilizerTrace::projected;
    } else if (t == "full") {
      a.trace = StabilizerTrace::full;
    } else {
      fail(path + ".stabilizer_trace", "expected \"projected\" or \"full\"");
    }
  }
  if (v.contains("stabilizer_scale")) {
    const std::string s = get_string(v["stabilizer_scale"], path + ".stabilizer_scale");
    if (s == "mesh-size") {
      a.scale = StabilizerScale::mesh_size;
    } else if (s == "diameter") {
      a.scale = StabilizerScale::diameter;
    } else {
      fail(path + ".stabilizer_scale", "expected \"mesh-size\" or \"diameter\"");
    }
  }
  return a;
}

}  // namespace

std::string command_name(RunConfig::Command command) {
  switch (command) {
    case RunConfig::Command::solve:
      return "solve";
    case RunConfig::Command::convergence:
      return "convergence";
    case RunConfig::Command::ft_demo:
      return "ft-demo";
    case RunConfig::Command::mesh_dump:
      return "mesh-dump";
  }
  return "?";
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  reject_unknown(doc, "$",
                 {"command", "case", "scenario", "source", "n", "levels", "solver", "assembly", "coefficients",
                  "domain", "samples", "out"});

  RunConfig cfg;
  if (!doc.contains("command")) fail("$.command", "required");
  const std::string command = get_string(doc["command"], "$.command");
  if (command == "solve") {
    cfg.command = RunConfig::Command::solve;
  } else if (command == "convergence") {
    cfg.command = RunConfig::Command::convergence;
  } else if (command == "ft-demo") {
    cfg.command = RunConfig::Command::ft_demo;
  } else if (command == "mesh-dump") {
    cfg.command = RunConfig::Command::mesh_dump;
  } else {
    fail("$.command", "expected one of solve, convergence, ft-demo, mesh-dump");
  }

  if (doc.contains("case")) cfg.case_name = get_string(doc["case"], "$.case");
  if (doc.contains("scenario")) cfg.scenario = get_string(doc["scenario"], "$.scenario");
  if (doc.contains("source")) {
    const auto s = get_numbers(doc["source"], "$.source", 2);
    cfg.source = Vec2(s[0], s[1]);
  }
  if (doc.contains("n")) cfg.n = get_int(doc["n"], "$.n");
  if (doc.contains("levels")) {
    const json& lv = doc["levels"];
    if (!lv.is_array()) fail("$.levels", "expected an array of integers");
    for (std::size_t i = 0; i < lv.size(); ++i) cfg.levels.push_back(get_int(lv[i], "$.levels[" + std::to_string(i) + "]"));
  }
  if (doc.contains("solver")) cfg.solver = parse_solver(doc["solver"], "$.solver");
  if (doc.contains("assembly")) cfg.assembly = parse_assembly(doc["assembly"], "$.assembly");
  if (doc.contains("coefficients")) cfg.coefficients = parse_coefficients(doc["coefficients"], "$.coefficients");
  if (doc.contains("domain")) cfg.domain = get_rectangle(doc["domain"], "$.domain");
  if (doc.contains("samples")) cfg.samples = get_int(doc["samples"], "$.samples");
  if (doc.contains("out")) cfg.out = get_string(doc["out"], "$.out");

  validate(cfg);
  return cfg;
}

void validate(const RunConfig& cfg) {
  cfg.solver.validate();
  if (cfg.samples < 0 || cfg.samples == 1) throw ConfigError("$.samples: must be >= 2 (or 0 for the default)");
  if (cfg.coefficients) cfg.coefficients->validate();

  auto need_n = [&] {
    if (cfg.n < 1) throw ConfigError("$.n: required positive integer for " + command_name(cfg.command));
  };
  switch (cfg.command) {
    case RunConfig::Command::solve:
      need_n();
      if (cfg.case_name.empty() == cfg.scenario.empty()) {
        throw ConfigError("$: solve needs exactly one of \"case\" or \"scenario\"");
      }
      if (!cfg.case_name.empty()) {
        make_case(cfg.case_name);
      } else {
        make_scenario(cfg.scenario, cfg.n, cfg.source);
      }
      break;
    case RunConfig::Command::convergence:
      if (cfg.case_name.empty()) throw ConfigError("$.case: required for convergence");
      make_case(cfg.case_name);
      if (cfg.levels.empty()) throw ConfigError("$.levels: required for convergence");
      for (std::size_t i = 0; i < cfg.levels.size(); ++i) {
        if (cfg.levels[i] < 1) throw ConfigError("$.levels[" + std::to_string(i) + "]: must be positive");
        if (i > 0 && cfg.levels[i] <= cfg.levels[i - 1]) throw ConfigError("$.levels: must be strictly increasing");
      }
      break;
    case RunConfig::Command::ft_demo:
      need_n();
      if (cfg.scenario.empty()) throw ConfigError("$.scenario: required for ft-demo");
      make_scenario(cfg.scenario, cfg.n, cfg.source);
      break;
    case RunConfig::Command::mesh_dump:
      need_n();
      break;
  }
}

}  // namespace wg
