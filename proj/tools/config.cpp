#include "config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace loopmech::cli {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config: " + msg); }

void expect_keys(const json& obj, const std::vector<std::string>& allowed,
                 const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const auto& k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known) fail("unknown key \"" + it.key() + "\" in " + where);
  }
}

double as_number(const json& v, const std::string& what) {
  if (!v.is_number()) fail(what + " must be a number");
  return v.get<double>();
}

UnitOctonion parse_point(const json& v, const std::string& what) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "identity" || s == "e0") return UnitOctonion::identity();
    if (s.size() == 2 && s[0] == 'e' && s[1] >= '1' && s[1] <= '7')
      return UnitOctonion::basis(static_cast<std::size_t>(s[1] - '0'));
    fail(what + ": unknown named point \"" + s + "\" (use e0..e7 or identity)");
  }
  if (!v.is_array() || v.size() != 8) fail(what + " must be an 8-vector or a named point");
  Octonion o;
  for (std::size_t i = 0; i < 8; ++i) o[i] = as_number(v[i], what + " component");
  const double n = norm(o);
  if (!(n > 1e-8)) fail(what + " must have nonzero norm");
  return UnitOctonion(o / n);
}

}  // namespace

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

RunConfig RunConfig::from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("top level must be a JSON object");
  expect_keys(doc,
              {"lagrangian", "masses", "initial", "guess_strategy", "perturb_radius",
               "steps", "solver", "seed", "output", "points", "random_points"},
              "config");

  RunConfig cfg;

  if (!doc.contains("lagrangian") || !doc["lagrangian"].is_string())
    fail("\"lagrangian\" is required and must be \"linear\", \"sq\" or \"kinetic\"");
  cfg.lagrangian = doc["lagrangian"].get<std::string>();
  if (cfg.lagrangian != "linear" && cfg.lagrangian != "sq" && cfg.lagrangian != "kinetic")
    fail("\"lagrangian\" must be \"linear\", \"sq\" or \"kinetic\"");

  if (doc.contains("masses")) {
    if (cfg.lagrangian != "kinetic") fail("\"masses\" is only valid for the kinetic Lagrangian");
    if (!doc["masses"].is_array() || doc["masses"].empty() || doc["masses"].size() > 7)
      fail("\"masses\" must be an array of 1 to 7 positive numbers");
    cfg.masses.clear();
    for (const auto& m : doc["masses"]) {
      const double v = as_number(m, "mass");
      if (!(v > 0.0)) fail("masses must be positive");
      cfg.masses.push_back(v);
    }
  }

  if (doc.contains("initial")) cfg.initial = parse_point(doc["initial"], "\"initial\"");

  if (doc.contains("guess_strategy")) {
    if (!doc["guess_strategy"].is_string()) fail("\"guess_strategy\" must be a string");
    const std::string s = doc["guess_strategy"].get<std::string>();
    if (s == "same")
      cfg.guess_strategy = GuessStrategy::kSame;
    else if (s == "conjugate")
      cfg.guess_strategy = GuessStrategy::kConjugate;
    else if (s == "perturbed")
      cfg.guess_strategy = GuessStrategy::kPerturbed;
    else
      fail("\"guess_strategy\" must be \"same\", \"conjugate\" or \"perturbed\"");
  }

  if (doc.contains("perturb_radius")) {
    cfg.perturb_radius = as_number(doc["perturb_radius"], "\"perturb_radius\"");
    if (!(cfg.perturb_radius > 0.0) || cfg.perturb_radius >= 3.14159)
      fail("\"perturb_radius\" must be in (0, pi)");
  }

  if (doc.contains("steps")) {
    if (!doc["steps"].is_number_integer()) fail("\"steps\" must be an integer");
    cfg.steps = doc["steps"].get<int>();
    if (cfg.steps < 1) fail("\"steps\" must be >= 1");
  }

  if (doc.contains("solver")) {
    const json& s = doc["solver"];
    if (!s.is_object()) fail("\"solver\" must be an object");
    expect_keys(s, {"tol", "max_iter", "fd_step", "damping", "chart_clamp"}, "solver");
    if (s.contains("tol")) cfg.solver.tol = as_number(s["tol"], "solver.tol");
    if (s.contains("max_iter")) {
      if (!s["max_iter"].is_number_integer()) fail("solver.max_iter must be an integer");
      cfg.solver.max_iter = s["max_iter"].get<int>();
    }
    if (s.contains("fd_step")) cfg.solver.fd_step = as_number(s["fd_step"], "solver.fd_step");
    if (s.contains("damping")) cfg.solver.damping = as_number(s["damping"], "solver.damping");
    if (s.contains("chart_clamp"))
      cfg.solver.chart_clamp = as_number(s["chart_clamp"], "solver.chart_clamp");
    try {
      cfg.solver.validate();
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) fail("\"seed\" must be a non-negative integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }

  if (doc.contains("output")) {
    const json& o = doc["output"];
    if (!o.is_object()) fail("\"output\" must be an object");
    expect_keys(o, {"path", "format"}, "output");
    if (o.contains("path")) {
      if (!o["path"].is_string()) fail("output.path must be a string");
      cfg.output_path = o["path"].get<std::string>();
    }
    if (o.contains("format")) {
      if (!o["format"].is_string()) fail("output.format must be \"csv\" or \"json\"");
      const std::string f = o["format"].get<std::string>();
      if (f == "csv")
        cfg.format = OutputFormat::kCsv;
      else if (f == "json")
        cfg.format = OutputFormat::kJson;
      else
        fail("output.format must be \"csv\" or \"json\"");
    }
  }

  if (doc.contains("points")) {
    if (!doc["points"].is_array() || doc["points"].empty())
      fail("\"points\" must be a non-empty array");
    cfg.points.clear();
    for (const auto& p : doc["points"]) cfg.points.push_back(parse_point(p, "point"));
  }

  if (doc.contains("random_points")) {
    if (!doc["random_points"].is_number_integer()) fail("\"random_points\" must be an integer");
    cfg.random_points = doc["random_points"].get<int>();
    if (cfg.random_points < 0) fail("\"random_points\" must be >= 0");
  }

  return cfg;
}

Lagrangian RunConfig::make_lagrangian() const {
  if (lagrangian == "linear") return lagrangian_linear();
  if (lagrangian == "sq") return lagrangian_sq();
  return lagrangian_kinetic(masses);
}

std::string format_extension(OutputFormat f) {
  return f == OutputFormat::kCsv ? "csv" : "json";
}

int worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  int n = hw ? static_cast<int>(hw) : 4;
  if (const char* s = std::getenv("LOOPMECH_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end == s || *end != '\0' || v < 1 || v > 256)
      throw ConfigError("LOOPMECH_THREADS must be an integer in [1, 256]");
    n = static_cast<int>(v);
  }
  return n;
}

}  // namespace loopmech::cli
