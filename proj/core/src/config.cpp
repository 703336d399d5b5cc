#include "cavqed/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "cavqed/error.hpp"
#include "cavqed/observables.hpp"
#include "cavqed/presets.hpp"
#include "json.hpp"

namespace cavqed {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string to_string(RunKind k) {
  switch (k) {
    case RunKind::spectrum: return "spectrum";
    case RunKind::weights: return "weights";
    case RunKind::dynamics: return "dynamics";
  }
  return "?";
}

std::string to_string(SolverKind k) {
  switch (k) {
    case SolverKind::structured: return "structured";
    case SolverKind::dense: return "dense";
    case SolverKind::resolvent: return "resolvent";
  }
  return "?";
}

RunKind parse_run_kind(const std::string& s) {
  if (s == "spectrum") return RunKind::spectrum;
  if (s == "weights") return RunKind::weights;
  if (s == "dynamics") return RunKind::dynamics;
  throw ValidationError("run.kind", "unknown run kind '" + s + "' (spectrum, weights, dynamics)");
}

SolverKind parse_solver_kind(const std::string& s) {
  if (s == "structured") return SolverKind::structured;
  if (s == "dense") return SolverKind::dense;
  if (s == "resolvent") return SolverKind::resolvent;
  throw ValidationError("run.solver", "unknown solver '" + s + "' (structured, dense, resolvent)");
}

namespace {

// Collects schema problems instead of stopping at the first one.
class Reader {
 public:
  std::vector<Issue> issues;

  void fail(const std::string& path, const std::string& msg) { issues.push_back({path, msg}); }

  bool object(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) {
      fail(path.empty() ? "$" : path, "expected an object");
      return false;
    }
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : j.items())
      if (!ok.count(k)) fail(join(path, k), "unknown field");
    return true;
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

  std::optional<double> number(const json& j, const std::string& path) {
    if (!j.is_number()) {
      fail(path, "expected a number");
      return std::nullopt;
    }
    return j.get<double>();
  }

  std::optional<std::size_t> count(const json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 0) {
      fail(path, "expected a non-negative integer");
      return std::nullopt;
    }
    return j.get<std::size_t>();
  }

  std::optional<std::string> text(const json& j, const std::string& path) {
    if (!j.is_string()) {
      fail(path, "expected a string");
      return std::nullopt;
    }
    return j.get<std::string>();
  }

  // A bare number means an x-polarized vector.
  std::optional<Vec3> vec3(const json& j, const std::string& path) {
    if (j.is_number()) return Vec3{j.get<double>(), 0.0, 0.0};
    if (!j.is_array() || j.size() != 3) {
      fail(path, "expected a number or an array of 3 numbers");
      return std::nullopt;
    }
    Vec3 v{};
    for (std::size_t i = 0; i < 3; ++i) {
      auto x = number(j[i], path + "[" + std::to_string(i) + "]");
      if (!x) return std::nullopt;
      v[i] = *x;
    }
    return v;
  }

  std::optional<std::array<double, 2>> pair(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) {
      fail(path, "expected an array of 2 numbers");
      return std::nullopt;
    }
    auto a = number(j[0], path + "[0]");
    auto b = number(j[1], path + "[1]");
    if (!a || !b) return std::nullopt;
    return std::array<double, 2>{*a, *b};
  }

  template <class T, class F>
  void optional_field(const json& obj, const char* key, const std::string& path, F&& read, T& out) {
    if (!obj.contains(key)) return;
    if (auto v = read(obj.at(key), join(path, key))) out = *v;
  }
};

ElectronicLevels read_levels(Reader& rd, const json& j) {
  ElectronicLevels levels;
  if (!j.is_array()) {
    rd.fail("levels", "expected an array of levels");
    return levels;
  }
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = "levels[" + std::to_string(i) + "]";
    const json& e = j[i];
    if (!rd.object(e, p, {"label", "energy", "dipole"})) continue;
    Level lv;
    if (!e.contains("label")) rd.fail(p + ".label", "required");
    if (!e.contains("energy")) rd.fail(p + ".energy", "required");
    if (!e.contains("dipole")) rd.fail(p + ".dipole", "required");
    rd.optional_field(e, "label", p, [&](const json& v, const std::string& q) { return rd.text(v, q); }, lv.label);
    rd.optional_field(e, "energy", p, [&](const json& v, const std::string& q) { return rd.number(v, q); }, lv.energy);
    rd.optional_field(e, "dipole", p, [&](const json& v, const std::string& q) { return rd.vec3(v, q); }, lv.dipole);
    levels.levels.push_back(std::move(lv));
  }
  return levels;
}

CavityModel read_cavity(Reader& rd, const json& j) {
  CavityModel c;
  if (!rd.object(j, "cavity", {"omega_c", "lambda_c", "kappa", "window", "spacing", "max_modes"})) return c;
  for (const char* key : {"omega_c", "lambda_c", "kappa", "window", "spacing"})
    if (!j.contains(key)) rd.fail(std::string("cavity.") + key, "required");
  auto num = [&](const json& v, const std::string& q) { return rd.number(v, q); };
  rd.optional_field(j, "omega_c", "cavity", num, c.omega_c);
  rd.optional_field(j, "kappa", "cavity", num, c.kappa);
  rd.optional_field(j, "spacing", "cavity", num, c.spacing);
  rd.optional_field(j, "lambda_c", "cavity", [&](const json& v, const std::string& q) { return rd.vec3(v, q); },
                    c.lambda_c);
  rd.optional_field(j, "max_modes", "cavity", [&](const json& v, const std::string& q) { return rd.count(v, q); },
                    c.max_modes);
  if (j.contains("window"))
    if (auto w = rd.pair(j.at("window"), "cavity.window")) {
      c.omega_min = (*w)[0];
      c.omega_max = (*w)[1];
    }
  return c;
}

TransformSpec read_transform(Reader& rd, const json& j) {
  TransformSpec t;
  const std::string p = "run.transform";
  if (!rd.object(j, p, {"mapping", "center", "width", "scale", "offset", "knots", "modes"})) return t;
  auto num = [&](const json& v, const std::string& q) { return rd.number(v, q); };
  rd.optional_field(j, "mapping", p, [&](const json& v, const std::string& q) { return rd.text(v, q); }, t.mapping);
  rd.optional_field(j, "width", p, num, t.width);
  rd.optional_field(j, "scale", p, num, t.scale);
  rd.optional_field(j, "offset", p, num, t.offset);
  if (j.contains("center"))
    if (auto v = rd.number(j.at("center"), p + ".center")) t.center = *v;
  if (!j.contains("modes")) rd.fail(p + ".modes", "required");
  rd.optional_field(j, "modes", p, [&](const json& v, const std::string& q) { return rd.count(v, q); }, t.modes);
  if (j.contains("knots")) {
    const json& k = j.at("knots");
    if (!k.is_array()) {
      rd.fail(p + ".knots", "expected an array of [Omega, omega] pairs");
    } else {
      for (std::size_t i = 0; i < k.size(); ++i)
        if (auto pr = rd.pair(k[i], p + ".knots[" + std::to_string(i) + "]")) t.knots.emplace_back((*pr)[0], (*pr)[1]);
    }
  }
  return t;
}

RunSpec read_run(Reader& rd, const json& j) {
  RunSpec r;
  if (!rd.object(j, "run", {"kind", "gamma", "polarization", "solver", "spectrum_points", "spectrum_window",
                            "initial", "t_end_fs", "t_points", "dip", "transform"}))
    return r;
  auto num = [&](const json& v, const std::string& q) { return rd.number(v, q); };
  auto cnt = [&](const json& v, const std::string& q) { return rd.count(v, q); };
  auto txt = [&](const json& v, const std::string& q) { return rd.text(v, q); };
  if (j.contains("kind"))
    if (auto s = rd.text(j.at("kind"), "run.kind")) {
      try {
        r.kind = parse_run_kind(*s);
      } catch (const ValidationError& e) {
        rd.issues.insert(rd.issues.end(), e.issues().begin(), e.issues().end());
      }
    }
  if (j.contains("solver"))
    if (auto s = rd.text(j.at("solver"), "run.solver")) {
      try {
        r.solver = parse_solver_kind(*s);
      } catch (const ValidationError& e) {
        rd.issues.insert(rd.issues.end(), e.issues().begin(), e.issues().end());
      }
    }
  rd.optional_field(j, "gamma", "run", num, r.gamma);
  rd.optional_field(j, "polarization", "run", [&](const json& v, const std::string& q) { return rd.vec3(v, q); },
                    r.polarization);
  rd.optional_field(j, "spectrum_points", "run", cnt, r.spectrum_points);
  rd.optional_field(j, "t_points", "run", cnt, r.t_points);
  if (j.contains("spectrum_window"))
    if (auto w = rd.pair(j.at("spectrum_window"), "run.spectrum_window")) r.spectrum_window = *w;
  if (j.contains("initial"))
    if (auto s = txt(j.at("initial"), "run.initial")) r.initial = *s;
  if (j.contains("t_end_fs"))
    if (auto v = num(j.at("t_end_fs"), "run.t_end_fs")) r.t_end_fs = *v;
  if (j.contains("dip"))
    if (auto v = num(j.at("dip"), "run.dip")) r.dip = *v;
  if (j.contains("transform")) r.transform = read_transform(rd, j.at("transform"));
  return r;
}

void check_run(const RunConfig& c, std::vector<Issue>& out) {
  const RunSpec& r = c.run;
  auto add = [&](std::string p, std::string m) { out.push_back({std::move(p), std::move(m)}); };
  if (!(r.gamma > 0.0) || !std::isfinite(r.gamma)) add("run.gamma", "broadening must be positive");
  if (!(std::abs(norm(r.polarization) - 1.0) <= 1e-9)) add("run.polarization", "must be a unit vector");
  if (r.spectrum_points < 2) add("run.spectrum_points", "need at least 2 points");
  if (r.spectrum_window) {
    const auto& w = *r.spectrum_window;
    if (!(w[0] > 0.0) || !(w[1] > w[0]) || !std::isfinite(w[1]))
      add("run.spectrum_window", "window must be positive and increasing");
  }
  if (r.t_points < 2) add("run.t_points", "need at least 2 time points");
  if (r.t_end_fs && (!(*r.t_end_fs > 0.0) || !std::isfinite(*r.t_end_fs)))
    add("run.t_end_fs", "must be positive");
  if (r.initial) {
    bool found = false;
    for (const auto& l : c.levels.levels) found = found || l.label == *r.initial;
    if (!found) add("run.initial", "unknown initial state '" + *r.initial + "'");
  }
  if (r.dip && (!(*r.dip > 0.0) || !std::isfinite(*r.dip))) add("run.dip", "must be a positive frequency");
  if (r.solver == SolverKind::resolvent && r.kind != RunKind::spectrum)
    add("run.solver", "the resolvent solver only produces absorption spectra");
  if (r.transform) {
    const auto& t = *r.transform;
    if (t.modes < 2) add("run.transform.modes", "need at least 2 modes");
    if (t.mapping == "arctan") {
      if (!(t.width > 0.0)) add("run.transform.width", "arctan focus width must be positive");
    } else if (t.mapping == "linear") {
      if (!(t.scale != 0.0) || !std::isfinite(t.scale)) add("run.transform.scale", "must be non-zero");
    } else if (t.mapping == "tabulated") {
      if (t.knots.size() < 2) add("run.transform.knots", "need at least 2 knots");
    } else if (t.mapping != "identity") {
      add("run.transform.mapping", "unknown mapping '" + t.mapping + "' (identity, linear, arctan, tabulated)");
    }
  }
}

ojson vec_json(const Vec3& v) { return ojson::array({v[0], v[1], v[2]}); }

ojson to_ojson(const RunConfig& c) {
  ojson j;
  j["id"] = c.id;
  ojson levels = ojson::array();
  for (const auto& l : c.levels.levels) {
    ojson e;
    e["label"] = l.label;
    e["energy"] = l.energy;
    e["dipole"] = vec_json(l.dipole);
    levels.push_back(e);
  }
  j["levels"] = levels;
  ojson cav;
  cav["omega_c"] = c.cavity.omega_c;
  cav["lambda_c"] = vec_json(c.cavity.lambda_c);
  cav["kappa"] = c.cavity.kappa;
  cav["window"] = ojson::array({c.cavity.omega_min, c.cavity.omega_max});
  cav["spacing"] = c.cavity.spacing;
  cav["max_modes"] = c.cavity.max_modes;
  j["cavity"] = cav;
  const RunSpec& r = c.run;
  ojson run;
  run["kind"] = to_string(r.kind);
  run["gamma"] = r.gamma;
  run["polarization"] = vec_json(r.polarization);
  run["solver"] = to_string(r.solver);
  run["spectrum_points"] = r.spectrum_points;
  if (r.spectrum_window) run["spectrum_window"] = ojson::array({(*r.spectrum_window)[0], (*r.spectrum_window)[1]});
  if (r.initial) run["initial"] = *r.initial;
  if (r.t_end_fs) run["t_end_fs"] = *r.t_end_fs;
  run["t_points"] = r.t_points;
  if (r.dip) run["dip"] = *r.dip;
  if (r.transform) {
    const auto& t = *r.transform;
    ojson tj;
    tj["mapping"] = t.mapping;
    if (t.center) tj["center"] = *t.center;
    tj["width"] = t.width;
    tj["scale"] = t.scale;
    tj["offset"] = t.offset;
    if (!t.knots.empty()) {
      ojson k = ojson::array();
      for (const auto& [a, b] : t.knots) k.push_back(ojson::array({a, b}));
      tj["knots"] = k;
    }
    tj["modes"] = t.modes;
    run["transform"] = tj;
  }
  j["run"] = run;
  return j;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError("$", std::string("invalid JSON: ") + e.what());
  }
  if (doc.is_object() && doc.contains("config") && doc.contains("manifest_version")) doc = doc.at("config");

  if (doc.is_object() && doc.contains("base")) {
    if (!doc.at("base").is_string()) throw ValidationError("base", "expected a preset id");
    const std::string base = doc.at("base").get<std::string>();
    json merged = json::parse(dump_config(find_preset(base).config));
    json patch = doc;
    patch.erase("base");
    merged.merge_patch(patch);
    if (!doc.contains("id")) merged["id"] = base;
    doc = std::move(merged);
  }

  Reader rd;
  RunConfig cfg;
  if (rd.object(doc, "", {"id", "levels", "cavity", "run"})) {
    if (doc.contains("id"))
      if (auto s = rd.text(doc.at("id"), "id")) cfg.id = *s;
    if (!doc.contains("levels")) rd.fail("levels", "required");
    if (!doc.contains("cavity")) rd.fail("cavity", "required");
    if (doc.contains("levels")) cfg.levels = read_levels(rd, doc.at("levels"));
    if (doc.contains("cavity")) cfg.cavity = read_cavity(rd, doc.at("cavity"));
    if (doc.contains("run")) cfg.run = read_run(rd, doc.at("run"));
  }
  if (rd.issues.empty()) {
    rd.issues = check_inputs(cfg.levels, cfg.cavity);
    check_run(cfg, rd.issues);
  }
  if (!rd.issues.empty()) throw ValidationError(std::move(rd.issues));
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const RunConfig& config, int indent) { return to_ojson(config).dump(indent); }

std::unique_ptr<FrequencyMapping> make_mapping(const TransformSpec& spec, const CavityModel& cavity) {
  if (spec.mapping == "identity") return std::make_unique<IdentityMapping>();
  if (spec.mapping == "linear") return std::make_unique<LinearMapping>(spec.scale, spec.offset);
  if (spec.mapping == "arctan")
    return std::make_unique<ArctanStretch>(spec.center.value_or(cavity.omega_c), spec.width);
  if (spec.mapping == "tabulated") return std::make_unique<TabulatedMapping>(spec.knots);
  throw ValidationError("run.transform.mapping", "unknown mapping '" + spec.mapping + "'");
}

PhotonGrid make_grid(const RunConfig& config) {
  PhotonGrid grid = build_photon_grid(config.cavity);
  if (!config.run.transform) return grid;
  const auto mapping = make_mapping(*config.run.transform, config.cavity);
  const double step = spacing_for_mode_count(grid, *mapping, config.run.transform->modes);
  return transform_grid(grid, *mapping, step);
}

std::vector<double> spectrum_grid(const RunConfig& config) {
  const auto w = config.run.spectrum_window.value_or(
      std::array<double, 2>{config.cavity.omega_min, config.cavity.omega_max});
  return uniform_grid(w[0], w[1], config.run.spectrum_points);
}

}  // namespace cavqed
