#include "cavqed/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include "cavqed/error.hpp"
#include "cavqed/format.hpp"
#include "cavqed/observables.hpp"
#include "cavqed/parallel.hpp"
#include "json.hpp"

namespace cavqed {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

std::string version() { return CAVQED_VERSION; }

fs::path default_output_dir() {
  if (const char* env = std::getenv("CAVQED_OUT"); env && *env) return env;
  return "cavqed-out";
}

namespace {

using Metadata = std::vector<std::pair<std::string, std::string>>;

struct Solved {
  PhotonGrid grid;
  std::optional<CoupledSystem> system;
  std::optional<PolaritonModes> modes;
  std::optional<double> t_end;  // dynamics only
};

std::ofstream open_out(const fs::path& p) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  return os;
}

void finish(std::ofstream& os, const fs::path& p) {
  os.flush();
  if (!os) throw std::runtime_error("write failed: " + p.string());
}

std::string initial_label(const RunConfig& c) {
  return c.run.initial.value_or(c.levels.levels.front().label);
}

Solved solve(const RunConfig& c, unsigned threads) {
  Solved s;
  s.grid = make_grid(c);
  s.system.emplace(assemble(c.levels, s.grid));
  if (c.run.kind == RunKind::dynamics) {
    const double t_rec = recurrence_time(*s.system);
    const double t_end = c.run.t_end_fs.value_or(
        std::min(default_duration(c.levels, c.cavity, initial_label(c)), 0.4 * t_rec));
    if (!(t_end < 0.5 * t_rec))
      throw ValidationError("run.t_end_fs", "trajectory of " + fmt(t_end) +
                                                " fs reaches past half the recurrence time " + fmt(t_rec) + " fs");
    s.t_end = t_end;
  }
  if (c.run.solver == SolverKind::resolvent) return s;
  SolverOptions opts;
  opts.threads = threads;
  s.modes = c.run.solver == SolverKind::dense ? eigensolve_dense(*s.system, opts)
                                              : eigensolve_structured(*s.system, opts);
  return s;
}

std::vector<double> time_grid(double t_end, std::size_t points) {
  std::vector<double> t(points);
  for (std::size_t j = 0; j < points; ++j)
    t[j] = t_end * static_cast<double>(j) / static_cast<double>(points - 1);
  return t;
}

void spectrum_features(const RunConfig& c, const Spectrum& s, RunResult& r) {
  r.peaks = find_peaks(s);
  r.splitting = main_splitting(r.peaks);
  if (c.run.dip) r.dip_depth = dip_depth(s, *c.run.dip);
}

ojson result_json(const RunResult& r) {
  ojson j;
  ojson peaks = ojson::array();
  for (const auto& p : r.peaks) peaks.push_back(p.omega);
  j["peaks_eV"] = peaks;
  if (r.splitting) j["main_splitting_eV"] = *r.splitting;
  if (r.dip_depth) j["dip_depth"] = *r.dip_depth;
  if (r.decay) {
    j["decay_rate_eV"] = r.decay->rate;
    j["decay_monotone"] = r.decay->monotone;
    j["decayed"] = r.decay->decayed;
  }
  if (r.rabi) {
    j["rabi_eV"] = r.rabi->frequency;
    j["overdamped"] = r.rabi->overdamped;
  }
  return j;
}

RunResult emit(const RunConfig& c, const Solved& s, const fs::path& dir, unsigned threads) {
  fs::create_directories(dir);
  RunResult r;
  r.dir = dir;
  r.photon_modes = s.grid.size();
  const CoupledSystem& sys = *s.system;
  const Metadata md{{"id", c.id},
                    {"code_version", version()},
                    {"solver", to_string(c.run.solver)},
                    {"photon_modes", std::to_string(s.grid.size())},
                    {"grid", s.grid.provenance}};

  auto write = [&](const std::string& name, auto&& body) {
    const fs::path p = dir / name;
    auto os = open_out(p);
    body(os);
    finish(os, p);
    r.files.push_back(name);
  };

  if (c.run.kind == RunKind::spectrum || c.run.kind == RunKind::weights) {
    const auto omega = spectrum_grid(c);
    const Spectrum spec =
        s.modes ? absorption_spectrum(*s.modes, c.levels, c.run.gamma, omega, c.run.polarization, threads)
                : resolvent_spectrum(sys, c.levels, c.run.gamma, omega, c.run.polarization, threads);
    write("spectrum.csv", [&](std::ostream& os) { write_spectrum_csv(spec, os, md); });
    spectrum_features(c, spec, r);
    if (c.run.kind == RunKind::weights) {
      std::vector<Spectrum> curves;
      for (std::size_t i = 0; i < c.levels.size(); ++i)
        curves.push_back(weight_spectrum(*s.modes, c.levels, i, c.run.gamma, omega, threads));
      write("weights.csv", [&](std::ostream& os) { write_weight_spectra_csv(curves, os, md); });
    }
  } else {
    const std::string init = initial_label(c);
    const auto times = time_grid(*s.t_end, c.run.t_points);
    const Trajectory traj = propagate(sys, *s.modes, init, times, threads);
    Metadata tmd = md;
    tmd.emplace_back("initial", init);
    tmd.emplace_back("recurrence_time_fs", fmt(recurrence_time(sys)));
    write("trajectory.csv", [&](std::ostream& os) { write_trajectory_csv(traj, os, tmd); });
    const std::size_t idx = c.levels.index_of(init);
    try {
      r.decay = fit_decay_rate(traj, idx, 0.0, *s.t_end);
    } catch (const ValidationError&) {
      // population hit zero everywhere; no fit
    }
    r.rabi = extract_rabi_frequency(traj, idx);
  }
  if (s.modes)
    write("eigen_table.csv",
          [&](std::ostream& os) { write_eigen_table_csv(*s.modes, sys.labels(), os); });

  ojson m;
  m["manifest_version"] = 1;
  m["code_version"] = version();
  m["config"] = ojson::parse(dump_config(c));
  ojson solver;
  solver["kind"] = to_string(c.run.solver);
  if (c.run.solver != SolverKind::resolvent) {
    const SolverOptions defaults;
    solver["cluster_tolerance_eV"] = defaults.cluster_tolerance;
    solver["max_iterations"] = defaults.max_iterations;
    if (c.run.solver == SolverKind::dense) solver["dense_cap"] = defaults.dense_cap;
  }
  m["solver"] = solver;
  ojson res;
  res["photon_modes"] = s.grid.size();
  res["grid"] = s.grid.provenance;
  if (auto cov = check_sum_rule(s.grid, c.cavity)) res["sum_rule_coverage"] = *cov;
  res["recurrence_time_fs"] = recurrence_time(sys);
  if (s.t_end) res["t_end_fs"] = *s.t_end;
  m["resolved"] = res;
  m["summary"] = result_json(r);
  ojson files = ojson::array();
  for (const auto& f : r.files) files.push_back(f);
  files.push_back("manifest.json");
  m["outputs"] = files;
  write("manifest.json", [&](std::ostream& os) { os << m.dump(2) << '\n'; });
  return r;
}

// Round trip through the parser so programmatic configs get the same checks as files.
RunConfig checked(const RunConfig& c) { return parse_config(dump_config(c)); }

std::string join_peaks(const std::vector<Peak>& peaks) {
  std::string s;
  for (const auto& p : peaks) {
    if (!s.empty()) s += ';';
    s += fmt(p.omega);
  }
  return s;
}

}  // namespace

RunResult run(const RunConfig& config, const RunOptions& opts) {
  const RunConfig c = checked(config);
  const Solved s = solve(c, opts.threads);
  return emit(c, s, opts.out, opts.threads);
}

std::string to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::lambda_c: return "lambda_c";
    case SweepParameter::kappa: return "kappa";
    case SweepParameter::gamma: return "gamma";
  }
  return "?";
}

SweepParameter parse_sweep_parameter(const std::string& s) {
  if (s == "lambda_c") return SweepParameter::lambda_c;
  if (s == "kappa") return SweepParameter::kappa;
  if (s == "gamma") return SweepParameter::gamma;
  throw ValidationError("sweep.parameter", "unknown sweep parameter '" + s + "' (lambda_c, kappa, gamma)");
}

RunConfig with_parameter(RunConfig config, SweepParameter p, double value) {
  switch (p) {
    case SweepParameter::lambda_c: {
      const double n = norm(config.cavity.lambda_c);
      config.cavity.lambda_c = n > 0.0 ? scaled(config.cavity.lambda_c, value / n) : Vec3{value, 0.0, 0.0};
      break;
    }
    case SweepParameter::kappa: config.cavity.kappa = value; break;
    case SweepParameter::gamma: config.run.gamma = value; break;
  }
  return config;
}

SweepResult sweep(const RunConfig& base, SweepParameter p, const std::vector<double>& values,
                  const RunOptions& opts) {
  if (values.empty()) throw ValidationError("sweep.values", "empty value list");
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!(values[i] > 0.0) || !std::isfinite(values[i]))
      throw ValidationError("sweep.values[" + std::to_string(i) + "]", "values must be finite and positive");

  std::vector<RunConfig> members;
  for (double v : values) members.push_back(checked(with_parameter(base, p, v)));

  auto member_dir = [&](std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "member_%03zu", i);
    return opts.out / buf;
  };

  const unsigned total = resolve_threads(opts.threads);
  const auto workers = static_cast<unsigned>(std::min<std::size_t>(total, members.size()));
  const unsigned inner = std::max(1u, total / workers);

  SweepResult out;
  out.members.resize(members.size());
  std::optional<Solved> shared;
  if (p == SweepParameter::gamma) shared = solve(members.front(), total);
  parallel_chunks(members.size(), workers, [&](std::size_t b, std::size_t e, unsigned) {
    for (std::size_t i = b; i < e; ++i) {
      if (shared) {
        out.members[i] = emit(members[i], *shared, member_dir(i), inner);
      } else {
        const Solved s = solve(members[i], inner);
        out.members[i] = emit(members[i], s, member_dir(i), inner);
      }
    }
  });

  out.summary = opts.out / "summary.csv";
  {
    auto os = open_out(out.summary);
    os << "# base: " << base.id << "\n# code_version: " << version() << '\n';
    os << "index,parameter,value,dir,n_peaks,peaks_eV,main_splitting_eV,dip_depth,"
          "decay_rate_eV,decay_monotone,decayed,rabi_eV,overdamped\n";
    auto opt = [](const std::optional<double>& v) { return v ? fmt(*v) : std::string(); };
    for (std::size_t i = 0; i < members.size(); ++i) {
      const RunResult& r = out.members[i];
      os << i << ',' << to_string(p) << ',' << fmt(values[i]) << ',' << member_dir(i).filename().string() << ','
         << r.peaks.size() << ',' << join_peaks(r.peaks) << ',' << opt(r.splitting) << ',' << opt(r.dip_depth)
         << ',';
      if (r.decay) os << fmt(r.decay->rate) << ',' << r.decay->monotone << ',' << r.decay->decayed;
      else os << ",,";
      os << ',';
      if (r.rabi) os << fmt(r.rabi->frequency) << ',' << r.rabi->overdamped;
      else os << ',';
      os << '\n';
    }
    finish(os, out.summary);
  }

  ojson m;
  m["sweep_version"] = 1;
  m["code_version"] = version();
  m["parameter"] = to_string(p);
  m["values"] = values;
  m["base"] = ojson::parse(dump_config(checked(base)));
  ojson dirs = ojson::array();
  for (std::size_t i = 0; i < members.size(); ++i) dirs.push_back(member_dir(i).filename().string());
  m["members"] = dirs;
  const fs::path mp = opts.out / "sweep.json";
  auto os = open_out(mp);
  os << m.dump(2) << '\n';
  finish(os, mp);
  return out;
}

}  // namespace cavqed
