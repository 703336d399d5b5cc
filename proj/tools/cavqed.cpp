#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cavqed/config.hpp"
#include "cavqed/discretize.hpp"
#include "cavqed/error.hpp"
#include "cavqed/format.hpp"
#include "cavqed/presets.hpp"
#include "cavqed/runner.hpp"

namespace {

using namespace cavqed;

enum Exit { ok = 0, io = 1, invalid = 2, solver = 3 };

struct Source {
  std::string preset;
  std::string config;
  std::string out;
  unsigned threads = 0;
  std::string solver;
  std::optional<double> gamma;

  void attach(CLI::App* cmd, bool with_run = true) {
    auto* p = cmd->add_option("--preset", preset, "Preset id (see `preset list`)");
    auto* c = cmd->add_option("--config", config, "JSON config or run manifest");
    p->excludes(c);
    if (!with_run) return;
    cmd->add_option("--out", out, "Output directory (default $CAVQED_OUT or ./cavqed-out)");
    cmd->add_option("--threads", threads, "Worker threads, 0 = all cores");
    cmd->add_option("--solver", solver, "structured | dense | resolvent")
        ->check(CLI::IsMember({"structured", "dense", "resolvent"}));
    cmd->add_option("--gamma", gamma, "Override the spectral broadening, eV");
  }

  RunConfig load() const {
    if (!config.empty()) return load_config(config);
    if (!preset.empty()) return find_preset(preset).config;
    throw ValidationError("config", "give --preset <id> or --config <path>");
  }

  RunConfig resolve(std::optional<RunKind> kind) const {
    RunConfig c = load();
    if (kind) c.run.kind = *kind;
    if (!solver.empty()) c.run.solver = parse_solver_kind(solver);
    if (gamma) c.run.gamma = *gamma;
    return c;
  }

  RunOptions options() const { return {out.empty() ? default_output_dir() : std::filesystem::path(out), threads}; }
};

void report(const RunResult& r) {
  for (const auto& f : r.files) std::cout << (r.dir / f).string() << '\n';
  if (!r.peaks.empty()) {
    std::cout << "peaks (eV):";
    for (const auto& p : r.peaks) std::cout << ' ' << fmt(p.omega);
    std::cout << '\n';
  }
  if (r.splitting) std::cout << "main splitting (eV): " << fmt(*r.splitting) << '\n';
  if (r.dip_depth) std::cout << "dip depth: " << fmt(*r.dip_depth) << '\n';
  if (r.decay) std::cout << "decay rate (eV): " << fmt(r.decay->rate) << (r.decay->monotone ? "" : " (oscillatory)") << '\n';
  if (r.rabi) {
    if (r.rabi->overdamped) std::cout << "rabi: overdamped\n";
    else std::cout << "rabi frequency (eV): " << fmt(r.rabi->frequency) << '\n';
  }
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw ValidationError("sweep.values", "not a number: '" + item + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Molecular levels coupled to a lossy cavity continuum"};
  app.set_version_flag("--version", cavqed::version());
  app.require_subcommand(1);

  Source src;
  auto* spectrum = app.add_subcommand("spectrum", "Absorption spectrum and eigen table");
  auto* weights = app.add_subcommand("weights", "Absorption plus per-state weight spectra");
  auto* dynamics = app.add_subcommand("dynamics", "Population dynamics from one electronic state");
  auto* run = app.add_subcommand("run", "Run whatever kind the config asks for");
  for (auto* c : {spectrum, weights, dynamics, run}) src.attach(c);
  std::string initial;
  double t_end = 0.0;
  dynamics->add_option("--initial", initial, "Initial electronic state label");
  dynamics->add_option("--t-end", t_end, "Trajectory length, fs")->check(CLI::PositiveNumber);

  auto* sweep = app.add_subcommand("sweep", "One run per parameter value plus summary.csv");
  src.attach(sweep);
  std::string parameter, values, kind;
  sweep->add_option("--parameter", parameter, "lambda_c | kappa | gamma")->required();
  sweep->add_option("--values", values, "Comma separated values")->required();
  sweep->add_option("--kind", kind, "spectrum | weights | dynamics (default: from config)");

  auto* preset = app.add_subcommand("preset", "Inspect presets");
  preset->require_subcommand(1);
  preset->add_subcommand("list", "List preset ids");
  auto* show = preset->add_subcommand("show", "Print a preset as JSON");
  std::string show_id;
  show->add_option("id", show_id)->required();

  auto* grid = app.add_subcommand("grid", "Write the photon grid CSV");
  src.attach(grid, false);
  std::string grid_out;
  grid->add_option("--out", grid_out, "CSV path (default stdout)");

  auto* dump = app.add_subcommand("dump", "Print the fully resolved config");
  src.attach(dump, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return invalid;
  }

  try {
    if (*preset) {
      if (preset->got_subcommand("list")) {
        for (const auto& p : presets()) std::cout << p.id << "  " << p.description << '\n';
      } else {
        std::cout << dump_config(find_preset(show_id).config) << '\n';
      }
      return ok;
    }
    if (*dump) {
      std::cout << dump_config(src.resolve(std::nullopt)) << '\n';
      return ok;
    }
    if (*grid) {
      const PhotonGrid g = make_grid(src.resolve(std::nullopt));
      if (grid_out.empty()) {
        write_grid_csv(g, std::cout);
      } else {
        std::ofstream os(grid_out, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + grid_out);
        write_grid_csv(g, os);
      }
      return ok;
    }
    if (*sweep) {
      RunConfig c = src.resolve(kind.empty() ? std::nullopt : std::optional(parse_run_kind(kind)));
      const auto r = cavqed::sweep(c, parse_sweep_parameter(parameter), parse_values(values), src.options());
      for (const auto& m : r.members) std::cout << m.dir.string() << '\n';
      std::cout << r.summary.string() << '\n';
      return ok;
    }
    std::optional<RunKind> k;
    if (*spectrum) k = RunKind::spectrum;
    if (*weights) k = RunKind::weights;
    if (*dynamics) k = RunKind::dynamics;
    RunConfig c = src.resolve(k);
    if (*dynamics) {
      if (!initial.empty()) c.run.initial = initial;
      if (t_end > 0.0) c.run.t_end_fs = t_end;
    }
    report(cavqed::run(c, src.options()));
    return ok;
  } catch (const ValidationError& e) {
    for (const auto& i : e.issues()) std::cerr << "invalid: " << i.path << ": " << i.message << '\n';
    return invalid;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return solver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return io;
  }
}
