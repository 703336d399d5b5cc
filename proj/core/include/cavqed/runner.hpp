#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cavqed/config.hpp"
#include "cavqed/dynamics.hpp"
#include "cavqed/features.hpp"

namespace cavqed {

std::string version();

/// $CAVQED_OUT if set, else ./cavqed-out.
std::filesystem::path default_output_dir();

struct RunOptions {
  std::filesystem::path out;
  unsigned threads = 0;
};

/// What a run wrote plus the derived features that go into sweep summaries.
struct RunResult {
  std::filesystem::path dir;
  std::vector<std::string> files;
  std::size_t photon_modes = 0;
  std::vector<Peak> peaks;
  std::optional<double> splitting;
  std::optional<double> dip_depth;
  std::optional<DecayFit> decay;
  std::optional<RabiEstimate> rabi;
};

/// Solves the config and writes its outputs and manifest.json into opts.out.
/// Dynamics runs must end before half the recurrence time.
RunResult run(const RunConfig& config, const RunOptions& opts);

enum class SweepParameter { lambda_c, kappa, gamma };

std::string to_string(SweepParameter p);
SweepParameter parse_sweep_parameter(const std::string& s);

/// Copy of the config with one parameter replaced. lambda_c keeps the
/// polarization direction of the base cavity (x if it was zero).
RunConfig with_parameter(RunConfig config, SweepParameter p, double value);

struct SweepResult {
  std::vector<RunResult> members;
  std::filesystem::path summary;
};

/// One run per value in out/member_NNN, then summary.csv and a sweep
/// manifest. Members run concurrently. A gamma sweep shares one eigensolve.
SweepResult sweep(const RunConfig& base, SweepParameter p, const std::vector<double>& values,
                  const RunOptions& opts);

}  // namespace cavqed
