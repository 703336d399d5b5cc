#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cavqed/discretize.hpp"
#include "cavqed/mapping.hpp"
#include "cavqed/model.hpp"

namespace cavqed {

enum class RunKind { spectrum, weights, dynamics };
enum class SolverKind { structured, dense, resolvent };

std::string to_string(RunKind k);
std::string to_string(SolverKind k);
RunKind parse_run_kind(const std::string& s);      // throws ValidationError
SolverKind parse_solver_kind(const std::string& s);

/// Optional resampling of the photon grid before assembly.
struct TransformSpec {
  std::string mapping = "arctan";  // identity | linear | arctan | tabulated
  std::optional<double> center;    // arctan; defaults to omega_c
  double width = 0.0;              // arctan focus width, eV
  double scale = 1.0;              // linear
  double offset = 0.0;             // linear
  std::vector<std::pair<double, double>> knots;  // tabulated (Omega, omega)
  std::size_t modes = 0;           // target mode count

  friend bool operator==(const TransformSpec&, const TransformSpec&) = default;
};

struct RunSpec {
  RunKind kind = RunKind::spectrum;
  double gamma = 0.001;                     // eV
  Vec3 polarization{1.0, 0.0, 0.0};
  SolverKind solver = SolverKind::structured;
  std::size_t spectrum_points = 3000;
  std::optional<std::array<double, 2>> spectrum_window;  // default: photon window
  std::optional<std::string> initial;       // dynamics; default: first level
  std::optional<double> t_end_fs;           // default: min(5 tau, 0.4 T_rec)
  std::size_t t_points = 2001;
  std::optional<double> dip;                // frequency for the dip-depth summary, eV
  std::optional<TransformSpec> transform;

  friend bool operator==(const RunSpec&, const RunSpec&) = default;
};

struct RunConfig {
  std::string id = "custom";  // preset id when derived from one
  ElectronicLevels levels;
  CavityModel cavity;
  RunSpec run;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses a JSON document. A "base" field names a preset whose parameters are
/// merged under the document (JSON merge patch); a run manifest is accepted
/// and its embedded config used. Schema violations and invalid physics are
/// reported together as a ValidationError with field paths.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical, fully resolved JSON (no "base"), stable key order. Parsing the
/// result reproduces the config exactly.
std::string dump_config(const RunConfig& config, int indent = 2);

/// Photon grid for the config, including the optional transformation.
PhotonGrid make_grid(const RunConfig& config);

/// The mapping a transform spec describes; cavity supplies the arctan default center.
std::unique_ptr<FrequencyMapping> make_mapping(const TransformSpec& spec, const CavityModel& cavity);

/// Frequencies for the spectrum output.
std::vector<double> spectrum_grid(const RunConfig& config);

}  // namespace cavqed
