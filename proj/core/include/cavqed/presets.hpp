#pragma once

#include <string>
#include <vector>

#include "cavqed/config.hpp"

namespace cavqed {

struct Preset {
  std::string id;
  std::string description;
  RunConfig config;
};

/// Benzene (fig1d-*), toluene on the wide grid (fig2d-*), toluene dynamics on
/// the narrow grid (fig3-*), and the two uncoupled references.
const std::vector<Preset>& presets();

/// Throws ValidationError (path "preset") for an unknown id.
const Preset& find_preset(const std::string& id);

}  // namespace cavqed
