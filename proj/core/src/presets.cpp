#include "cavqed/presets.hpp"

#include "cavqed/error.hpp"

namespace cavqed {
namespace {

ElectronicLevels benzene() { return {{{"e1", 6.93, {0.96, 0.0, 0.0}}}}; }

// The 6.58 eV state is nearly dark but produces the Fano dip.
ElectronicLevels toluene() {
  return {{{"dark", 6.58, {0.01, 0.0, 0.0}},
           {"e1", 6.64, {0.76, 0.0, 0.0}},
           {"e2", 6.71, {0.11, 0.0, 0.0}},
           {"e3", 6.78, {0.08, 0.0, 0.0}}}};
}

CavityModel cavity(double omega_c, double lambda, double kappa, double lo, double hi, double spacing) {
  CavityModel c;
  c.omega_c = omega_c;
  c.lambda_c = {lambda, 0.0, 0.0};
  c.kappa = kappa;
  c.omega_min = lo;
  c.omega_max = hi;
  c.spacing = spacing;
  return c;
}

Preset make(std::string id, std::string what, ElectronicLevels levels, CavityModel cav, RunKind kind) {
  RunConfig c;
  c.id = id;
  c.levels = std::move(levels);
  c.cavity = cav;
  c.run.kind = kind;
  c.run.gamma = 0.001;
  return {std::move(id), std::move(what), std::move(c)};
}

std::vector<Preset> build() {
  std::vector<Preset> out;
  const char* roman[] = {"i", "ii", "iii", "iv", "v"};

  // 5000 modes at 1e-4 eV, centred on the transition.
  const double b_lambda[] = {0.001, 0.002, 0.008, 0.008, 0.008};
  const double b_kappa[] = {0.001, 0.001, 0.001, 0.004, 0.008};
  for (int i = 0; i < 5; ++i) {
    auto p = make(std::string("fig1d-") + roman[i], "benzene absorption",
                  benzene(), cavity(6.93, b_lambda[i], b_kappa[i], 6.93 - 0.24995, 6.93 + 0.24995, 1e-4),
                  RunKind::spectrum);
    out.push_back(std::move(p));
  }

  const double t_lambda[] = {0.01, 0.10, 0.43, 0.43, 0.43};
  const double t_kappa[] = {0.01, 0.01, 0.01, 0.08, 0.32};
  auto toluene_wide = [&](std::string id, double lambda, double kappa) {
    auto p = make(std::move(id), "toluene absorption, 4.85-8.45 eV modes", toluene(),
                  cavity(6.64, lambda, kappa, 4.85, 8.45, 1e-4), RunKind::spectrum);
    p.config.run.spectrum_window = std::array<double, 2>{6.45, 6.85};
    p.config.run.dip = 6.58;
    return p;
  };
  auto toluene_narrow = [&](std::string id, double lambda, double kappa) {
    auto p = make(std::move(id), "toluene dynamics from e1, 6.35-6.95 eV modes", toluene(),
                  cavity(6.64, lambda, kappa, 6.35, 6.95, 1e-3), RunKind::dynamics);
    p.config.run.spectrum_window = std::array<double, 2>{6.45, 6.85};
    p.config.run.initial = "e1";
    return p;
  };
  for (int i = 0; i < 5; ++i) {
    out.push_back(toluene_wide(std::string("fig2d-") + roman[i], t_lambda[i], t_kappa[i]));
    if (i == 3) out.push_back(toluene_wide("fig2d-iv-alt", 0.43, 0.10));
  }
  for (int i = 0; i < 5; ++i) {
    out.push_back(toluene_narrow(std::string("fig3-") + roman[i], t_lambda[i], t_kappa[i]));
    if (i == 3) out.push_back(toluene_narrow("fig3-iv-alt", 0.43, 0.10));
  }

  out.push_back(make("benzene-free", "benzene without cavity coupling", benzene(),
                     cavity(6.93, 0.0, 0.001, 6.93 - 0.24995, 6.93 + 0.24995, 1e-4), RunKind::spectrum));
  auto tf = toluene_wide("toluene-free", 0.0, 0.01);
  tf.description = "toluene without cavity coupling";
  tf.config.run.spectrum_window = std::array<double, 2>{6.4, 7.0};
  out.push_back(std::move(tf));

  for (auto& p : out) p.config.id = p.id;
  return out;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build();
  return all;
}

const Preset& find_preset(const std::string& id) {
  for (const auto& p : presets())
    if (p.id == id) return p;
  throw ValidationError("preset", "unknown preset '" + id + "' (see `preset list`)");
}

}  // namespace cavqed
