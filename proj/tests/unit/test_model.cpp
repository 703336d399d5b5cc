#include <catch_amalgamated.hpp>

#include "cavqed/model.hpp"

using namespace cavqed;

namespace {

CavityModel good_cavity() {
  CavityModel c;
  c.omega_c = 6.93;
  c.lambda_c = {0.008, 0.0, 0.0};
  c.kappa = 0.001;
  c.omega_min = 6.93 - 0.24995;
  c.omega_max = 6.93 + 0.24995;
  c.spacing = 1e-4;
  return c;
}

bool has_path(const std::vector<Issue>& issues, const std::string& path) {
  for (const auto& i : issues)
    if (i.path == path) return true;
  return false;
}

}  // namespace

TEST_CASE("benzene inputs validate") {
  ElectronicLevels lv{{{"e1", 6.93, {0.96, 0.0, 0.0}}}};
  CHECK(check_inputs(lv, good_cavity()).empty());
  CHECK(good_cavity().mode_count() == 5000);
}

TEST_CASE("level problems are all reported with paths") {
  ElectronicLevels lv{{{"a", 6.7, {}}, {"a", -1.0, {}}, {"", 6.8, {0.0, NAN, 0.0}}}};
  const auto issues = check_levels(lv);
  CHECK(has_path(issues, "levels[1].energy"));
  CHECK(has_path(issues, "levels[1].label"));
  CHECK(has_path(issues, "levels[2].label"));
  CHECK(has_path(issues, "levels[2].dipole"));
  CHECK(check_levels({}).size() == 1);
}

TEST_CASE("cavity guards") {
  auto c = good_cavity();
  c.spacing = 2e-4;  // > kappa/10
  CHECK(has_path(check_cavity(c), "cavity.spacing"));
  c = good_cavity();
  c.kappa = 0.0;
  CHECK(has_path(check_cavity(c), "cavity.kappa"));
  c = good_cavity();
  c.omega_c = 8.0;
  CHECK(has_path(check_cavity(c), "cavity.window"));
  c = good_cavity();
  c.max_modes = 100;
  CHECK(has_path(check_cavity(c), "cavity.window"));
  c = good_cavity();
  c.lambda_c = {0.0, 0.0, 0.0};  // uncoupled reference is allowed
  CHECK(check_cavity(c).empty());
}

TEST_CASE("validate_inputs throws with every issue") {
  ElectronicLevels lv{{{"e1", -6.0, {}}}};
  auto c = good_cavity();
  c.kappa = -1.0;
  try {
    validate_inputs(lv, c);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.issues().size() >= 2);
  }
}

TEST_CASE("index_of") {
  ElectronicLevels lv{{{"e1", 6.6, {}}, {"e2", 6.7, {}}}};
  CHECK(lv.index_of("e2") == 1);
  CHECK_THROWS_AS(lv.index_of("e9"), ValidationError);
}
