#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nckepler/kepler.hpp"
#include "nckepler/suites.hpp"

namespace nckepler {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Single JSON document; every field optional with the defaults below.
//   deformation: {alpha, lambda, gamma?, mass, k}
//   reduced: {thetadot, phidot, mass, k, thetadot_ratio}
//   initial_state: {chart: "cartesian" | "spherical", x: [6]}
//   integrator: {method: "rk4" | "implicit_midpoint", dt, n_steps, drift_bound}
//   verification: {seed, samples, param_sets, deformation_scale, h_max, i_max, l_max, suites: [...],
//                  negative_control, tolerances: {exact, eom, bracket, transport, closure, drift, integral_drift,
//                  roundtrip, kolmogorov, quadrature, pairing}}
//   output: {dir}
struct ScenarioConfig {
  DeformationParams deformation = DeformationParams::commutative();
  ReducedParams reduced = SuiteConfig::default_reduced();
  PhasePoint initial_state{{1, 0, 0, 0, 1, 0}, Chart::cartesian};
  Method method = Method::rk4;
  double drift_bound = 1e-8;
  SuiteConfig verify;  // dt and steps are shared with the integrator
  std::vector<Suite> suites{Suite::brackets, Suite::algebra, Suite::action_angle, Suite::hierarchy, Suite::master};
  std::string out_dir = "out";
};

ScenarioConfig scenario_from_json(const nlohmann::json& j);
ScenarioConfig load_scenario(const std::string& path);

}  // namespace nckepler
