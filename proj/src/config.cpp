#include "nckepler/config.hpp"

#include <fstream>

namespace nckepler {

namespace {

template <class T> void read(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void require_object(const nlohmann::json& j, const char* key) {
  if (j.contains(key) && !j.at(key).is_object()) throw ConfigError(std::string(key) + " must be an object");
}

}  // namespace

ScenarioConfig scenario_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const char* k : {"deformation", "reduced", "initial_state", "integrator", "verification", "output"})
    require_object(j, k);
  ScenarioConfig c;
  try {
    if (j.contains("deformation")) c.deformation = params_from_json(j.at("deformation"));
    if (j.contains("reduced")) c.reduced = reduced_params_from_json(j.at("reduced"));
    c.verify.reduced = c.reduced;
    if (j.contains("initial_state")) {
      const auto& s = j.at("initial_state");
      c.initial_state.chart = chart_from_string(s.value("chart", std::string("cartesian")));
      if (c.initial_state.chart != Chart::cartesian && c.initial_state.chart != Chart::spherical)
        throw ConfigError("initial_state chart must be cartesian or spherical");
      const auto x = s.at("x").get<std::vector<double>>();
      if (x.size() != 6) throw ConfigError("initial_state.x must have 6 entries");
      for (int i = 0; i < 6; ++i) c.initial_state.x[i] = x[static_cast<std::size_t>(i)];
      validate(c.initial_state, c.reduced.M());
    }
    if (j.contains("integrator")) {
      const auto& g = j.at("integrator");
      const auto m = g.value("method", std::string("rk4"));
      if (m == "rk4")
        c.method = Method::rk4;
      else if (m == "implicit_midpoint")
        c.method = Method::implicit_midpoint;
      else
        throw ConfigError("unknown integrator method: " + m);
      read(g, "dt", c.verify.dt);
      read(g, "n_steps", c.verify.steps);
      read(g, "drift_bound", c.drift_bound);
      if (!(c.drift_bound > 0.0)) throw ConfigError("drift_bound must be positive");
    }
    if (j.contains("verification")) {
      const auto& v = j.at("verification");
      require_object(v, "tolerances");
      read(v, "seed", c.verify.seed);
      read(v, "samples", c.verify.samples);
      read(v, "param_sets", c.verify.param_sets);
      read(v, "deformation_scale", c.verify.deformation_scale);
      read(v, "h_max", c.verify.h_max);
      read(v, "i_max", c.verify.i_max);
      read(v, "l_max", c.verify.l_max);
      read(v, "negative_control", c.verify.negative_control);
      if (v.contains("suites")) {
        c.suites.clear();
        for (const auto& s : v.at("suites")) {
          auto su = suite_from_string(s.get<std::string>());
          if (!su) throw ConfigError("unknown suite: " + s.get<std::string>());
          c.suites.push_back(*su);
        }
      }
      if (v.contains("tolerances")) {
        const auto& t = v.at("tolerances");
        auto& T = c.verify.tol;
        read(t, "exact", T.exact);
        read(t, "eom", T.eom);
        read(t, "bracket", T.bracket);
        read(t, "transport", T.transport);
        read(t, "closure", T.closure);
        read(t, "drift", T.drift);
        read(t, "integral_drift", T.integral_drift);
        read(t, "roundtrip", T.roundtrip);
        read(t, "kolmogorov", T.kolmogorov);
        read(t, "quadrature", T.quadrature);
        read(t, "pairing", T.pairing);
      }
    }
    if (j.contains("output")) read(j.at("output"), "dir", c.out_dir);
    c.verify.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return c;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config: " + path);
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  return scenario_from_json(j);
}

}  // namespace nckepler
