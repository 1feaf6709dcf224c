#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <optional>

#include "nckepler/bihamiltonian.hpp"
#include "nckepler/config.hpp"
#include "nckepler/symmetry.hpp"

namespace nckepler::cli {

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples, h_max, i_max, l_max;
  std::string out;
  bool negative_control = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "scenario JSON")->check(CLI::ExistingFile);
  sub->add_option("--seed", c.seed, "sampling seed");
  sub->add_option("--samples", c.samples, "sample points per check")->check(CLI::PositiveNumber);
  sub->add_option("--out", c.out, "output directory");
  sub->add_option("--h-max", c.h_max, "hierarchy level cap")->check(CLI::NonNegativeNumber);
  sub->add_option("--i-max", c.i_max, "master-symmetry index cap")->check(CLI::NonNegativeNumber);
  sub->add_option("--l-max", c.l_max, "ledger index cap")->check(CLI::NonNegativeNumber);
  sub->add_flag("--negative-control", c.negative_control, "flip one sign of P_1 in the (J, phi) chart");
}

ScenarioConfig resolve(const Common& c) {
  ScenarioConfig s = c.config.empty() ? ScenarioConfig{} : load_scenario(c.config);
  if (c.seed) s.verify.seed = *c.seed;
  if (c.samples) s.verify.samples = *c.samples;
  if (c.h_max) s.verify.h_max = *c.h_max;
  if (c.i_max) s.verify.i_max = *c.i_max;
  if (c.l_max) s.verify.l_max = *c.l_max;
  if (c.negative_control) s.verify.negative_control = true;
  if (!c.out.empty()) s.out_dir = c.out;
  try {
    s.verify.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return s;
}

Chart parse_chart(const std::string& name) {
  try {
    return chart_from_string(name);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  os << text;
}

int run_suites(const ScenarioConfig& cfg, const std::vector<Suite>& suites, std::ostream& out) {
  if (suites.empty()) throw ConfigError("nothing to verify: empty suite list");
  struct Result {
    VerificationReport report;
    double seconds = 0.0;
  };
  std::vector<std::future<Result>> jobs;
  for (auto s : suites)
    jobs.push_back(std::async(std::launch::async, [s, &cfg] {
      const auto t0 = std::chrono::steady_clock::now();
      auto r = run_suite(s, cfg.verify);
      return Result{std::move(r), std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
    }));
  bool all = true;
  for (std::size_t n = 0; n < jobs.size(); ++n) {
    const auto res = jobs[n].get();
    const auto& r = res.report;
    write_file(std::filesystem::path(cfg.out_dir) / (to_string(suites[n]) + ".json"), r.to_json().dump(2) + "\n");
    out << std::left << std::setw(13) << to_string(suites[n]) << (r.all_pass() ? "PASS " : "FAIL ") << r.passed()
        << "/" << r.entries().size() << " checks, " << "discrepancies recorded: " << r.discrepancies().size() << ", "
        << std::fixed << std::setprecision(2) << res.seconds << " s\n";
    out.unsetf(std::ios::fixed);
    all = all && r.all_pass();
  }
  return all ? 0 : 1;
}

int simulate(const ScenarioConfig& cfg, std::ostream& out) {
  const auto& x0 = cfg.initial_state;
  Trajectory tr;
  std::vector<double> scale;
  std::vector<double> bound;
  if (x0.chart == Chart::cartesian) {
    const auto& p = cfg.deformation;
    std::vector<Monitor> mon{{"H", hamiltonian_field(p)}};
    for (int i = 0; i < 3; ++i) mon.push_back({"L" + std::to_string(i + 1), angular_momentum_field(i, p)});
    for (int i = 0; i < 3; ++i) mon.push_back({"A" + std::to_string(i + 1), lrl_field(i, p)});
    tr = integrate(x0, p, cfg.verify.dt, cfg.verify.steps, cfg.method, mon);
    const bool commutative = p.alpha.isZero(0.0) && p.lambda.isZero(0.0);
    const double h0 = std::abs(hamiltonian(x0, p));
    const double l0 = angular_momentum(x0, p).norm();
    scale = {h0, l0, l0, l0, p.m * p.k, p.m * p.k, p.m * p.k};
    const double inf = std::numeric_limits<double>::infinity();
    const double li = commutative ? cfg.verify.tol.integral_drift : inf;
    bound = {cfg.drift_bound, li, li, li, li, li, li};
  } else {
    tr = integrate_reduced(x0, cfg.reduced, cfg.verify.dt, cfg.verify.steps, cfg.method);
    for (double v : tr.monitors.front()) scale.push_back(std::abs(v));
    bound.assign(tr.monitor_names.size(), cfg.drift_bound);
  }
  {
    std::filesystem::create_directories(cfg.out_dir);
    std::ofstream os(std::filesystem::path(cfg.out_dir) / "trajectory.csv");
    if (!os) throw std::runtime_error("cannot write trajectory.csv");
    write_csv(tr, os);
  }
  nlohmann::json j;
  j["chart"] = to_string(x0.chart);
  j["steps"] = static_cast<int>(tr.states.size()) - 1;
  j["truncated"] = tr.truncated;
  j["termination_reason"] = tr.termination_reason;
  bool ok = !tr.truncated;
  const auto& r0 = tr.monitors.front();
  for (std::size_t k = 0; k < tr.monitor_names.size(); ++k) {
    double worst = 0.0;
    for (const auto& row : tr.monitors) worst = std::max(worst, std::abs(row[k] - r0[k]));
    const double rel = scale[k] > 0.0 ? worst / scale[k] : worst;
    nlohmann::json m{{"relative_drift", rel}};
    if (std::isfinite(bound[k])) {
      m["bound"] = bound[k];
      m["within_bound"] = rel <= bound[k];
      ok = ok && rel <= bound[k];
    }
    j["monitors"][tr.monitor_names[k]] = m;
  }
  j["pass"] = ok;
  write_file(std::filesystem::path(cfg.out_dir) / "simulate_summary.json", j.dump(2) + "\n");
  out << j.dump(2) << "\n";
  return ok ? 0 : 1;
}

// Returns the converted point and, when an inverse exists, the round-trip point.
std::pair<PhasePoint, std::optional<PhasePoint>> convert(const PhasePoint& x, Chart to, const ReducedParams& rp) {
  validate(x, rp.M());
  if (x.chart == to) return {x, x};
  switch (x.chart) {
    case Chart::cartesian:
      if (to == Chart::spherical) {
        auto s = to_spherical(x);
        return {s, to_cartesian(s)};
      }
      return {convert(to_spherical(x), to, rp).first, std::nullopt};
    case Chart::spherical:
      if (to == Chart::cartesian) {
        auto c = to_cartesian(x);
        return {c, to_spherical(c)};
      }
      if (to == Chart::action_angle) return {to_action_angle(x, rp), std::nullopt};
      return {delaunay_from_action_angle(to_action_angle(x, rp), rp), std::nullopt};
    case Chart::action_angle:
      if (to == Chart::delaunay) {
        auto d = delaunay_from_action_angle(x, rp);
        return {d, action_angle_from_delaunay(d, rp)};
      }
      break;
    case Chart::delaunay:
      if (to == Chart::action_angle) {
        auto a = action_angle_from_delaunay(x, rp);
        return {a, delaunay_from_action_angle(a, rp)};
      }
      break;
  }
  throw ConfigError("conversion " + to_string(x.chart) + " -> " + to_string(to) + " is not defined");
}

int chart(const ScenarioConfig& cfg, const std::string& state, const std::string& from, const std::string& to,
          std::ostream& out) {
  nlohmann::json js;
  try {
    js = nlohmann::json::parse(state);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed state JSON: ") + e.what());
  }
  if (js.is_object()) js = js.at("x");
  std::vector<double> v;
  try {
    v = js.get<std::vector<double>>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("state must be an array of 6 numbers");
  }
  if (v.size() != 6) throw ConfigError("state must have 6 entries");
  PhasePoint x;
  x.chart = parse_chart(from);
  for (int i = 0; i < 6; ++i) x.x[i] = v[static_cast<std::size_t>(i)];
  std::pair<PhasePoint, std::optional<PhasePoint>> r;
  try {
    r = convert(x, parse_chart(to), cfg.reduced);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("domain error: ") + e.what());
  }
  nlohmann::json j;
  j["chart"] = to_string(r.first.chart);
  j["x"] = std::vector<double>(r.first.x.begin(), r.first.x.end());
  if (r.second) {
    double res = 0.0;
    for (int i = 0; i < 6; ++i) res = std::max(res, std::abs(r.second->x[i] - x.x[i]));
    j["roundtrip_residual"] = res;
  } else {
    j["roundtrip_residual"] = nullptr;
  }
  out << std::setprecision(17) << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Noncommutative Kepler dynamics, symmetry and bi-Hamiltonian verification"};
  app.require_subcommand(1);
  Common c;
  auto* sim = app.add_subcommand("simulate", "integrate the initial state and report monitor drift");
  auto* ver = app.add_subcommand("verify", "run verification suites (default: all configured)");
  auto* cha = app.add_subcommand("chart", "convert a state between charts");
  auto* hie = app.add_subcommand("hierarchy", "bi-Hamiltonian hierarchy suite");
  auto* mas = app.add_subcommand("master", "master-symmetry ledger");
  for (auto* s : {sim, ver, cha, hie, mas}) add_common(s, c);
  std::vector<std::string> suite_names;
  ver->add_option("suites", suite_names, "brackets, algebra, action-angle, hierarchy, master");
  std::string state, from = "cartesian", to = "spherical";
  cha->add_option("--state", state, "JSON array of 6 coordinates")->required();
  cha->add_option("--from", from, "source chart");
  cha->add_option("--to", to, "target chart");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto cfg = resolve(c);
    if (*sim) return simulate(cfg, out);
    if (*cha) return chart(cfg, state, from, to, out);
    if (*hie) return run_suites(cfg, {Suite::hierarchy}, out);
    if (*mas) return run_suites(cfg, {Suite::master}, out);
    std::vector<Suite> suites = cfg.suites;
    if (!suite_names.empty()) {
      suites.clear();
      for (const auto& n : suite_names) {
        auto s = suite_from_string(n);
        if (!s) throw ConfigError("unknown suite: " + n);
        suites.push_back(*s);
      }
    }
    return run_suites(cfg, suites, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "runtime failure: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace nckepler::cli
