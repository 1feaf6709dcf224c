#include "nckepler/report.hpp"

#include <algorithm>
#include <cmath>

namespace nckepler {

void VerificationReport::check(const std::string& identity, const std::string& anchor, const PhasePoint& x,
                               double lhs, double rhs, double tol) {
  const double r = std::abs(lhs - rhs);
  entries_.push_back({identity, anchor, x, lhs, rhs, r, tol, r <= tol});
}

void VerificationReport::check_residual(const std::string& identity, const std::string& anchor, const PhasePoint& x,
                                        double residual, double tol) {
  entries_.push_back({identity, anchor, x, residual, 0.0, residual, tol, residual <= tol});
}

void VerificationReport::discrepancy(const std::string& identity, const std::string& anchor, const PhasePoint& x,
                                     double displayed, double oracle, const std::string& note) {
  const double r = std::abs(displayed - oracle);
  auto it = std::find_if(discrepancies_.begin(), discrepancies_.end(),
                         [&](const Discrepancy& d) { return d.identity == identity; });
  if (it == discrepancies_.end())
    discrepancies_.push_back({identity, anchor, x, displayed, oracle, r, note});
  else if (r > it->residual || std::isnan(r))
    *it = {identity, anchor, x, displayed, oracle, r, note};
}

void VerificationReport::note(const std::string& text) {
  if (std::find(notes_.begin(), notes_.end(), text) == notes_.end()) notes_.push_back(text);
}

void VerificationReport::merge(const VerificationReport& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
  for (const auto& d : other.discrepancies_) discrepancy(d.identity, d.anchor, d.point, d.displayed, d.oracle, d.note);
  for (const auto& n : other.notes_) note(n);
}

std::size_t VerificationReport::passed() const {
  return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(), [](const auto& e) { return e.pass; }));
}

double VerificationReport::worst(const std::string& prefix) const {
  double w = 0.0;
  for (const auto& e : entries_)
    if (e.identity.rfind(prefix, 0) == 0) w = std::max(w, std::isnan(e.residual) ? INFINITY : e.residual);
  return w;
}

bool VerificationReport::all_pass(const std::string& prefix) const {
  bool any = false;
  for (const auto& e : entries_)
    if (e.identity.rfind(prefix, 0) == 0) {
      any = true;
      if (!e.pass) return false;
    }
  return any;
}

nlohmann::json point_json(const PhasePoint& x) {
  return {{"chart", to_string(x.chart)}, {"coords", x.x}};
}

namespace {
// JSON has no NaN/inf; encode them as strings.
nlohmann::json num(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}
}  // namespace

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["suite"] = suite_;
  j["summary"] = {{"entries", entries_.size()},
                  {"passed", passed()},
                  {"failed", failed()},
                  {"discrepancies", discrepancies_.size()}};
  auto& es = j["entries"] = nlohmann::json::array();
  for (const auto& e : entries_)
    es.push_back({{"identity", e.identity},
                  {"anchor", e.anchor},
                  {"point", point_json(e.point)},
                  {"lhs", num(e.lhs)},
                  {"rhs", num(e.rhs)},
                  {"residual", num(e.residual)},
                  {"tolerance", e.tolerance},
                  {"pass", e.pass}});
  auto& ds = j["discrepancies"] = nlohmann::json::array();
  for (const auto& d : discrepancies_)
    ds.push_back({{"identity", d.identity},
                  {"anchor", d.anchor},
                  {"point", point_json(d.point)},
                  {"displayed", num(d.displayed)},
                  {"oracle", num(d.oracle)},
                  {"residual", num(d.residual)},
                  {"note", d.note}});
  j["notes"] = notes_;
  return j;
}

}  // namespace nckepler
