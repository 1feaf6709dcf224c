#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nckepler/fields.hpp"

namespace nckepler {

// One asserted identity at one point: pass iff residual <= tolerance.
struct ReportEntry {
  std::string identity;
  std::string anchor;
  PhasePoint point;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// A displayed formula compared against its oracle; recorded, never asserted.
struct Discrepancy {
  std::string identity;
  std::string anchor;
  PhasePoint point;
  double displayed = 0.0;
  double oracle = 0.0;
  double residual = 0.0;
  std::string note;
};

class VerificationReport {
 public:
  explicit VerificationReport(std::string suite = {}) : suite_(std::move(suite)) {}

  const std::string& suite() const { return suite_; }
  const std::vector<ReportEntry>& entries() const { return entries_; }
  const std::vector<Discrepancy>& discrepancies() const { return discrepancies_; }
  const std::vector<std::string>& notes() const { return notes_; }

  // residual = |lhs - rhs|
  void check(const std::string& identity, const std::string& anchor, const PhasePoint& x, double lhs, double rhs,
             double tol);
  // lhs = residual, rhs = 0
  void check_residual(const std::string& identity, const std::string& anchor, const PhasePoint& x, double residual,
                      double tol);
  // Keeps only the worst-case record per identity.
  void discrepancy(const std::string& identity, const std::string& anchor, const PhasePoint& x, double displayed,
                   double oracle, const std::string& note = {});
  void note(const std::string& text);
  void merge(const VerificationReport& other);

  std::size_t passed() const;
  std::size_t failed() const { return entries_.size() - passed(); }
  bool all_pass() const { return failed() == 0; }
  // Largest residual among entries whose identity starts with `prefix`.
  double worst(const std::string& prefix) const;
  bool all_pass(const std::string& prefix) const;

  nlohmann::json to_json() const;

 private:
  std::string suite_;
  std::vector<ReportEntry> entries_;
  std::vector<Discrepancy> discrepancies_;
  std::vector<std::string> notes_;
};

nlohmann::json point_json(const PhasePoint& x);

}  // namespace nckepler
