#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "nckepler/action_angle.hpp"
#include "nckepler/report.hpp"

namespace nckepler {

enum class Suite { brackets, algebra, action_angle, hierarchy, master };

std::string to_string(Suite s);  // "brackets", "algebra", "action-angle", "hierarchy", "master"
std::optional<Suite> suite_from_string(const std::string& name);

struct Tolerances {
  double exact = 1e-12;           // bracket-relation patterns and exact algebra
  double eom = 1e-10;             // closed-form Hamilton equations
  double bracket = 1e-9;          // closed-form bracket tables, hierarchy and master identities
  double transport = 1e-9;        // chart-transport consistency
  double closure = 1e-8;          // least-squares algebra closure
  double drift = 1e-8;            // relative drift of H and of the recursion eigenvalues
  double integral_drift = 1e-7;   // relative drift of L_i and A_i
  double roundtrip = 1e-12;       // energy/action round trips
  double kolmogorov = 1e-14;      // frequency degeneracy and Hessian determinant
  double quadrature = 1e-6;       // J_theta loop integral
  double pairing = 1e-11;         // iota_X omega + dH on the reduced system

  void validate() const;
};

struct SuiteConfig {
  std::uint64_t seed = 1;
  int samples = 100;
  int param_sets = 10;
  double deformation_scale = 0.3;
  ReducedParams reduced = default_reduced();
  int h_max = 3;
  int i_max = 2;
  int l_max = 2;
  double dt = 1e-3;
  int steps = 10000;
  bool negative_control = false;
  Tolerances tol;

  static ReducedParams default_reduced();
  void validate() const;
};

VerificationReport run_suite(Suite s, const SuiteConfig& c);

// Individual drivers (run_suite dispatches to these).
VerificationReport brackets_suite(const SuiteConfig& c);
VerificationReport algebra_suite(const SuiteConfig& c);
VerificationReport action_angle_suite(const SuiteConfig& c);
VerificationReport hierarchy_suite(const SuiteConfig& c);
VerificationReport master_suite(const SuiteConfig& c);

}  // namespace nckepler
