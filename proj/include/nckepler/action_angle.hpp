#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

#include "nckepler/kepler.hpp"

namespace nckepler {

// Reduced system: angular-rate constants of the lambda matrix plus m, k.
// Spherical chart order: (r, theta, phi, p_r, p_theta, p_phi).
// Action-angle chart order: (J1, J2, J3, phi1, phi2, phi3).
struct ReducedParams {
  double thetadot = 0.0;
  double phidot = 0.0;
  double m = 1.0;
  double k = 1.0;
  double thetadot_ratio = 0.01;  // |thetadot| <= ratio * m

  double M() const { return std::sqrt(1.0 + std::numbers::sqrt2 * phidot / m + phidot * phidot / (2.0 * m)); }
  // Throws InvalidDeformation.
  void validate() const;
};

nlohmann::json to_json(const ReducedParams& rp);
ReducedParams reduced_params_from_json(const nlohmann::json& j);

template <class S> std::array<std::array<S, 3>, 3> lambda_matrix_t(const ReducedParams& rp, const S& phi) {
  using std::cos;
  using std::sin;
  const double c = rp.thetadot * rp.phidot;
  S l12 = -c * sin(2.0 * phi), l13 = std::numbers::sqrt2 * c * cos(phi), l23 = std::numbers::sqrt2 * c * sin(phi);
  S z(0.0);
  return {{{z, l12, l13}, {z - l12, z, l23}, {z - l13, z - l23, z}}};
}

Eigen::Matrix3d lambda_matrix(const ReducedParams& rp, double phi);

// ---- charts ----

template <class S> Vec6<S> cartesian_to_spherical_t(const Vec6<S>& x) {
  using std::atan2;
  using std::cos;
  using std::sin;
  using std::sqrt;
  S rho = sqrt(x[0] * x[0] + x[1] * x[1]);
  S r = sqrt(rho * rho + x[2] * x[2]);
  S th = atan2(rho, x[2]);
  S ph = atan2(x[1], x[0]);
  if (value(ph) < 0.0) ph = ph + 2.0 * std::numbers::pi;
  S st = sin(th), ct = cos(th), sp = sin(ph), cp = cos(ph);
  S pr = (x[3] * cp + x[4] * sp) * st + x[5] * ct;
  S pth = r * ((x[3] * cp + x[4] * sp) * ct - x[5] * st);
  S pph = r * st * (x[4] * cp - x[3] * sp);
  return {r, th, ph, pr, pth, pph};
}

template <class S> Vec6<S> spherical_to_cartesian_t(const Vec6<S>& s) {
  using std::cos;
  using std::sin;
  S st = sin(s[1]), ct = cos(s[1]), sp = sin(s[2]), cp = cos(s[2]);
  // unit vectors e_r, e_theta, e_phi
  S a = s[3], b = s[4] / s[0], c = s[5] / (s[0] * st);
  return {s[0] * st * cp, s[0] * st * sp, s[0] * ct, a * st * cp + b * ct * cp - c * sp, a * st * sp + b * ct * sp + c * cp,
          a * ct - b * st};
}

PhasePoint to_spherical(const PhasePoint& x);  // cartesian -> spherical; throws DomainError on the z axis
PhasePoint to_cartesian(const PhasePoint& s);  // spherical -> cartesian
ChartMap spherical_chart_map();                 // from cartesian to spherical

// Canonical bivector and form. Cartesian/spherical: momenta are the trailing
// block; action-angle/Delaunay: actions are the leading block.
BivectorField canonical_bivector(Chart c);
TwoForm canonical_form(Chart c);

// ---- reduced Hamiltonian ----

struct ReducedConditions {
  double quadratic = 0.0;  // sum lambda_ij lambda_ik q^j q^k
  bool quadratic_holds = false;
  bool alpha_zero = false;
};
ReducedConditions reduced_hamiltonian_conditions_check(const PhasePoint& x, const ReducedParams& rp,
                                                       const Eigen::Matrix3d& alpha = Eigen::Matrix3d::Zero());

// Cartesian reduced Hamiltonian and its perturbation term, lambda taken at the azimuth of q.
ScalarField reduced_cartesian_hamiltonian(const ReducedParams& rp);
ScalarField varpi_field(const ReducedParams& rp);

template <class S> S spherical_hamiltonian_t(const Vec6<S>& s, const ReducedParams& rp) {
  using std::sin;
  if (!(value(s[0]) > 0.0)) throw DomainError("r", "spherical Hamiltonian requires r > 0");
  S st = sin(s[1]);
  if (value(st) == 0.0) throw DomainError("theta", "spherical Hamiltonian requires sin(theta) != 0");
  const double M = rp.M();
  S g = 1.0 + (rp.thetadot / rp.m) * sin(2.0 * s[2]);
  S r2 = s[0] * s[0];
  return (s[3] * s[3] + M * M * s[4] * s[4] / r2 + g * s[5] * s[5] / (r2 * st * st)) / (2.0 * rp.m) - rp.k / s[0];
}

double spherical_hamiltonian(const PhasePoint& s, const ReducedParams& rp);
ScalarField spherical_hamiltonian_field(const ReducedParams& rp);
VectorField spherical_vector_field(const ReducedParams& rp);
// Hamiltonian vector field components as displayed (for discrepancy reporting).
Vec6<double> spherical_vector_field_as_printed(const PhasePoint& s, const ReducedParams& rp);

template <class S> S d_phi_t(const Vec6<S>& s, const ReducedParams& rp) {
  using std::sin;
  using std::sqrt;
  return sqrt(1.0 + (rp.thetadot / rp.m) * sin(2.0 * s[2])) * s[5];
}

template <class S> S l_tilde_t(const Vec6<S>& s, const ReducedParams& rp) {
  using std::sin;
  using std::sqrt;
  const double M = rp.M();
  S D = d_phi_t(s, rp);
  S st = sin(s[1]);
  return sqrt(M * M * s[4] * s[4] + D * D / (st * st));
}

struct FirstIntegrals {
  double M = 1.0;
  double D_phi = 0.0;
  double L_tilde = 0.0;
  std::optional<double> inclination;  // xi with D_phi = L_tilde cos xi, when |D_phi| <= L_tilde
};
FirstIntegrals first_integrals(const PhasePoint& s, const ReducedParams& rp);
ScalarField d_phi_field(const ReducedParams& rp);
ScalarField l_tilde_field(const ReducedParams& rp);

// ---- actions and angles ----

// Throws DomainError("E") for E >= 0 and DomainError("L") for L_tilde < |D_phi| or D_phi = 0.
Eigen::Vector3d actions_from_integrals(double E, double L_tilde, double D_phi, const ReducedParams& rp);

template <class S> S energy_from_actions_t(const Vec6<S>& J, const ReducedParams& rp) {
  S s = J[0] + rp.M() * J[1] + J[2];
  if (!(value(s) > 0.0)) throw DomainError("J", "J1 + M J2 + J3 must be positive");
  return -rp.m * rp.k * rp.k / (2.0 * s * s);
}

double energy_from_actions(const Eigen::Vector3d& J, const ReducedParams& rp);

struct ActionsFromState {
  Eigen::Vector3d J;       // J3 identified with D_phi
  double j3_exact = 0.0;   // D_phi (1 + (thetadot/m) sin 2phi)^(-1/2)
  bool regime_ok = false;  // |thetadot sin 2phi| <= ratio * m
  double energy = 0.0;
};
ActionsFromState actions_from_state(const PhasePoint& s, const ReducedParams& rp);

// Each angle formula evaluated on the principal arcsin branch. A formula whose
// arcsin argument (or radicand) leaves its domain yields no value and a reason.
struct AngleEvaluation {
  std::array<std::optional<double>, 3> values;
  std::array<std::string, 3> failures;
  bool outbound = true;  // p_r >= 0; the inbound half-orbit is the other branch
  double G = 0.0;        // G-tilde radicand
};
AngleEvaluation evaluate_angles(const PhasePoint& s, const Eigen::Vector3d& J, const ReducedParams& rp);
// Throws DomainError naming the failing formula ("phi1", "phi2", "phi3").
Eigen::Vector3d angles_from_state(const PhasePoint& s, const Eigen::Vector3d& J, const ReducedParams& rp);
// Spherical state -> (J, angles); throws as angles_from_state.
PhasePoint to_action_angle(const PhasePoint& s, const ReducedParams& rp);

struct ReducedStructures {
  BivectorField P;
  TwoForm omega;
  VectorField X;
  ScalarField H;
};
ReducedStructures reduced_structures(const ReducedParams& rp);

Eigen::Vector3d frequencies(const Eigen::Vector3d& J, const ReducedParams& rp);
// dH'/dJ1 expressed through the energy.
double isochronous_derivative(double E, const ReducedParams& rp);

// |(1 + (thetadot/m) sin 2phi)^(-1/2) - 1|
double maclaurin_deviation(const ReducedParams& rp, double phi);

// (1/(2 pi M)) loop integral of (L^2 - D^2/sin^2 theta)^(1/2) by adaptive Gauss-Kronrod.
double j_theta_quadrature(double L_tilde, double D_phi, const ReducedParams& rp);

// Reduced flow in the spherical chart with D_phi, L_tilde and H' monitors.
Trajectory integrate_reduced(const PhasePoint& s0, const ReducedParams& rp, double dt, int n_steps,
                             Method method = Method::rk4);

}  // namespace nckepler
