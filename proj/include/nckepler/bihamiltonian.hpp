#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nckepler/action_angle.hpp"
#include "nckepler/report.hpp"

namespace nckepler {

// Delaunay chart order: (I1, I2, I3, phi1, phi2, phi3).

// Weights (1, M, 1) of the Delaunay-chart structures.
std::array<double, 3> n_tilde(const ReducedParams& rp);

// I = A J and phi_D = B phi_J.
Eigen::Matrix3d action_map(double M);
Eigen::Matrix3d angle_map(double M);

PhasePoint delaunay_from_action_angle(const PhasePoint& s, const ReducedParams& rp);
// Throws DomainError("M") when M = 0.
PhasePoint action_angle_from_delaunay(const PhasePoint& d, const ReducedParams& rp);
ChartMap delaunay_chart_map(const ReducedParams& rp);  // action_angle -> delaunay

struct OrbitalElements {
  double a = 1.0;   // semi-major axis
  double e = 0.0;   // eccentricity
  double xi = 0.0;  // inclination
  double n = 1.0;   // mean motion
  double t0 = 0.0;  // pericenter epoch
  void validate() const;
};

// Angles: phi1 = node, phi2 = periapsis argument, phi3 = n (t - t0).
PhasePoint classical_delaunay(const OrbitalElements& el, double m, double k, double t = 0.0, double node = 0.0,
                              double periapsis = 0.0);

// (I1, I2, I3, phi1, phi2, phi3) -> (I1, I2, H', phi1, phi2, k sqrt(m) (-2H')^(-3/2) phi3); both charts tagged delaunay.
ChartMap energy_time_map(const ReducedParams& rp);

// Reduced structures in the Delaunay chart.
ScalarField delaunay_hamiltonian(const ReducedParams& rp);
BivectorField delaunay_bivector(const ReducedParams& rp);
TwoForm delaunay_form(const ReducedParams& rp);
VectorField delaunay_vector_field(const ReducedParams& rp);

struct HierarchyLevel {
  int h = 0;
  ScalarField F;        // -m k^2 / ((2 + h) I3^(2 + h))
  BivectorField P;      // sum N^(h+1) I^h dI ^ dphi
  TwoForm omega;        // inverse of P in the orientation of omega'
  MixedTensor T;        // P o P'^-1 = diag(N^h I^h) on both blocks
};
// Throws std::invalid_argument for h < 0.
HierarchyLevel hierarchy_level(int h, const ReducedParams& rp);

// diag(I1^h, M^(h+1) I2^h, I3^h)
Eigen::Matrix3d lambda_h(int h, const PhasePoint& d, const ReducedParams& rp);
double lambda_bracket(const ScalarField& f, const ScalarField& g, const PhasePoint& d, int h, const ReducedParams& rp);

// Eigenvalues N^h I^h of T_h, read from the diagonal.
Eigen::Vector3d recursion_eigenvalues(int h, const PhasePoint& d, const ReducedParams& rp);

// Hierarchy level pushed to the (J, phi) chart through the exact chart map.
struct ActionAngleLevel {
  BivectorField P;
  TwoForm omega;
  MixedTensor T;
  ScalarField F;
};
ActionAngleLevel hierarchy_in_action_angle(int h, const ReducedParams& rp);

// Displayed (J, phi) component tables assembled as full tensors. The form table
// lists (phi, J) index pairs; it is read so that h = 0 reproduces omega'.
struct DisplayedTables {
  Mat6<double> P;
  Mat6<double> omega;
  Mat6<double> T;          // R_h on the action block, S_h on the angle block (last R^3_3 assignment)
  double R33_first = 0.0;  // the earlier R^3_3 assignment
};
DisplayedTables displayed_action_angle_tables(int h, const PhasePoint& s, const ReducedParams& rp);

struct TableComparison {
  std::string name;
  double displayed = 0.0;
  double transported = 0.0;
};
std::vector<TableComparison> compare_action_angle_tables(int h, const PhasePoint& s, const ReducedParams& rp);

// Bound-orbit Delaunay points: 0 < |I1| <= I2 <= I3, angles in [0, 2 pi).
std::vector<PhasePoint> sample_delaunay(int n, std::uint64_t seed, const ReducedParams& rp);

struct LevelOptions {
  double tolerance = 1e-9;
  bool negative_control = false;  // flip the (J1, phi2) pair of the transported P-tilde_1
};

// Asserted: (a) [P_h, P'] = 0, (b) iota_X omega_h + dF_h = 0, (c) [P_h, P_h'] = 0 for h' <= h,
// (d) Nijenhuis torsion of T_h on the coordinate frame, (e) X(eigenvalues of T_h) = 0, plus
// omega_h P_h = -I and {F_h, .}_{omega_h} = X_H'. Run in the Delaunay chart and, on the
// transported tensors, in the (J, phi) chart. Displayed (J, phi) tables are discrepancies.
VerificationReport verify_level(int h, const std::vector<PhasePoint>& delaunay_points, const ReducedParams& rp,
                                const LevelOptions& opt = {});

// Largest relative drift of the T_h eigenvalues (h = 1..h_max) along the reduced spherical flow.
struct EigenvalueDrift {
  double drift = 0.0;
  bool truncated = false;
  int steps = 0;
};
EigenvalueDrift eigenvalue_drift(const PhasePoint& spherical0, const ReducedParams& rp, int h_max, double dt,
                                 int n_steps);

}  // namespace nckepler
