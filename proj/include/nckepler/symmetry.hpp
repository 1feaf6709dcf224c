#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nckepler/kepler.hpp"

namespace nckepler {

// 0-based Levi-Civita via (i-j)(j-k)(k-i)/2
inline int levi_civita(int i, int j, int k) { return (i - j) * (j - k) * (k - i) / 2; }

template <class S> std::array<S, 3> angular_momentum_t(const Vec6<S>& x, const DeformationParams& p) {
  auto y = primed_coords(x, p);
  return {y[1] * y[5] - y[2] * y[4], y[2] * y[3] - y[0] * y[5], y[0] * y[4] - y[1] * y[3]};
}

template <class S> std::array<S, 3> lrl_t(const Vec6<S>& x, const DeformationParams& p) {
  auto y = primed_coords(x, p);
  auto L = angular_momentum_t(x, p);
  S Y = deformed_radius_t(x, p);
  S c = p.m * p.k / Y;
  return {y[4] * L[2] - y[5] * L[1] - c * y[0], y[5] * L[0] - y[3] * L[2] - c * y[1],
          y[3] * L[1] - y[4] * L[0] - c * y[2]};
}

Eigen::Vector3d angular_momentum(const PhasePoint& x, const DeformationParams& p);
Eigen::Vector3d lrl_vector(const PhasePoint& x, const DeformationParams& p);
ScalarField angular_momentum_field(int i, const DeformationParams& p);
ScalarField lrl_field(int i, const DeformationParams& p);

struct StructureMatrices {
  Eigen::Matrix3d F;
  Eigen::Matrix3d D;
  Eigen::Matrix3d E;
  Eigen::Matrix3d Fprime;
};

StructureMatrices structure_matrices(const DeformationParams& p);

double bracket_H_with_L(const PhasePoint& x, const DeformationParams& p, int i);

// corrected: the L'-term factor carries the summed index rho (agrees with the bracket);
// as_printed: the displayed eta subscript.
enum class HAForm { corrected, as_printed };
double bracket_H_with_A(const PhasePoint& x, const DeformationParams& p, int i, HAForm form = HAForm::corrected);

// Reduced forms with D = E = 0 (used when the involution conditions make them vanish).
double bracket_H_with_L_reduced(const PhasePoint& x, const DeformationParams& p, int i);
double bracket_H_with_A_reduced(const PhasePoint& x, const DeformationParams& p, int i, HAForm form = HAForm::corrected);

struct Proposition1Report {
  bool condition1 = false;
  bool condition2 = false;
  bool condition3 = false;
  double condition1_residual = 0.0;
  double condition2_residual = 0.0;
  double condition3_residual = 0.0;
  std::array<double, 3> hl{};  // |{H', L'_i}|
  std::array<double, 3> ha{};  // |{H', A'_i}|
};

Proposition1Report proposition1_check(const DeformationParams& p, const PhasePoint& x, double tol = 1e-10);

// Condition (1) over distinct (i, j, kappa) is linear in x_ij = lambda_ij alpha_ij.
struct Proposition1Feasibility {
  Eigen::Vector3d products;  // x_12, x_13, x_23
  std::array<double, 3> theta{};
  bool feasible = false;
};
Proposition1Feasibility proposition1_feasibility();

// 6x6 table over (L1, L2, L3, A1, A2, A3): entry (a, b) = {e_a, e_b}.
struct PairwiseTable {
  Eigen::Matrix<double, 6, 6> ad;
  Eigen::Matrix<double, 6, 6> closed;
};
PairwiseTable pairwise_bracket_table(const PhasePoint& x, const DeformationParams& p);

enum class EnergySign { minus, plus };

template <class S> std::array<S, 3> scaled_runge_lenz_t(const Vec6<S>& x, const DeformationParams& p, EnergySign tau) {
  using std::sqrt;
  S H = hamiltonian_t(x, p);
  if (std::abs(value(H)) < 1e-12) throw DomainError("H", "energy too close to zero for the scaled Runge-Lenz vector");
  if ((tau == EnergySign::minus) != (value(H) < 0.0)) throw DomainError("H", "energy sign does not match tau");
  S s = sqrt((tau == EnergySign::minus ? -2.0 : 2.0) * p.m * H);
  auto A = lrl_t(x, p);
  return {A[0] / s, A[1] / s, A[2] / s};
}

Eigen::Vector3d scaled_runge_lenz(const PhasePoint& x, const DeformationParams& p, EnergySign tau);
ScalarField scaled_runge_lenz_field(int i, const DeformationParams& p, EnergySign tau);

// Residuals of the so(4)/so(1,3) gating constraints at x (max over all indices).
struct AlgebraConstraints {
  double momentum_residual = 0.0;  // L_h p'_j + L_j p'_h
  double position_residual = 0.0;  // (m/Y) q'_j - sum eps_ijh L_i p'_h
  bool hold(double tol) const { return momentum_residual <= tol && position_residual <= tol; }
};
AlgebraConstraints algebra_constraints(const PhasePoint& x, const DeformationParams& p);

enum class GeneratorKind { so3, so4, so13 };

struct GeneratorSet {
  GeneratorKind kind = GeneratorKind::so3;
  std::array<std::array<ScalarField, 4>, 4> elements;
};

GeneratorSet generator_sets(GeneratorKind kind, const DeformationParams& p);
Eigen::Matrix4d evaluate(const GeneratorSet& g, const PhasePoint& x);

// {e_a, e_b} ~ sum_c C_ab^c e_c by least squares over the points.
struct ClosureFit {
  std::vector<std::vector<std::vector<double>>> C;  // [a][b][c]
  double residual = 0.0;                            // max abs misfit
};
ClosureFit fit_closure(const std::vector<ScalarField>& basis, const std::vector<PhasePoint>& points,
                       const DeformationParams& p);

// max over points and triples of |{e_a,{e_b,e_c}} + cyclic|
double algebra_jacobi_residual(const std::vector<ScalarField>& basis, const std::vector<PhasePoint>& points,
                               const DeformationParams& p);

}  // namespace nckepler
