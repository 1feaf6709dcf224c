#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <utility>

#include <Eigen/Dense>
#include <json.hpp>

#include "nckepler/diffgeo.hpp"

namespace nckepler {

// alpha: position-position deformation; lambda: momentum-momentum deformation.
struct DeformationParams {
  Eigen::Matrix3d alpha = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d lambda = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d gamma = Eigen::Matrix3d::Zero();
  double m = 1.0;
  double k = 1.0;

  // Throws InvalidDeformation on non-antisymmetric alpha/lambda, m or k <= 0, or a vanishing theta.
  void validate() const;

  static DeformationParams commutative(double m = 1.0, double k = 1.0);
};

// gamma produced by the canonical bracket of the primed coordinates: -1/4 alpha lambda.
Eigen::Matrix3d derived_gamma(const Eigen::Matrix3d& alpha, const Eigen::Matrix3d& lambda);

DeformationParams make_params(const Eigen::Matrix3d& alpha, const Eigen::Matrix3d& lambda, double m, double k);

// Antisymmetric alpha, lambda with entries uniform in [-scale, scale]; m, k in [0.5, 2] unless fixed.
DeformationParams random_params(std::mt19937_64& rng, double scale, bool random_mk = true);

struct BracketTable {
  Eigen::Matrix3d qq;
  Eigen::Matrix3d qp;
  Eigen::Matrix3d pp;
};

// theta_nu = 1 + 1/4 sum_mu lambda_{mu nu} alpha_{mu nu}, mu = 1..3
std::array<double, 3> theta_weights(const DeformationParams& p);

BracketTable beta_bracket_table(const DeformationParams& p);

// Constant NC pair in (q, p) ordering: omega_{p q} = theta, P^{p q} = 1/theta.
std::pair<TwoForm, BivectorField> nc_symplectic_structures(const DeformationParams& p);
BivectorField nc_bivector(const DeformationParams& p);
TwoForm nc_form(const DeformationParams& p);
Mat6<double> nc_bivector_matrix(const DeformationParams& p);
Mat6<double> nc_form_matrix(const DeformationParams& p);

// {f,g}_nc = sum_nu theta_nu^{-1} (df/dp_nu dg/dq^nu - df/dq^nu dg/dp_nu)
double nc_bracket(const ScalarField& f, const ScalarField& g, const PhasePoint& x, const DeformationParams& p);

// Standard bracket with theta = 1: {f,g} = sum df/dq dg/dp - df/dp dg/dq.
double canonical_bracket(const ScalarField& f, const ScalarField& g, const PhasePoint& x);

template <class S> Vec6<S> primed_coords(const Vec6<S>& x, const DeformationParams& p) {
  Vec6<S> y = x;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      y[i] = y[i] - 0.5 * p.alpha(i, j) * x[3 + j];
      y[3 + i] = y[3 + i] + 0.5 * p.lambda(i, j) * x[j];
    }
  return y;
}

PhasePoint transform_coordinates(const PhasePoint& x, const DeformationParams& p);
// Inverse of the linear primed map; throws InvalidDeformation when singular.
PhasePoint inverse_transform(const PhasePoint& xp, const DeformationParams& p);
Matrix6 transform_matrix(const DeformationParams& p);

// Coordinate observables on the cartesian chart.
ScalarField q_field(int i);
ScalarField p_field(int i);
ScalarField qprime_field(int i, const DeformationParams& p);
ScalarField pprime_field(int i, const DeformationParams& p);

nlohmann::json to_json(const DeformationParams& p);
// Validates antisymmetry; "gamma" optional (defaults to derived_gamma).
DeformationParams params_from_json(const nlohmann::json& j);

}  // namespace nckepler
