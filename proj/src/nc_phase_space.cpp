#include "nckepler/nc_phase_space.hpp"

#include <cmath>
#include <string>

namespace nckepler {

namespace {
bool antisymmetric(const Eigen::Matrix3d& a) {
  const double tol = 1e-14 * std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a + a.transpose()).cwiseAbs().maxCoeff() <= tol;
}
}  // namespace

void DeformationParams::validate() const {
  if (!antisymmetric(alpha)) throw InvalidDeformation("alpha must be antisymmetric");
  if (!antisymmetric(lambda)) throw InvalidDeformation("lambda must be antisymmetric");
  if (!(m > 0.0) || !std::isfinite(m)) throw InvalidDeformation("mass must be positive");
  if (!(k > 0.0) || !std::isfinite(k)) throw InvalidDeformation("coupling k must be positive");
  auto th = theta_weights(*this);
  for (int nu = 0; nu < 3; ++nu)
    if (th[nu] == 0.0) throw InvalidDeformation("theta_" + std::to_string(nu + 1) + " vanishes");
}

DeformationParams DeformationParams::commutative(double m, double k) {
  DeformationParams p;
  p.m = m;
  p.k = k;
  p.validate();
  return p;
}

Eigen::Matrix3d derived_gamma(const Eigen::Matrix3d& alpha, const Eigen::Matrix3d& lambda) {
  return -0.25 * alpha * lambda;
}

DeformationParams make_params(const Eigen::Matrix3d& alpha, const Eigen::Matrix3d& lambda, double m, double k) {
  DeformationParams p;
  p.alpha = alpha;
  p.lambda = lambda;
  p.gamma = derived_gamma(alpha, lambda);
  p.m = m;
  p.k = k;
  p.validate();
  return p;
}

DeformationParams random_params(std::mt19937_64& rng, double scale, bool random_mk) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::uniform_real_distribution<double> mk(0.5, 2.0);
  Eigen::Matrix3d a = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d l = Eigen::Matrix3d::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      a(i, j) = u(rng);
      a(j, i) = -a(i, j);
      l(i, j) = u(rng);
      l(j, i) = -l(i, j);
    }
  double m = 1.0, k = 1.0;
  if (random_mk) {
    m = mk(rng);
    k = mk(rng);
  }
  return make_params(a, l, m, k);
}

std::array<double, 3> theta_weights(const DeformationParams& p) {
  std::array<double, 3> th{};
  for (int nu = 0; nu < 3; ++nu) {
    th[nu] = 1.0;
    for (int mu = 0; mu < 3; ++mu) th[nu] += 0.25 * p.lambda(mu, nu) * p.alpha(mu, nu);
  }
  return th;
}

BracketTable beta_bracket_table(const DeformationParams& p) {
  return {p.alpha, Eigen::Matrix3d::Identity() + p.gamma, p.lambda};
}

Mat6<double> nc_bivector_matrix(const DeformationParams& p) {
  auto th = theta_weights(p);
  auto P = zero_mat<double>();
  for (int nu = 0; nu < 3; ++nu) {
    P[3 + nu][nu] = 1.0 / th[nu];
    P[nu][3 + nu] = -1.0 / th[nu];
  }
  return P;
}

Mat6<double> nc_form_matrix(const DeformationParams& p) {
  auto th = theta_weights(p);
  auto w = zero_mat<double>();
  for (int nu = 0; nu < 3; ++nu) {
    w[3 + nu][nu] = th[nu];
    w[nu][3 + nu] = -th[nu];
  }
  return w;
}

BivectorField nc_bivector(const DeformationParams& p) { return constant_bivector(nc_bivector_matrix(p)); }
TwoForm nc_form(const DeformationParams& p) { return constant_two_form(nc_form_matrix(p)); }

std::pair<TwoForm, BivectorField> nc_symplectic_structures(const DeformationParams& p) {
  p.validate();
  return {nc_form(p), nc_bivector(p)};
}

double nc_bracket(const ScalarField& f, const ScalarField& g, const PhasePoint& x, const DeformationParams& p) {
  auto th = theta_weights(p);
  auto df = grad(f, x.x);
  auto dg = grad(g, x.x);
  double r = 0.0;
  for (int nu = 0; nu < 3; ++nu) r += (df[3 + nu] * dg[nu] - df[nu] * dg[3 + nu]) / th[nu];
  return r;
}

double canonical_bracket(const ScalarField& f, const ScalarField& g, const PhasePoint& x) {
  auto df = grad(f, x.x);
  auto dg = grad(g, x.x);
  double r = 0.0;
  for (int nu = 0; nu < 3; ++nu) r += df[nu] * dg[3 + nu] - df[3 + nu] * dg[nu];
  return r;
}

Matrix6 transform_matrix(const DeformationParams& p) {
  Matrix6 T = Matrix6::Identity();
  T.block<3, 3>(0, 3) = -0.5 * p.alpha;
  T.block<3, 3>(3, 0) = 0.5 * p.lambda;
  return T;
}

PhasePoint transform_coordinates(const PhasePoint& x, const DeformationParams& p) {
  return {primed_coords(x.x, p), x.chart};
}

PhasePoint inverse_transform(const PhasePoint& xp, const DeformationParams& p) {
  Eigen::FullPivLU<Matrix6> lu(transform_matrix(p));
  if (!lu.isInvertible()) throw InvalidDeformation("primed-coordinate map is singular");
  return {to_array(Vector6(lu.solve(to_eigen(xp.x)))), xp.chart};
}

ScalarField q_field(int i) { return coordinate_function(i); }
ScalarField p_field(int i) { return coordinate_function(3 + i); }

ScalarField qprime_field(int i, const DeformationParams& p) {
  return ScalarField([i, p](const auto& x) { return primed_coords(x, p)[i]; });
}

ScalarField pprime_field(int i, const DeformationParams& p) {
  return ScalarField([i, p](const auto& x) { return primed_coords(x, p)[3 + i]; });
}

namespace {
nlohmann::json mat_json(const Eigen::Matrix3d& a) {
  nlohmann::json j = nlohmann::json::array();
  for (int i = 0; i < 3; ++i) j.push_back({a(i, 0), a(i, 1), a(i, 2)});
  return j;
}

Eigen::Matrix3d mat_from_json(const nlohmann::json& j, const char* name) {
  if (!j.is_array() || j.size() != 3) throw InvalidDeformation(std::string(name) + " must be a 3x3 array");
  Eigen::Matrix3d a;
  for (int i = 0; i < 3; ++i) {
    const auto& row = j.at(i);
    if (!row.is_array() || row.size() != 3) throw InvalidDeformation(std::string(name) + " must be a 3x3 array");
    for (int c = 0; c < 3; ++c) a(i, c) = row.at(c).get<double>();
  }
  return a;
}
}  // namespace

nlohmann::json to_json(const DeformationParams& p) {
  return {{"alpha", mat_json(p.alpha)}, {"lambda", mat_json(p.lambda)}, {"gamma", mat_json(p.gamma)},
          {"mass", p.m}, {"k", p.k}};
}

DeformationParams params_from_json(const nlohmann::json& j) {
  DeformationParams p;
  p.alpha = j.contains("alpha") ? mat_from_json(j.at("alpha"), "alpha") : Eigen::Matrix3d::Zero();
  p.lambda = j.contains("lambda") ? mat_from_json(j.at("lambda"), "lambda") : Eigen::Matrix3d::Zero();
  p.gamma = j.contains("gamma") ? mat_from_json(j.at("gamma"), "gamma") : derived_gamma(p.alpha, p.lambda);
  p.m = j.value("mass", 1.0);
  p.k = j.value("k", 1.0);
  p.validate();
  return p;
}

}  // namespace nckepler
