#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "nckepler/fields.hpp"

namespace nckepler {

using Vector6 = Eigen::Matrix<double, 6, 1>;
using Matrix6 = Eigen::Matrix<double, 6, 6>;

Vector6 to_eigen(const Vec6<double>& v);
Matrix6 to_eigen(const Mat6<double>& m);
Vec6<double> to_array(const Vector6& v);
Mat6<double> to_array(const Matrix6& m);

// Antisymmetric 3-index array (Schouten brackets).
struct Trivector {
  std::array<double, 216> c{};
  double& operator()(int i, int j, int k) { return c[static_cast<std::size_t>(36 * i + 6 * j + k)]; }
  double operator()(int i, int j, int k) const { return c[static_cast<std::size_t>(36 * i + 6 * j + k)]; }
  double max_abs() const;
};

// ---- generic derivative kernels (S = double or D1) ----

template <class S> Vec6<S> grad(const ScalarField& f, const Vec6<S>& x) {
  Vec6<S> g;
  for (int i = 0; i < 6; ++i) g[i] = f(seed(x, i)).d;
  return g;
}

// J[a][c] = d_c X^a
template <class S> Mat6<S> jac(const VectorField& X, const Vec6<S>& x) {
  Mat6<S> J;
  for (int c = 0; c < 6; ++c) {
    auto col = X(seed(x, c));
    for (int a = 0; a < 6; ++a) J[a][c] = col[a].d;
  }
  return J;
}

// D[c][a][b] = d_c M^{ab}
template <class Kind, class S>
std::array<Mat6<S>, 6> dmat(const Field<Kind>& M, const Vec6<S>& x) {
  std::array<Mat6<S>, 6> D;
  for (int c = 0; c < 6; ++c) {
    auto m = M(seed(x, c));
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) D[c][a][b] = m[a][b].d;
  }
  return D;
}

template <class S> Vec6<S> lie_bracket_at(const VectorField& X, const VectorField& Y, const Vec6<S>& x) {
  auto Xv = X(x);
  auto Yv = Y(x);
  auto JX = jac(X, x);
  auto JY = jac(Y, x);
  auto r = zero_vec<S>();
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) r[i] += Xv[j] * JY[i][j] - Yv[j] * JX[i][j];
  return r;
}

// X_f^j = sum_i d_i f P^{ij}
template <class S> Vec6<S> hamiltonian_vector_at(const Mat6<S>& P, const Vec6<S>& df) {
  auto r = zero_vec<S>();
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) r[j] += df[i] * P[i][j];
  return r;
}

// ---- public API (double-level results) ----

Vector6 gradient(const ScalarField& f, const PhasePoint& x);
Matrix6 hessian(const ScalarField& f, const PhasePoint& x);

VectorField hamiltonian_vector_field(const BivectorField& P, const ScalarField& f);

// {f,g} = P^{ij} d_i f d_j g
double poisson_bracket(const BivectorField& P, const ScalarField& f, const ScalarField& g, const PhasePoint& x);
ScalarField bracket_field(const BivectorField& P, const ScalarField& f, const ScalarField& g);

Vector6 lie_bracket(const VectorField& X, const VectorField& Y, const PhasePoint& x);
VectorField lie_bracket_field(const VectorField& X, const VectorField& Y);

double lie_derivative(const VectorField& Z, const ScalarField& f, const PhasePoint& x);
Vector6 lie_derivative(const VectorField& Z, const VectorField& Y, const PhasePoint& x);
Matrix6 lie_derivative(const VectorField& Z, const BivectorField& P, const PhasePoint& x);
Matrix6 lie_derivative(const VectorField& Z, const TwoForm& w, const PhasePoint& x);
Matrix6 lie_derivative(const VectorField& Z, const MixedTensor& T, const PhasePoint& x);

Trivector schouten_bracket(const BivectorField& P, const BivectorField& Q, const PhasePoint& x);

// N_T(X,Y) = [TX,TY] - T[TX,Y] - T[X,TY] + T^2[X,Y]
Vector6 nijenhuis_torsion(const MixedTensor& T, const VectorField& X, const VectorField& Y, const PhasePoint& x);
// (T X)^a = T^a_b X^b as a field
VectorField apply(const MixedTensor& T, const VectorField& X);

// (iota_X w)_j = X^i w_ij
Vector6 interior_product(const VectorField& X, const TwoForm& w, const PhasePoint& x);

// ---- chart transport ----

// forward: coordinates of the source chart -> coordinates of the target chart;
// inverse: the reverse map. Both must be closed-form (differentiable to D2).
struct ChartMap {
  Chart from = Chart::action_angle;
  Chart to = Chart::delaunay;
  VectorField forward;
  VectorField inverse;
};

// Express a target-chart field in the source chart (exact Jacobians).
ScalarField transport(const ChartMap& m, const ScalarField& f);
VectorField transport(const ChartMap& m, const VectorField& X);
BivectorField transport(const ChartMap& m, const BivectorField& P);
TwoForm transport(const ChartMap& m, const TwoForm& w);
MixedTensor transport(const ChartMap& m, const MixedTensor& T);

// ---- sampling ----

struct Box {
  std::array<double, 6> lo{};
  std::array<double, 6> hi{};
};

// Uniform draws from `box`, rejecting points where `accept` is false. Deterministic in `seed`.
std::vector<PhasePoint> sample_box(const Box& box, Chart chart, int n, std::uint64_t seed,
                                   const std::function<bool(const PhasePoint&)>& accept = {});

}  // namespace nckepler
