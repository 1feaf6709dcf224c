#include "nckepler/diffgeo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace nckepler {

Vector6 to_eigen(const Vec6<double>& v) {
  Vector6 r;
  for (int i = 0; i < 6; ++i) r(i) = v[i];
  return r;
}

Matrix6 to_eigen(const Mat6<double>& m) {
  Matrix6 r;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) r(i, j) = m[i][j];
  return r;
}

Vec6<double> to_array(const Vector6& v) {
  Vec6<double> r;
  for (int i = 0; i < 6; ++i) r[i] = v(i);
  return r;
}

Mat6<double> to_array(const Matrix6& m) {
  Mat6<double> r;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) r[i][j] = m(i, j);
  return r;
}

double Trivector::max_abs() const {
  double m = 0.0;
  for (double v : c) m = std::max(m, std::abs(v));
  return m;
}

Vector6 gradient(const ScalarField& f, const PhasePoint& x) { return to_eigen(grad(f, x.x)); }

Matrix6 hessian(const ScalarField& f, const PhasePoint& x) {
  Matrix6 H;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      // inner tangent along i, outer tangent along j
      Vec6<D2> y;
      for (int k = 0; k < 6; ++k) y[k] = D2(D1(x.x[k], k == i ? 1.0 : 0.0), D1(k == j ? 1.0 : 0.0, 0.0));
      H(i, j) = f(y).d.d;
    }
  }
  return H;
}

VectorField hamiltonian_vector_field(const BivectorField& P, const ScalarField& f) {
  return VectorField([P, f](const auto& x) {
    using S = scalar_of<decltype(x)>;
    if constexpr (!can_differentiate<S>) {
      throw DerivativeOrderExhausted();
      return zero_vec<S>();
    } else {
      return hamiltonian_vector_at(P(x), grad(f, x));
    }
  });
}

namespace {
template <class S> S bracket_at(const BivectorField& P, const ScalarField& f, const ScalarField& g, const Vec6<S>& x) {
  auto Pm = P(x);
  auto df = grad(f, x);
  auto dg = grad(g, x);
  S r(0.0);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) r += Pm[i][j] * df[i] * dg[j];
  return r;
}
}  // namespace

double poisson_bracket(const BivectorField& P, const ScalarField& f, const ScalarField& g, const PhasePoint& x) {
  return bracket_at(P, f, g, x.x);
}

ScalarField bracket_field(const BivectorField& P, const ScalarField& f, const ScalarField& g) {
  return ScalarField([P, f, g](const auto& x) {
    using S = scalar_of<decltype(x)>;
    if constexpr (!can_differentiate<S>) {
      throw DerivativeOrderExhausted();
      return S(0.0);
    } else {
      return bracket_at(P, f, g, x);
    }
  });
}

Vector6 lie_bracket(const VectorField& X, const VectorField& Y, const PhasePoint& x) {
  return to_eigen(lie_bracket_at(X, Y, x.x));
}

VectorField lie_bracket_field(const VectorField& X, const VectorField& Y) {
  return VectorField([X, Y](const auto& x) {
    using S = scalar_of<decltype(x)>;
    if constexpr (!can_differentiate<S>) {
      throw DerivativeOrderExhausted();
      return zero_vec<S>();
    } else {
      return lie_bracket_at(X, Y, x);
    }
  });
}

double lie_derivative(const VectorField& Z, const ScalarField& f, const PhasePoint& x) {
  auto z = Z(x.x);
  auto df = grad(f, x.x);
  double r = 0.0;
  for (int c = 0; c < 6; ++c) r += z[c] * df[c];
  return r;
}

Vector6 lie_derivative(const VectorField& Z, const VectorField& Y, const PhasePoint& x) {
  return lie_bracket(Z, Y, x);
}

Matrix6 lie_derivative(const VectorField& Z, const BivectorField& P, const PhasePoint& x) {
  auto z = Z(x.x);
  auto Jz = jac(Z, x.x);
  auto Pm = P(x.x);
  auto dP = dmat(P, x.x);
  Matrix6 r = Matrix6::Zero();
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      for (int c = 0; c < 6; ++c)
        r(a, b) += z[c] * dP[c][a][b] - Pm[c][b] * Jz[a][c] - Pm[a][c] * Jz[b][c];
  return r;
}

Matrix6 lie_derivative(const VectorField& Z, const TwoForm& w, const PhasePoint& x) {
  auto z = Z(x.x);
  auto Jz = jac(Z, x.x);
  auto wm = w(x.x);
  auto dw = dmat(w, x.x);
  Matrix6 r = Matrix6::Zero();
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      for (int c = 0; c < 6; ++c)
        r(a, b) += z[c] * dw[c][a][b] + wm[c][b] * Jz[c][a] + wm[a][c] * Jz[c][b];
  return r;
}

Matrix6 lie_derivative(const VectorField& Z, const MixedTensor& T, const PhasePoint& x) {
  auto z = Z(x.x);
  auto Jz = jac(Z, x.x);
  auto Tm = T(x.x);
  auto dT = dmat(T, x.x);
  Matrix6 r = Matrix6::Zero();
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      for (int c = 0; c < 6; ++c)
        r(a, b) += z[c] * dT[c][a][b] - Tm[c][b] * Jz[a][c] + Tm[a][c] * Jz[c][b];
  return r;
}

Trivector schouten_bracket(const BivectorField& P, const BivectorField& Q, const PhasePoint& x) {
  auto Pm = P(x.x);
  auto Qm = Q(x.x);
  auto dP = dmat(P, x.x);
  auto dQ = dmat(Q, x.x);
  auto term = [&](int i, int j, int k) {
    double s = 0.0;
    for (int l = 0; l < 6; ++l) s += Pm[l][i] * dQ[l][j][k] + Qm[l][i] * dP[l][j][k];
    return s;
  };
  Trivector cyc;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k) cyc(i, j, k) = term(i, j, k) + term(j, k, i) + term(k, i, j);
  Trivector out;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k)
        out(i, j, k) = (cyc(i, j, k) + cyc(j, k, i) + cyc(k, i, j) - cyc(j, i, k) - cyc(i, k, j) - cyc(k, j, i)) / 6.0;
  return out;
}

VectorField apply(const MixedTensor& T, const VectorField& X) {
  return VectorField([T, X](const auto& x) { return matvec(T(x), X(x)); });
}

Vector6 nijenhuis_torsion(const MixedTensor& T, const VectorField& X, const VectorField& Y, const PhasePoint& x) {
  VectorField TX = apply(T, X);
  VectorField TY = apply(T, Y);
  Matrix6 Tm = to_eigen(T(x.x));
  return lie_bracket(TX, TY, x) - Tm * lie_bracket(TX, Y, x) - Tm * lie_bracket(X, TY, x) +
         Tm * Tm * lie_bracket(X, Y, x);
}

Vector6 interior_product(const VectorField& X, const TwoForm& w, const PhasePoint& x) {
  auto Xv = X(x.x);
  auto wm = w(x.x);
  Vector6 r = Vector6::Zero();
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) r(j) += Xv[i] * wm[i][j];
  return r;
}

// ---- transport ----

ScalarField transport(const ChartMap& m, const ScalarField& f) {
  return ScalarField([fw = m.forward, f](const auto& x) { return f(fw(x)); });
}

VectorField transport(const ChartMap& m, const VectorField& X) {
  return VectorField([fw = m.forward, inv = m.inverse, X](const auto& x) {
    using S = scalar_of<decltype(x)>;
    if constexpr (!can_differentiate<S>) {
      throw DerivativeOrderExhausted();
      return zero_vec<S>();
    } else {
      auto y = fw(x);
      return matvec(jac(inv, y), X(y));
    }
  });
}

BivectorField transport(const ChartMap& m, const BivectorField& P) {
  return BivectorField([fw = m.forward, inv = m.inverse, P](const auto& x) {
    using S = scalar_of<decltype(x)>;
    if constexpr (!can_differentiate<S>) {
      throw DerivativeOrderExhausted();
      return zero_mat<S>();
    } else {
      auto y = fw(x);
      auto Ki = jac(inv, y);
      return matmul(matmul(Ki, P(y)), transpose(Ki));
    }
  });
}

TwoForm transport(const ChartMap& m, const TwoForm& w) {
  return TwoForm([fw = m.forward, w](const auto& x) {
    using S = scalar_of<decltype(x)>;
    if constexpr (!can_differentiate<S>) {
      throw DerivativeOrderExhausted();
      return zero_mat<S>();
    } else {
      auto K = jac(fw, x);
      return matmul(matmul(transpose(K), w(fw(x))), K);
    }
  });
}

MixedTensor transport(const ChartMap& m, const MixedTensor& T) {
  return MixedTensor([fw = m.forward, inv = m.inverse, T](const auto& x) {
    using S = scalar_of<decltype(x)>;
    if constexpr (!can_differentiate<S>) {
      throw DerivativeOrderExhausted();
      return zero_mat<S>();
    } else {
      auto y = fw(x);
      return matmul(matmul(jac(inv, y), T(y)), jac(fw, x));
    }
  });
}

std::vector<PhasePoint> sample_box(const Box& box, Chart chart, int n, std::uint64_t seed,
                                   const std::function<bool(const PhasePoint&)>& accept) {
  std::mt19937_64 rng(seed);
  std::vector<PhasePoint> out;
  out.reserve(static_cast<std::size_t>(std::max(n, 0)));
  long attempts = 0;
  const long max_attempts = 1000L * std::max(n, 1);
  while (static_cast<int>(out.size()) < n) {
    if (++attempts > max_attempts) throw std::runtime_error("sample_box: acceptance region too small");
    PhasePoint p;
    p.chart = chart;
    for (int i = 0; i < 6; ++i) {
      std::uniform_real_distribution<double> u(box.lo[i], box.hi[i]);
      p.x[i] = u(rng);
    }
    if (!accept || accept(p)) out.push_back(p);
  }
  return out;
}

}  // namespace nckepler
