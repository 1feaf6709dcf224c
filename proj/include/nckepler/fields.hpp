#pragma once

#include <array>
#include <functional>
#include <string>
#include <type_traits>

#include "nckepler/dual.hpp"
#include "nckepler/errors.hpp"

namespace nckepler {

enum class Chart { cartesian, spherical, action_angle, delaunay };

std::string to_string(Chart c);
Chart chart_from_string(const std::string& s);  // throws std::invalid_argument

template <class S> using Vec6 = std::array<S, 6>;
template <class S> using Mat6 = std::array<Vec6<S>, 6>;

template <class V> using scalar_of = typename std::decay_t<V>::value_type;

struct PhasePoint {
  Vec6<double> x{};
  Chart chart = Chart::cartesian;

  double operator[](int i) const { return x[static_cast<std::size_t>(i)]; }
};

// Finite coordinates and chart-specific domain. `M` is the reduced-system
// constant used by the action-angle denominator.
void validate(const PhasePoint& p, double M = 1.0);

struct ScalarKind { template <class S> using out = S; };
struct VectorKind { template <class S> using out = Vec6<S>; };
struct BivectorKind { template <class S> using out = Mat6<S>; };
struct TwoFormKind { template <class S> using out = Mat6<S>; };
struct MixedKind { template <class S> using out = Mat6<S>; };

// Closed-form field evaluable at double, D1 and D2 coordinates. Built from a
// generic callable taking `const Vec6<S>&`.
template <class Kind>
class Field {
 public:
  template <class S> using Out = typename Kind::template out<S>;

  Field() = default;

  template <class F, std::enable_if_t<!std::is_same_v<std::decay_t<F>, Field>, int> = 0>
  Field(F f) : f0_(f), f1_(f), f2_(f) {}  // NOLINT: implicit from callables

  Out<double> operator()(const Vec6<double>& x) const { return f0_(x); }
  Out<D1> operator()(const Vec6<D1>& x) const { return f1_(x); }
  Out<D2> operator()(const Vec6<D2>& x) const { return f2_(x); }
  Out<double> operator()(const PhasePoint& p) const { return f0_(p.x); }

  explicit operator bool() const { return static_cast<bool>(f0_); }

 private:
  std::function<Out<double>(const Vec6<double>&)> f0_;
  std::function<Out<D1>(const Vec6<D1>&)> f1_;
  std::function<Out<D2>(const Vec6<D2>&)> f2_;
};

using ScalarField = Field<ScalarKind>;
using VectorField = Field<VectorKind>;
using BivectorField = Field<BivectorKind>;
using TwoForm = Field<TwoFormKind>;
using MixedTensor = Field<MixedKind>;

template <class S> Vec6<S> zero_vec() {
  Vec6<S> v;
  v.fill(S(0.0));
  return v;
}

template <class S> Mat6<S> zero_mat() {
  Mat6<S> m;
  for (auto& row : m) row.fill(S(0.0));
  return m;
}

template <class S> Mat6<S> identity_mat() {
  auto m = zero_mat<S>();
  for (int i = 0; i < 6; ++i) m[i][i] = S(1.0);
  return m;
}

template <class S> Vec6<S> matvec(const Mat6<S>& m, const Vec6<S>& v) {
  auto r = zero_vec<S>();
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) r[a] += m[a][b] * v[b];
  return r;
}

template <class S> Mat6<S> matmul(const Mat6<S>& a, const Mat6<S>& b) {
  auto r = zero_mat<S>();
  for (int i = 0; i < 6; ++i)
    for (int k = 0; k < 6; ++k)
      for (int j = 0; j < 6; ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

template <class S> Mat6<S> transpose(const Mat6<S>& a) {
  Mat6<S> r;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) r[i][j] = a[j][i];
  return r;
}

// Lift plain coordinates into scalar type S (tangents zero).
template <class S> Vec6<S> lift(const Vec6<double>& x) {
  Vec6<S> r;
  for (int i = 0; i < 6; ++i) r[i] = S(x[i]);
  return r;
}

// Seed coordinate direction i for one forward pass.
template <class S> Vec6<Dual<S>> seed(const Vec6<S>& x, int i) {
  Vec6<Dual<S>> r;
  for (int k = 0; k < 6; ++k) r[k] = Dual<S>(x[k], S(k == i ? 1.0 : 0.0));
  return r;
}

// Derived fields cannot go deeper than their inputs; this tells them when to stop.
template <class S> inline constexpr bool can_differentiate = ad_depth_v<S> < kMaxDepth;

// Constant-coefficient fields.
ScalarField constant_scalar(double c);
ScalarField coordinate_function(int i);
VectorField constant_vector(const Vec6<double>& v);
VectorField coordinate_vector(int i);  // d/dx^i
BivectorField constant_bivector(const Mat6<double>& m);
TwoForm constant_two_form(const Mat6<double>& m);
MixedTensor constant_mixed(const Mat6<double>& m);

}  // namespace nckepler
