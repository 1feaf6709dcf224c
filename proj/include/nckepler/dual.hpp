#pragma once

#include <cmath>
#include <type_traits>

namespace nckepler {

// Forward-mode dual number with a single tangent. Nest Dual<Dual<double>> for
// second derivatives.
template <class T>
struct Dual {
  T v{};
  T d{};

  Dual() = default;
  Dual(double x) : v(x), d(0.0) {}  // NOLINT: implicit lift of constants
  Dual(T value, T tangent) : v(value), d(tangent) {}

  Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
  Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
  Dual& operator*=(const Dual& o) { *this = *this * o; return *this; }
  Dual& operator/=(const Dual& o) { *this = *this / o; return *this; }

  friend Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
  friend Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
  friend Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
  friend Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
  friend Dual operator/(const Dual& a, const Dual& b) {
    return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
  }

  friend Dual operator+(const Dual& a, double b) { return {a.v + b, a.d}; }
  friend Dual operator+(double a, const Dual& b) { return {a + b.v, b.d}; }
  friend Dual operator-(const Dual& a, double b) { return {a.v - b, a.d}; }
  friend Dual operator-(double a, const Dual& b) { return {a - b.v, -b.d}; }
  friend Dual operator*(const Dual& a, double b) { return {a.v * b, a.d * b}; }
  friend Dual operator*(double a, const Dual& b) { return {a * b.v, a * b.d}; }
  friend Dual operator/(const Dual& a, double b) { return {a.v / b, a.d / b}; }
  friend Dual operator/(double a, const Dual& b) { return Dual(a) / b; }
};

using D1 = Dual<double>;
using D2 = Dual<D1>;

template <class T> struct ad_depth : std::integral_constant<int, 0> {};
template <class T> struct ad_depth<Dual<T>> : std::integral_constant<int, 1 + ad_depth<T>::value> {};
template <class T> inline constexpr int ad_depth_v = ad_depth<T>::value;

// Deepest scalar type every closed-form field must support.
inline constexpr int kMaxDepth = 2;

inline double value(double x) { return x; }
template <class T> double value(const Dual<T>& x) { return value(x.v); }

// Comparisons look only at the underlying value; used for branch selection.
template <class T> bool operator<(const Dual<T>& a, double b) { return value(a) < b; }
template <class T> bool operator>(const Dual<T>& a, double b) { return value(a) > b; }
template <class T> bool operator<=(const Dual<T>& a, double b) { return value(a) <= b; }
template <class T> bool operator>=(const Dual<T>& a, double b) { return value(a) >= b; }

template <class T> Dual<T> sqrt(const Dual<T>& x) {
  using std::sqrt;
  T s = sqrt(x.v);
  return {s, x.d / (2.0 * s)};
}
template <class T> Dual<T> exp(const Dual<T>& x) {
  using std::exp;
  T e = exp(x.v);
  return {e, x.d * e};
}
template <class T> Dual<T> log(const Dual<T>& x) {
  using std::log;
  return {log(x.v), x.d / x.v};
}
template <class T> Dual<T> sin(const Dual<T>& x) {
  using std::sin, std::cos;
  return {sin(x.v), x.d * cos(x.v)};
}
template <class T> Dual<T> cos(const Dual<T>& x) {
  using std::sin, std::cos;
  return {cos(x.v), -(x.d * sin(x.v))};
}
template <class T> Dual<T> tan(const Dual<T>& x) {
  using std::cos, std::tan;
  T c = cos(x.v);
  return {tan(x.v), x.d / (c * c)};
}
template <class T> Dual<T> asin(const Dual<T>& x) {
  using std::asin, std::sqrt;
  return {asin(x.v), x.d / sqrt(1.0 - x.v * x.v)};
}
template <class T> Dual<T> acos(const Dual<T>& x) {
  using std::acos, std::sqrt;
  return {acos(x.v), -(x.d / sqrt(1.0 - x.v * x.v))};
}
template <class T> Dual<T> atan2(const Dual<T>& y, const Dual<T>& x) {
  using std::atan2;
  T r2 = x.v * x.v + y.v * y.v;
  return {atan2(y.v, x.v), (x.v * y.d - y.v * x.d) / r2};
}
template <class T> Dual<T> pow(const Dual<T>& x, double p) {
  using std::pow;
  if (p == 0.0) return Dual<T>(T(1.0), T(0.0));
  return {pow(x.v, p), x.d * (p * pow(x.v, p - 1.0))};
}
template <class T> Dual<T> abs(const Dual<T>& x) { return value(x) < 0.0 ? -x : x; }

// Integer power by repeated multiplication; exact for polynomials.
template <class S> S ipow(const S& x, int n) {
  if (n < 0) return S(1.0) / ipow(x, -n);
  S r(1.0);
  for (int i = 0; i < n; ++i) r = r * x;
  return r;
}

}  // namespace nckepler
