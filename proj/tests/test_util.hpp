#pragma once

#include <cmath>
#include <random>

#include "nckepler/diffgeo.hpp"

namespace testutil {

using namespace nckepler;

inline Vector6 fd_gradient(const ScalarField& f, const PhasePoint& x, double h = 1e-5) {
  Vector6 g;
  for (int i = 0; i < 6; ++i) {
    PhasePoint a = x, b = x;
    a.x[i] += h;
    b.x[i] -= h;
    g(i) = (f(a.x) - f(b.x)) / (2.0 * h);
  }
  return g;
}

// Random cubic polynomial in the six coordinates (dense coefficients).
struct Poly {
  std::array<double, 6> c1{};
  std::array<std::array<double, 6>, 6> c2{};
  std::array<double, 6> c3{};
  double c0 = 0.0;
};

inline Poly random_poly(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Poly p;
  p.c0 = u(rng);
  for (int i = 0; i < 6; ++i) {
    p.c1[i] = u(rng);
    p.c3[i] = u(rng);
    for (int j = 0; j < 6; ++j) p.c2[i][j] = u(rng);
  }
  return p;
}

inline ScalarField poly_field(const Poly& p) {
  return ScalarField([p](const auto& x) {
    using S = scalar_of<decltype(x)>;
    S r(p.c0);
    for (int i = 0; i < 6; ++i) {
      r += p.c1[i] * x[i] + p.c3[i] * x[i] * x[i] * x[(i + 1) % 6];
      for (int j = 0; j < 6; ++j) r += p.c2[i][j] * x[i] * x[j];
    }
    return r;
  });
}

inline PhasePoint random_point(std::mt19937_64& rng, double lo = -1.0, double hi = 1.0, Chart c = Chart::cartesian) {
  std::uniform_real_distribution<double> u(lo, hi);
  PhasePoint p;
  p.chart = c;
  for (auto& v : p.x) v = u(rng);
  return p;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

}  // namespace testutil
