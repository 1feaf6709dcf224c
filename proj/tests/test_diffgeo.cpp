#include <gtest/gtest.h>

#include <random>

#include "nckepler/diffgeo.hpp"
#include "nckepler/kepler.hpp"
#include "test_util.hpp"

using namespace nckepler;
using namespace testutil;

namespace {

ScalarField sum_squares() {
  return ScalarField([](const auto& x) {
    auto r = x[0] * x[0];
    for (int i = 1; i < 6; ++i) r += x[i] * x[i];
    return r;
  });
}

Mat6<double> canonical_bivector() {
  auto P = zero_mat<double>();
  for (int i = 0; i < 3; ++i) {
    P[3 + i][i] = 1.0;
    P[i][3 + i] = -1.0;
  }
  return P;
}

// P^{ij} = eps_ijk v_k on the first three coordinates.
BivectorField so3_like(bool poisson) {
  return BivectorField([poisson](const auto& x) {
    using S = scalar_of<decltype(x)>;
    Vec6<S> v = zero_vec<S>();
    if (poisson) {
      v[0] = x[0];
      v[1] = x[1];
      v[2] = x[2];
    } else {
      v[0] = x[1];  // v . curl v = -1
      v[2] = S(1.0);
    }
    auto P = zero_mat<S>();
    P[0][1] = v[2];
    P[1][0] = -v[2];
    P[1][2] = v[0];
    P[2][1] = -v[0];
    P[2][0] = v[1];
    P[0][2] = -v[1];
    return P;
  });
}

VectorField poly_vector(std::mt19937_64& rng) {
  std::array<Poly, 6> c;
  for (auto& p : c) p = random_poly(rng);
  std::array<ScalarField, 6> f;
  for (int i = 0; i < 6; ++i) f[i] = poly_field(c[i]);
  return VectorField([f](const auto& x) {
    using S = scalar_of<decltype(x)>;
    Vec6<S> r;
    for (int i = 0; i < 6; ++i) r[i] = f[i](x);
    return r;
  });
}

}  // namespace

TEST(Gradient, PolynomialExact) {
  PhasePoint x{{1, 2, 3, 4, 5, 6}, Chart::cartesian};
  Vector6 g = gradient(sum_squares(), x);
  for (int i = 0; i < 6; ++i) EXPECT_EQ(g(i), 2.0 * (i + 1));
}

TEST(Gradient, ConstantIsZero) {
  PhasePoint x{{1, 2, 3, 4, 5, 6}, Chart::cartesian};
  EXPECT_EQ(gradient(constant_scalar(3.5), x).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Gradient, MatchesFiniteDifferencesOnHamiltonian) {
  std::mt19937_64 rng(42);
  ScalarField H = hamiltonian_field(DeformationParams::commutative());
  for (int n = 0; n < 100; ++n) {
    PhasePoint x = random_point(rng, 0.5, 1.5);
    Vector6 g = gradient(H, x);
    Vector6 fd = fd_gradient(H, x);
    EXPECT_LT((g - fd).norm() / g.norm(), 1e-6);
  }
}

TEST(Gradient, PolynomialMatchesHandCoefficients) {
  std::mt19937_64 rng(7);
  Poly p = random_poly(rng);
  PhasePoint x = random_point(rng);
  Vector6 g = gradient(poly_field(p), x);
  for (int i = 0; i < 6; ++i) {
    double expect = p.c1[i];
    for (int j = 0; j < 6; ++j) expect += (p.c2[i][j] + p.c2[j][i]) * x[j];
    expect += 2.0 * p.c3[i] * x[i] * x[(i + 1) % 6];
    int prev = (i + 5) % 6;
    expect += p.c3[prev] * x[prev] * x[prev];
    EXPECT_LT(rel_err(g(i), expect), 1e-13);
  }
}

TEST(Hessian, PolynomialExact) {
  std::mt19937_64 rng(3);
  Poly p = random_poly(rng);
  PhasePoint x = random_point(rng);
  Matrix6 H = hessian(poly_field(p), x);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      double expect = p.c2[i][j] + p.c2[j][i];
      if (j == (i + 1) % 6) expect += 2.0 * p.c3[i] * x[i];
      if (i == (j + 1) % 6) expect += 2.0 * p.c3[j] * x[j];
      if (i == j) expect += 2.0 * p.c3[i] * x[(i + 1) % 6];
      EXPECT_LT(std::abs(H(i, j) - expect), 1e-13);
    }
}

TEST(HamiltonianVectorField, CanonicalMomentumGeneratesPositionShift) {
  auto X = hamiltonian_vector_field(constant_bivector(canonical_bivector()), coordinate_function(3));
  PhasePoint x{{0.3, -0.2, 0.5, 1.0, 2.0, 3.0}, Chart::cartesian};
  auto v = X(x);
  for (int i = 0; i < 6; ++i) EXPECT_EQ(v[i], i == 0 ? 1.0 : 0.0);
}

TEST(HamiltonianVectorField, ZeroCases) {
  PhasePoint x{{0.3, -0.2, 0.5, 1.0, 2.0, 3.0}, Chart::cartesian};
  auto a = hamiltonian_vector_field(constant_bivector(canonical_bivector()), constant_scalar(2.0))(x);
  auto b = hamiltonian_vector_field(constant_bivector(zero_mat<double>()), sum_squares())(x);
  for (int i = 0; i < 6; ++i) {
    EXPECT_EQ(a[i], 0.0);
    EXPECT_EQ(b[i], 0.0);
  }
}

TEST(LieBracket, HandComputed) {
  VectorField X([](const auto& x) {
    auto r = zero_vec<scalar_of<decltype(x)>>();
    r[0] = x[1];
    return r;
  });
  VectorField Y([](const auto& x) {
    auto r = zero_vec<scalar_of<decltype(x)>>();
    r[1] = x[0];
    return r;
  });
  PhasePoint p{{2, 3, 0, 0, 0, 0}, Chart::cartesian};
  Vector6 b = lie_bracket(X, Y, p);
  EXPECT_EQ(b(0), -2.0);
  EXPECT_EQ(b(1), 3.0);
  for (int i = 2; i < 6; ++i) EXPECT_EQ(b(i), 0.0);
}

TEST(LieBracket, AntisymmetryAndTrivialCases) {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 20; ++n) {
    auto X = poly_vector(rng);
    auto Y = poly_vector(rng);
    PhasePoint x = random_point(rng);
    EXPECT_LT((lie_bracket(X, Y, x) + lie_bracket(Y, X, x)).norm(), 1e-12);
    EXPECT_LT(lie_bracket(X, X, x).norm(), 1e-12);
  }
  PhasePoint x = random_point(rng);
  EXPECT_EQ(lie_bracket(coordinate_vector(1), constant_vector({1, 2, 3, 4, 5, 6}), x).norm(), 0.0);
}

TEST(LieBracket, JacobiOnVectorFields) {
  std::mt19937_64 rng(12);
  auto X = poly_vector(rng), Y = poly_vector(rng), Z = poly_vector(rng);
  PhasePoint x = random_point(rng);
  Vector6 s = lie_bracket(X, lie_bracket_field(Y, Z), x) + lie_bracket(Y, lie_bracket_field(Z, X), x) +
              lie_bracket(Z, lie_bracket_field(X, Y), x);
  EXPECT_LT(s.norm(), 1e-10);
}

TEST(LieDerivative, ScalarLeibniz) {
  std::mt19937_64 rng(5);
  for (int n = 0; n < 20; ++n) {
    auto Z = poly_vector(rng);
    auto f = poly_field(random_poly(rng));
    auto g = poly_field(random_poly(rng));
    ScalarField fg([f, g](const auto& x) { return f(x) * g(x); });
    PhasePoint x = random_point(rng);
    double lhs = lie_derivative(Z, fg, x);
    double rhs = lie_derivative(Z, f, x) * g(x.x) + f(x.x) * lie_derivative(Z, g, x);
    EXPECT_LT(std::abs(lhs - rhs), 1e-11 * std::max(1.0, std::abs(lhs)));
  }
  EXPECT_EQ(lie_derivative(constant_vector({}), sum_squares(), random_point(rng)), 0.0);
}

// (L_Z P)(df,dg) = Z({f,g}) - {Zf, g} - {f, Zg}
TEST(LieDerivative, BivectorAgainstBracketIdentity) {
  std::mt19937_64 rng(6);
  BivectorField P = so3_like(false);
  for (int n = 0; n < 10; ++n) {
    auto Z = poly_vector(rng);
    auto f = poly_field(random_poly(rng));
    auto g = poly_field(random_poly(rng));
    PhasePoint x = random_point(rng);
    Matrix6 L = lie_derivative(Z, P, x);
    Vector6 df = gradient(f, x), dg = gradient(g, x);
    double lhs = df.dot(L * dg);
    ScalarField Zf([Z, f](const auto& y) {
      using S = scalar_of<decltype(y)>;
      if constexpr (!can_differentiate<S>) { throw DerivativeOrderExhausted(); return S(0.0); }
      else { auto z = Z(y); auto d = grad(f, y); S r(0.0); for (int i = 0; i < 6; ++i) r += z[i] * d[i]; return r; }
    });
    ScalarField Zg([Z, g](const auto& y) {
      using S = scalar_of<decltype(y)>;
      if constexpr (!can_differentiate<S>) { throw DerivativeOrderExhausted(); return S(0.0); }
      else { auto z = Z(y); auto d = grad(g, y); S r(0.0); for (int i = 0; i < 6; ++i) r += z[i] * d[i]; return r; }
    });
    double rhs = lie_derivative(Z, bracket_field(P, f, g), x) - poisson_bracket(P, Zf, g, x) - poisson_bracket(P, f, Zg, x);
    EXPECT_LT(std::abs(lhs - rhs), 1e-9 * std::max(1.0, std::abs(lhs)));
  }
}

// (L_Z w)(X,Y) = Z(w(X,Y)) - w([Z,X],Y) - w(X,[Z,Y]);  (L_Z T)X = [Z,TX] - T[Z,X]
TEST(LieDerivative, TwoFormAndMixedAgainstBracketIdentities) {
  std::mt19937_64 rng(8);
  TwoForm w([](const auto& x) {
    auto m = zero_mat<scalar_of<decltype(x)>>();
    m[0][3] = x[1] * x[2];
    m[3][0] = -m[0][3];
    m[1][4] = x[0] + x[5] * x[5];
    m[4][1] = -m[1][4];
    return m;
  });
  MixedTensor T([](const auto& x) {
    auto m = identity_mat<scalar_of<decltype(x)>>();
    m[0][1] = x[2] * x[3];
    m[4][4] = x[0];
    return m;
  });
  for (int n = 0; n < 10; ++n) {
    auto Z = poly_vector(rng), X = poly_vector(rng), Y = poly_vector(rng);
    PhasePoint x = random_point(rng);
    Vector6 Xv = to_eigen(X(x.x)), Yv = to_eigen(Y(x.x));
    Matrix6 wm = to_eigen(w(x.x));
    ScalarField wXY([w, X, Y](const auto& y) {
      auto m = w(y); auto a = X(y); auto b = Y(y);
      auto r = a[0] * m[0][0] * b[0];
      for (int i = 0; i < 6; ++i) for (int j = 0; j < 6; ++j) if (i || j) r += a[i] * m[i][j] * b[j];
      return r;
    });
    double lhs = Xv.dot(lie_derivative(Z, w, x) * Yv);
    double rhs = lie_derivative(Z, wXY, x) - lie_bracket(Z, X, x).dot(wm * Yv) - Xv.dot(wm * lie_bracket(Z, Y, x));
    EXPECT_LT(std::abs(lhs - rhs), 1e-9 * std::max(1.0, std::abs(lhs)));

    Vector6 lt = lie_derivative(Z, T, x) * Xv;
    Vector6 rt = lie_bracket(Z, apply(T, X), x) - to_eigen(T(x.x)) * lie_bracket(Z, X, x);
    EXPECT_LT((lt - rt).norm(), 1e-9 * std::max(1.0, lt.norm()));
  }
}

TEST(Jacobian, FiniteDifferenceConcordance) {
  std::mt19937_64 rng(9);
  auto X = poly_vector(rng);
  PhasePoint x = random_point(rng);
  auto J = jac(X, x.x);
  for (int c = 0; c < 6; ++c) {
    PhasePoint a = x, b = x;
    a.x[c] += 1e-5;
    b.x[c] -= 1e-5;
    auto fa = X(a.x), fb = X(b.x);
    for (int r = 0; r < 6; ++r) EXPECT_LT(rel_err(J[r][c], (fa[r] - fb[r]) / 2e-5), 1e-6);
  }
}

TEST(Schouten, ConstantAndPoisson) {
  std::mt19937_64 rng(1);
  PhasePoint x = random_point(rng);
  auto P = constant_bivector(canonical_bivector());
  EXPECT_EQ(schouten_bracket(P, P, x).max_abs(), 0.0);
  auto L = so3_like(true);
  EXPECT_LT(schouten_bracket(L, L, x).max_abs(), 1e-14);
}

// [P,P]^{abc} = -2 sum_cyc {x^a,{x^b,x^c}}: vanishing in one iff in the other.
TEST(Schouten, ConventionMatchesJacobiator) {
  std::mt19937_64 rng(2);
  for (bool poisson : {true, false}) {
    auto P = so3_like(poisson);
    PhasePoint x = random_point(rng);
    Trivector s = schouten_bracket(P, P, x);
    double max_jac = 0.0;
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b)
        for (int c = 0; c < 6; ++c) {
          auto xa = coordinate_function(a), xb = coordinate_function(b), xc = coordinate_function(c);
          double jacobiator = poisson_bracket(P, xa, bracket_field(P, xb, xc), x) +
                              poisson_bracket(P, xb, bracket_field(P, xc, xa), x) +
                              poisson_bracket(P, xc, bracket_field(P, xa, xb), x);
          EXPECT_NEAR(s(a, b, c), -2.0 * jacobiator, 1e-12);
          max_jac = std::max(max_jac, std::abs(jacobiator));
        }
    if (poisson) {
      EXPECT_LT(s.max_abs(), 1e-12);
    } else {
      EXPECT_GT(s.max_abs(), 0.1);
      EXPECT_GT(max_jac, 0.1);
    }
  }
}

TEST(Schouten, SymmetricInArguments) {
  std::mt19937_64 rng(4);
  PhasePoint x = random_point(rng);
  auto P = so3_like(true), Q = so3_like(false);
  Trivector a = schouten_bracket(P, Q, x), b = schouten_bracket(Q, P, x);
  for (std::size_t i = 0; i < a.c.size(); ++i) EXPECT_NEAR(a.c[i], b.c[i], 1e-13);
}

TEST(Nijenhuis, TrivialOperators) {
  std::mt19937_64 rng(13);
  PhasePoint x = random_point(rng);
  auto X = poly_vector(rng), Y = poly_vector(rng);
  EXPECT_LT(nijenhuis_torsion(constant_mixed(identity_mat<double>()), X, Y, x).norm(), 1e-11);
  auto D = zero_mat<double>();
  for (int i = 0; i < 6; ++i) D[i][i] = 0.5 + i;
  EXPECT_LT(nijenhuis_torsion(constant_mixed(D), X, Y, x).norm(), 1e-10);
}

// T = diag(x2, 1, ...): N(d1, d2) = (f - 1) f' d1 with f = x2.
TEST(Nijenhuis, NonzeroHandCase) {
  MixedTensor T([](const auto& x) {
    auto m = identity_mat<scalar_of<decltype(x)>>();
    m[0][0] = x[1];
    return m;
  });
  PhasePoint x{{0.0, 3.0, 0.0, 0.0, 0.0, 0.0}, Chart::cartesian};
  Vector6 n = nijenhuis_torsion(T, coordinate_vector(0), coordinate_vector(1), x);
  EXPECT_NEAR(n(0), 2.0, 1e-14);
  EXPECT_NEAR(n.tail<5>().norm(), 0.0, 1e-14);
}

TEST(InteriorProduct, Basic) {
  auto w = zero_mat<double>();
  w[0][3] = 2.0;
  w[3][0] = -2.0;
  PhasePoint x{};
  EXPECT_EQ(interior_product(constant_vector({}), constant_two_form(w), x).norm(), 0.0);
  Vector6 r = interior_product(coordinate_vector(0), constant_two_form(w), x);
  EXPECT_EQ(r(3), 2.0);
  EXPECT_EQ(r(0), 0.0);
}

TEST(Transport, LinearChartMatchesCongruence) {
  // y = A x with A upper triangular
  Matrix6 A = Matrix6::Identity();
  A(0, 1) = 2.0;
  A(2, 4) = -1.5;
  A(3, 3) = 0.5;
  Matrix6 Ai = A.inverse();
  auto lin = [](const Matrix6& M) {
    return VectorField([M](const auto& x) {
      using S = scalar_of<decltype(x)>;
      auto r = zero_vec<S>();
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) r[i] += M(i, j) * x[j];
      return r;
    });
  };
  ChartMap cm{Chart::action_angle, Chart::delaunay, lin(A), lin(Ai)};
  auto P = so3_like(true);
  std::mt19937_64 rng(10);
  PhasePoint x = random_point(rng);
  Vector6 y = A * to_eigen(x.x);
  Matrix6 expect = Ai * to_eigen(P(to_array(y))) * Ai.transpose();
  Matrix6 got = to_eigen(transport(cm, P)(x.x));
  EXPECT_LT((expect - got).cwiseAbs().maxCoeff(), 1e-14);
  auto Pt = transport(cm, P);
  EXPECT_LT(schouten_bracket(Pt, Pt, x).max_abs(), 1e-12);
  // the induced bracket is chart independent
  auto f = poly_field(random_poly(rng)), g = poly_field(random_poly(rng));
  double in_y = poisson_bracket(P, f, g, {to_array(y), Chart::delaunay});
  double in_x = poisson_bracket(Pt, transport(cm, f), transport(cm, g), x);
  EXPECT_LT(rel_err(in_x, in_y), 1e-12);
}

TEST(Sampling, Deterministic) {
  Box b;
  b.lo.fill(-1.0);
  b.hi.fill(1.0);
  auto a = sample_box(b, Chart::cartesian, 10, 42);
  auto c = sample_box(b, Chart::cartesian, 10, 42);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a[i].x, c[i].x);
}
