#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "nckepler/kepler.hpp"
#include "test_util.hpp"

using namespace nckepler;
using namespace testutil;

namespace {
PhasePoint random_config(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> q(-2.0, 2.0), pm(-1.0, 1.0);
  PhasePoint x;
  do {
    for (int i = 0; i < 3; ++i) {
      x.x[i] = q(rng);
      x.x[3 + i] = pm(rng);
    }
  } while (std::hypot(x[0], x[1], x[2]) < 0.5);
  return x;
}

Eigen::Matrix3d pair12(double a) {
  Eigen::Matrix3d A = Eigen::Matrix3d::Zero();
  A(0, 1) = a;
  A(1, 0) = -a;
  return A;
}
}  // namespace

TEST(DeformedRadius, Examples) {
  EXPECT_EQ(deformed_radius({{3, 4, 0, 0, 0, 0}}, DeformationParams::commutative()), 5.0);
  auto p = make_params(pair12(0.2), Eigen::Matrix3d::Zero(), 1, 1);
  EXPECT_NEAR(deformed_radius({{1, 0, 0, 0, 1, 0}}, p), 0.9, 1e-15);
  EXPECT_THROW(deformed_radius({{0.1, 0, 0, 0, 1, 0}}, p), SingularConfiguration);
}

TEST(Hamiltonian, Examples) {
  PhasePoint x{{1, 0, 0, 0, 1, 0}};
  EXPECT_DOUBLE_EQ(hamiltonian(x, DeformationParams::commutative()), -0.5);
  auto p = make_params(Eigen::Matrix3d::Zero(), pair12(0.2), 1, 1);
  // p' = p + lambda q / 2 = (0, 1 - 0.1, 0)
  EXPECT_NEAR(hamiltonian(x, p), 0.5 * 0.9 * 0.9 - 1.0, 1e-15);
}

TEST(Hamiltonian, CompositionalOracle) {
  std::mt19937_64 rng(42);
  for (int n = 0; n < 100; ++n) {
    auto p = random_params(rng, 0.3);
    auto x = random_config(rng);
    auto y = transform_coordinates(x, p);
    double Y = std::hypot(y[0], y[1], y[2]);
    double expect = (y[3] * y[3] + y[4] * y[4] + y[5] * y[5]) / (2 * p.m) - p.k / Y;
    EXPECT_LT(std::abs(hamiltonian(x, p) - expect), 1e-12);
  }
}

TEST(ClosedForm, ClassicalKepler) {
  std::mt19937_64 rng(1);
  auto x = random_config(rng);
  Vector6 r = hamilton_rhs_closed_form(x, DeformationParams::commutative());
  double q3 = std::pow(std::hypot(x[0], x[1], x[2]), 3);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(r(i), x[3 + i], 1e-15);
    EXPECT_NEAR(r(3 + i), -x[i] / q3, 1e-15);
  }
}

TEST(ClosedForm, MatchesBracketFlow) {
  std::mt19937_64 rng(2);
  for (int n = 0; n < 100; ++n) {
    auto p = random_params(rng, 0.3);
    auto x = random_config(rng);
    auto H = hamiltonian_field(p);
    Vector6 oracle;
    for (int i = 0; i < 3; ++i) {
      oracle(i) = nc_bracket(H, q_field(i), x, p);
      oracle(3 + i) = nc_bracket(H, p_field(i), x, p);
    }
    EXPECT_LT((hamilton_rhs_closed_form(x, p) - oracle).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((hamilton_rhs_primed(x, p) - oracle).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((to_eigen(hamiltonian_vector_field_nc(p)(x)) - oracle).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(ClosedForm, PrintedVariantsDisagree) {
  std::mt19937_64 rng(3);
  Eigen::Matrix3d A = Eigen::Matrix3d::Zero(), L = Eigen::Matrix3d::Zero();
  A(0, 1) = 0.3; A(1, 0) = -0.3; A(0, 2) = 0.2; A(2, 0) = -0.2;
  L(1, 2) = 0.25; L(2, 1) = -0.25; L(0, 1) = 0.1; L(1, 0) = -0.1;
  auto p = make_params(A, L, 1.3, 1.7);
  auto x = random_config(rng);
  Vector6 good = hamilton_rhs_closed_form(x, p);
  EXPECT_GT((hamilton_rhs_closed_form(x, p, SigmaConvention::as_printed) - good).norm(), 1e-6);
  EXPECT_GT((hamilton_rhs_closed_form(x, p, SigmaConvention::with_coupling, IndexRestriction::unrestricted) - good).norm(), 1e-6);
  EXPECT_GT((hamilton_rhs_primed(x, p, true) - good).norm(), 1e-6);
  // printed sigma is exact when k = 1
  auto p1 = make_params(A, L, 1.3, 1.0);
  EXPECT_LT((hamilton_rhs_closed_form(x, p1, SigmaConvention::as_printed) - hamilton_rhs_closed_form(x, p1)).norm(), 1e-14);
}

TEST(KeplerAux, SigmaBound) {
  std::mt19937_64 rng(4);
  auto p = random_params(rng, 0.3);
  auto a = kepler_aux(random_config(rng), p);
  for (double s : a.sigma) EXPECT_GE(s, 1.0 / p.m);
}

TEST(VectorField, InteriorProductGivesMinusDH) {
  std::mt19937_64 rng(5);
  for (int n = 0; n < 100; ++n) {
    auto p = n == 0 ? DeformationParams::commutative() : random_params(rng, 0.3);
    auto x = random_config(rng);
    Vector6 r = interior_product(hamiltonian_vector_field_nc(p), nc_form(p), x) + gradient(hamiltonian_field(p), x);
    EXPECT_LT(r.cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Integrate, CircularOrbitEnergyDrift) {
  auto p = DeformationParams::commutative();
  PhasePoint x0{{1, 0, 0, 0, 1, 0}};
  auto H = hamiltonian_field(p);
  auto tr = integrate(x0, p, 1e-3, 10000, Method::rk4, {{"H", H}});
  ASSERT_FALSE(tr.truncated);
  ASSERT_EQ(tr.states.size(), 10001u);
  double h0 = tr.monitors.front()[0];
  double worst = 0.0;
  for (const auto& row : tr.monitors) worst = std::max(worst, std::abs(row[0] - h0) / std::abs(h0));
  EXPECT_LT(worst, 1e-8);
}

TEST(Integrate, ImplicitMidpointBoundedDrift) {
  auto p = DeformationParams::commutative();
  PhasePoint x0{{1, 0, 0, 0, 1.2, 0}};
  auto H = hamiltonian_field(p);
  auto tr = integrate(x0, p, 1e-3, 10000, Method::implicit_midpoint, {{"H", H}});
  ASSERT_FALSE(tr.truncated);
  double h0 = tr.monitors.front()[0];
  double first = 0.0, second = 0.0;
  for (std::size_t i = 0; i < tr.monitors.size(); ++i) {
    double d = std::abs(tr.monitors[i][0] - h0) / std::abs(h0);
    (i < tr.monitors.size() / 2 ? first : second) = std::max(i < tr.monitors.size() / 2 ? first : second, d);
  }
  EXPECT_LT(second, 1e-5);
  EXPECT_LT(second, 3.0 * first + 1e-12);  // no secular growth
}

TEST(Integrate, RadialFallTruncates) {
  auto p = DeformationParams::commutative();
  auto tr = integrate({{1, 0, 0, 0, 0, 0}}, p, 1e-3, 10000, Method::rk4, {});
  EXPECT_TRUE(tr.truncated);
  EXPECT_NE(tr.termination_reason.find("singularity"), std::string::npos);
  for (const auto& s : tr.states) EXPECT_GT(deformed_radius(s, p), 0.0);
}

TEST(Integrate, StepFailureOnStiffField) {
  VectorField X([](const auto& x) {
    auto r = x;
    for (auto& c : r) c = -1000.0 * c;
    return r;
  });
  EXPECT_THROW(integrate_field(X, {{1, 1, 1, 1, 1, 1}}, 1.0, 1, Method::implicit_midpoint, {}), StepFailure);
}

// d f/dt along the flow equals {H', f}_nc (five-point stencil in time).
TEST(Integrate, MonitorRateMatchesBracket) {
  std::mt19937_64 rng(6);
  auto p = random_params(rng, 0.3);
  PhasePoint x0{{1.0, 0.2, -0.1, 0.1, 0.9, 0.2}};
  ScalarField f([](const auto& x) { return x[0] * x[4] - x[1] * x[1] + x[5]; });
  const double dt = 1e-3;
  auto tr = integrate(x0, p, dt, 200, Method::rk4, {{"f", f}});
  auto H = hamiltonian_field(p);
  for (std::size_t i = 2; i + 2 < tr.states.size(); i += 17) {
    double fd = (tr.monitors[i - 2][0] - 8 * tr.monitors[i - 1][0] + 8 * tr.monitors[i + 1][0] - tr.monitors[i + 2][0]) / (12 * dt);
    double exact = nc_bracket(H, f, tr.states[i], p);
    EXPECT_LT(std::abs(fd - exact) / std::max(std::abs(exact), 1e-3), 1e-5);
  }
}

TEST(Csv, HeaderAndPrecision) {
  auto p = DeformationParams::commutative();
  auto tr = integrate({{1, 0, 0, 0, 1, 0}}, p, 0.1, 2, Method::rk4, {{"H", hamiltonian_field(p)}});
  std::ostringstream os;
  write_csv(tr, os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "t,q1,q2,q3,p1,p2,p3,H");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 3);
  EXPECT_NE(os.str().find("0.10000000000000001"), std::string::npos);
}
