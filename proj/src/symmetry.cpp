#include "nckepler/symmetry.hpp"

#include <cmath>

namespace nckepler {

Eigen::Vector3d angular_momentum(const PhasePoint& x, const DeformationParams& p) {
  auto L = angular_momentum_t(x.x, p);
  return {L[0], L[1], L[2]};
}

Eigen::Vector3d lrl_vector(const PhasePoint& x, const DeformationParams& p) {
  auto A = lrl_t(x.x, p);
  return {A[0], A[1], A[2]};
}

ScalarField angular_momentum_field(int i, const DeformationParams& p) {
  return ScalarField([i, p](const auto& x) { return angular_momentum_t(x, p)[i]; });
}

ScalarField lrl_field(int i, const DeformationParams& p) {
  return ScalarField([i, p](const auto& x) { return lrl_t(x, p)[i]; });
}

StructureMatrices structure_matrices(const DeformationParams& p) {
  auto th = theta_weights(p);
  StructureMatrices s;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) {
        double f = 1.0 / th[i];
        for (int l = 0; l < 3; ++l) f += 0.25 * p.lambda(i, l) * p.alpha(i, l) / th[l];
        s.F(i, i) = f;
      } else {
        double f = 0.0;
        for (int r = 0; r < 3; ++r) f += 0.25 * p.lambda(i, r) * p.alpha(j, r) / th[r];
        s.F(i, j) = f;
      }
      s.D(i, j) = 0.5 * p.lambda(j, i) * (1.0 / th[i] + 1.0 / th[j]);
      s.E(i, j) = 0.5 * p.alpha(j, i) * (1.0 / th[i] + 1.0 / th[j]);
    }
  s.Fprime = -s.F;
  return s;
}

namespace {

struct Pieces {
  Vec6<double> y;  // primed coordinates
  Eigen::Vector3d L;
  double Y = 0.0;
  Eigen::Vector3d a;   // a_nu = sum_j D_nu j p'_j / m + k F_nu j q'_j / Y^3
  Eigen::Vector3d b;   // b_nu = sum_j F_j nu p'_j / m + k E_j nu q'_j / Y^3
  Eigen::Vector3d hl;  // {H', L'_i}
};

Pieces pieces(const PhasePoint& x, const DeformationParams& p, bool drop_DE) {
  StructureMatrices s = structure_matrices(p);
  if (drop_DE) {
    s.D.setZero();
    s.E.setZero();
  }
  Pieces c;
  c.y = primed_coords(x.x, p);
  c.L = angular_momentum(x, p);
  c.Y = deformed_radius(x, p);
  const double Y3 = c.Y * c.Y * c.Y;
  for (int nu = 0; nu < 3; ++nu) {
    c.a(nu) = 0.0;
    c.b(nu) = 0.0;
    for (int j = 0; j < 3; ++j) {
      c.a(nu) += s.D(nu, j) * c.y[3 + j] / p.m + p.k * s.F(nu, j) * c.y[j] / Y3;
      c.b(nu) += s.F(j, nu) * c.y[3 + j] / p.m + p.k * s.E(j, nu) * c.y[j] / Y3;
    }
  }
  for (int i = 0; i < 3; ++i) {
    double r = 0.0;
    for (int mu = 0; mu < 3; ++mu)
      for (int nu = 0; nu < 3; ++nu) r += levi_civita(mu, i, nu) * (c.a(nu) * c.y[mu] + c.b(nu) * c.y[3 + mu]);
    c.hl(i) = r;
  }
  return c;
}

double ha_from(const Pieces& c, const DeformationParams& p, int i, HAForm form) {
  const double Y3 = c.Y * c.Y * c.Y;
  double r = 0.0;
  for (int eta = 0; eta < 3; ++eta)
    for (int rho = 0; rho < 3; ++rho) {
      int e = levi_civita(i, eta, rho);
      if (!e) continue;
      double inner = form == HAForm::corrected ? c.a(rho) : c.a(eta);
      r += e * (c.hl(rho) * c.y[3 + eta] + inner * c.L(eta));
    }
  r -= p.m * p.k / c.Y * c.b(i);
  for (int h = 0; h < 3; ++h) r += p.m * p.k / Y3 * c.b(h) * c.y[h] * c.y[i];
  return r;
}

}  // namespace

double bracket_H_with_L(const PhasePoint& x, const DeformationParams& p, int i) { return pieces(x, p, false).hl(i); }

double bracket_H_with_A(const PhasePoint& x, const DeformationParams& p, int i, HAForm form) {
  return ha_from(pieces(x, p, false), p, i, form);
}

double bracket_H_with_L_reduced(const PhasePoint& x, const DeformationParams& p, int i) {
  return pieces(x, p, true).hl(i);
}

double bracket_H_with_A_reduced(const PhasePoint& x, const DeformationParams& p, int i, HAForm form) {
  return ha_from(pieces(x, p, true), p, i, form);
}

Proposition1Report proposition1_check(const DeformationParams& p, const PhasePoint& x, double tol) {
  Proposition1Report r;
  const auto th = theta_weights(p);
  const auto y = primed_coords(x.x, p);
  const auto& a = p.alpha;
  const auto& l = p.lambda;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int kk = 0; kk < 3; ++kk) {
        if (i == j || kk == i || kk == j) continue;
        r.condition1_residual = std::max(
            r.condition1_residual,
            std::abs(l(i, j) * a(i, j) + 0.5 * (l(i, kk) * a(i, kk) + l(j, kk) * a(j, kk)) + 4.0));
        // ratio relations, cross-multiplied
        double c2 = 0.0;
        c2 = std::max(c2, std::abs(y[i] * l(kk, j) * th[i] - y[j] * l(kk, i) * th[j]));
        c2 = std::max(c2, std::abs(y[i] * a(kk, i) * th[j] + y[j] * a(kk, j) * th[i]));
        c2 = std::max(c2, std::abs(y[3 + i] * a(kk, j) * th[i] - y[3 + j] * a(kk, i) * th[j]));
        c2 = std::max(c2, std::abs(y[3 + i] * l(kk, i) * th[j] + y[3 + j] * l(kk, j) * th[i]));
        r.condition2_residual = std::max(r.condition2_residual, c2);
      }
  const auto s = structure_matrices(p);
  r.condition3_residual = (s.F - s.F.transpose()).cwiseAbs().maxCoeff();
  r.condition3_residual = std::max(r.condition3_residual, std::abs(s.F(0, 0) - s.F(1, 1)));
  r.condition3_residual = std::max(r.condition3_residual, std::abs(s.F(0, 0) - s.F(2, 2)));
  r.condition1 = r.condition1_residual <= tol;
  r.condition2 = r.condition2_residual <= tol;
  r.condition3 = r.condition3_residual <= tol;
  for (int i = 0; i < 3; ++i) {
    r.hl[i] = std::abs(bracket_H_with_L(x, p, i));
    r.ha[i] = std::abs(bracket_H_with_A(x, p, i));
  }
  return r;
}

Proposition1Feasibility proposition1_feasibility() {
  // rows: (i,j,kappa) = (1,2,3), (1,3,2), (2,3,1); unknowns x12, x13, x23
  Eigen::Matrix3d M;
  M << 1.0, 0.5, 0.5, 0.5, 1.0, 0.5, 0.5, 0.5, 1.0;
  Proposition1Feasibility f;
  f.products = M.fullPivLu().solve(Eigen::Vector3d::Constant(-4.0));
  // theta_nu = 1 + 1/4 sum_mu x_{mu nu} (the products are symmetric under index swap)
  f.theta = {1.0 + 0.25 * (f.products(0) + f.products(1)), 1.0 + 0.25 * (f.products(0) + f.products(2)),
             1.0 + 0.25 * (f.products(1) + f.products(2))};
  f.feasible = f.theta[0] != 0.0 && f.theta[1] != 0.0 && f.theta[2] != 0.0;
  return f;
}

PairwiseTable pairwise_bracket_table(const PhasePoint& x, const DeformationParams& p) {
  std::array<ScalarField, 6> e;
  for (int i = 0; i < 3; ++i) {
    e[i] = angular_momentum_field(i, p);
    e[3 + i] = lrl_field(i, p);
  }
  PairwiseTable t;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) t.ad(a, b) = nc_bracket(e[a], e[b], x, p);

  const auto Fp = structure_matrices(p).Fprime;
  const auto y = primed_coords(x.x, p);
  const Eigen::Vector3d L = angular_momentum(x, p), A = lrl_vector(x, p);
  const double H = hamiltonian(x, p), Y = deformed_radius(x, p);
  t.closed.setZero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) {
        int jj = (i + 1) % 3, h = (i + 2) % 3;
        t.closed(i, 3 + i) = Fp(jj, h) * (L(h) * y[3 + jj] + L(jj) * y[3 + h]);
        continue;
      }
      int h = 3 - i - j;
      int eps = levi_civita(i, j, h);
      t.closed(i, j) = eps * Fp(h, h) * L(h);
      t.closed(3 + i, 3 + j) = -2.0 * p.m * eps * Fp(h, h) * H * L(h);
      t.closed(i, 3 + j) = eps * (Fp(h, h) * A(h) - Fp(h, j) * p.m * p.k / Y * y[j]) + Fp(h, j) * L(i) * x[3 + h];
    }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t.closed(3 + j, i) = -t.closed(i, 3 + j);
  return t;
}

Eigen::Vector3d scaled_runge_lenz(const PhasePoint& x, const DeformationParams& p, EnergySign tau) {
  auto g = scaled_runge_lenz_t(x.x, p, tau);
  return {g[0], g[1], g[2]};
}

ScalarField scaled_runge_lenz_field(int i, const DeformationParams& p, EnergySign tau) {
  return ScalarField([i, p, tau](const auto& x) { return scaled_runge_lenz_t(x, p, tau)[i]; });
}

AlgebraConstraints algebra_constraints(const PhasePoint& x, const DeformationParams& p) {
  AlgebraConstraints c;
  const auto y = primed_coords(x.x, p);
  const Eigen::Vector3d L = angular_momentum(x, p);
  const double Y = deformed_radius(x, p);
  for (int h = 0; h < 3; ++h)
    for (int j = 0; j < 3; ++j) c.momentum_residual = std::max(c.momentum_residual, std::abs(L(h) * y[3 + j] + L(j) * y[3 + h]));
  for (int j = 0; j < 3; ++j) {
    double rhs = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int h = 0; h < 3; ++h) rhs += levi_civita(i, j, h) * L(i) * y[3 + h];
    c.position_residual = std::max(c.position_residual, std::abs(p.m / Y * y[j] - rhs));
  }
  return c;
}

GeneratorSet generator_sets(GeneratorKind kind, const DeformationParams& p) {
  GeneratorSet g;
  g.kind = kind;
  const Eigen::Matrix3d Fp = structure_matrices(p).Fprime;
  for (auto& row : g.elements)
    for (auto& e : row) e = constant_scalar(0.0);
  for (int h = 0; h < 3; ++h)
    for (int j = 0; j < 3; ++j) {
      if (h == j) continue;
      int i = 3 - h - j;
      double c = levi_civita(h, j, i) * Fp(i, i);
      g.elements[h][j] = ScalarField([c, i, p](const auto& x) { return c * angular_momentum_t(x, p)[i]; });
    }
  if (kind == GeneratorKind::so3) return g;
  const EnergySign tau = kind == GeneratorKind::so4 ? EnergySign::minus : EnergySign::plus;
  for (int h = 0; h < 3; ++h) {
    double c = (kind == GeneratorKind::so4 ? 1.0 : -1.0) * Fp(h, h);
    double back = kind == GeneratorKind::so4 ? -c : c;
    g.elements[h][3] = ScalarField([c, h, p, tau](const auto& x) { return c * scaled_runge_lenz_t(x, p, tau)[h]; });
    g.elements[3][h] = ScalarField([back, h, p, tau](const auto& x) { return back * scaled_runge_lenz_t(x, p, tau)[h]; });
  }
  return g;
}

Eigen::Matrix4d evaluate(const GeneratorSet& g, const PhasePoint& x) {
  Eigen::Matrix4d m;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) m(a, b) = g.elements[a][b](x.x);
  return m;
}

ClosureFit fit_closure(const std::vector<ScalarField>& basis, const std::vector<PhasePoint>& points,
                       const DeformationParams& p) {
  const int n = static_cast<int>(basis.size());
  const int np = static_cast<int>(points.size());
  Eigen::MatrixXd B(np, n);
  for (int r = 0; r < np; ++r)
    for (int c = 0; c < n; ++c) B(r, c) = basis[c](points[r].x);
  auto qr = B.colPivHouseholderQr();
  ClosureFit fit;
  fit.C.assign(n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Eigen::VectorXd v(np);
      for (int r = 0; r < np; ++r) v(r) = nc_bracket(basis[a], basis[b], points[r], p);
      Eigen::VectorXd c = qr.solve(v);
      for (int k = 0; k < n; ++k) fit.C[a][b][k] = c(k);
      fit.residual = std::max(fit.residual, (B * c - v).cwiseAbs().maxCoeff());
    }
  return fit;
}

double algebra_jacobi_residual(const std::vector<ScalarField>& basis, const std::vector<PhasePoint>& points,
                               const DeformationParams& p) {
  const auto P = nc_bivector(p);
  const int n = static_cast<int>(basis.size());
  double worst = 0.0;
  for (const auto& x : points)
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c) {
          double s = nc_bracket(basis[a], bracket_field(P, basis[b], basis[c]), x, p) +
                     nc_bracket(basis[b], bracket_field(P, basis[c], basis[a]), x, p) +
                     nc_bracket(basis[c], bracket_field(P, basis[a], basis[b]), x, p);
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

}  // namespace nckepler
