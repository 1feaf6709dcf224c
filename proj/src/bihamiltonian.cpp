#include "nckepler/bihamiltonian.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace nckepler {

std::array<double, 3> n_tilde(const ReducedParams& rp) { return {1.0, rp.M(), 1.0}; }

Eigen::Matrix3d action_map(double M) {
  Eigen::Matrix3d A;
  A << 0, 0, 1, 0, M, 1, 1, M, 1;
  return A;
}

Eigen::Matrix3d angle_map(double M) {
  Eigen::Matrix3d B;
  B << 0, -1.0 / M, 1, -M, 1, 0, 1, 0, 0;
  return B;
}

namespace {

template <class S> Vec6<S> apply_blocks(const Eigen::Matrix3d& A, const Eigen::Matrix3d& B, const Vec6<S>& x) {
  Vec6<S> r;
  for (int i = 0; i < 3; ++i) {
    r[i] = S(0.0);
    r[3 + i] = S(0.0);
    for (int j = 0; j < 3; ++j) {
      if (A(i, j) != 0.0) r[i] += A(i, j) * x[j];
      if (B(i, j) != 0.0) r[3 + i] += B(i, j) * x[3 + j];
    }
  }
  return r;
}

void require_M(const ReducedParams& rp) {
  if (rp.M() == 0.0) throw DomainError("M", "degenerate Delaunay map (M = 0)");
}

template <class S> S ipow_s(const S& x, int n) {
  S r(1.0);
  for (int i = 0; i < n; ++i) r = r * x;
  return r;
}

}  // namespace

PhasePoint delaunay_from_action_angle(const PhasePoint& s, const ReducedParams& rp) {
  require_M(rp);
  const double M = rp.M();
  return {apply_blocks(action_map(M), angle_map(M), s.x), Chart::delaunay};
}

PhasePoint action_angle_from_delaunay(const PhasePoint& d, const ReducedParams& rp) {
  require_M(rp);
  const double M = rp.M();
  return {apply_blocks(action_map(M).inverse(), angle_map(M).inverse(), d.x), Chart::action_angle};
}

ChartMap delaunay_chart_map(const ReducedParams& rp) {
  require_M(rp);
  const double M = rp.M();
  const Eigen::Matrix3d A = action_map(M), B = angle_map(M), Ai = A.inverse(), Bi = B.inverse();
  ChartMap m;
  m.from = Chart::action_angle;
  m.to = Chart::delaunay;
  m.forward = VectorField([A, B](const auto& x) { return apply_blocks(A, B, x); });
  m.inverse = VectorField([Ai, Bi](const auto& x) { return apply_blocks(Ai, Bi, x); });
  return m;
}

void OrbitalElements::validate() const {
  if (!(a > 0.0)) throw DomainError("a", "semi-major axis must be positive");
  if (!(e >= 0.0 && e < 1.0)) throw DomainError("e", "eccentricity must lie in [0, 1)");
  if (!(xi >= 0.0 && xi <= std::numbers::pi)) throw DomainError("xi", "inclination must lie in [0, pi]");
}

PhasePoint classical_delaunay(const OrbitalElements& el, double m, double k, double t, double node, double periapsis) {
  el.validate();
  const double L = std::sqrt(m * k * el.a);
  const double G = std::sqrt(m * k * el.a * (1.0 - el.e * el.e));
  return {{G * std::cos(el.xi), G, L, node, periapsis, el.n * (t - el.t0)}, Chart::delaunay};
}

ChartMap energy_time_map(const ReducedParams& rp) {
  const double m = rp.m, k = rp.k;
  ChartMap c;
  c.from = Chart::delaunay;
  c.to = Chart::delaunay;
  c.forward = VectorField([m, k](const auto& x) {
    using std::pow;
    using S = scalar_of<decltype(x)>;
    S H = -m * k * k / (2.0 * x[2] * x[2]);
    return Vec6<S>{x[0], x[1], H, x[3], x[4], k * std::sqrt(m) / pow(-2.0 * H, 1.5) * x[5]};
  });
  c.inverse = VectorField([m, k](const auto& y) {
    using std::pow;
    using std::sqrt;
    using S = scalar_of<decltype(y)>;
    S I3 = sqrt(m * k * k / (-2.0 * y[2]));
    return Vec6<S>{y[0], y[1], I3, y[3], y[4], pow(-2.0 * y[2], 1.5) / (k * std::sqrt(m)) * y[5]};
  });
  return c;
}

ScalarField delaunay_hamiltonian(const ReducedParams& rp) { return hierarchy_level(0, rp).F; }
BivectorField delaunay_bivector(const ReducedParams& rp) { return hierarchy_level(0, rp).P; }
TwoForm delaunay_form(const ReducedParams& rp) { return hierarchy_level(0, rp).omega; }

VectorField delaunay_vector_field(const ReducedParams& rp) {
  const double c = rp.m * rp.k * rp.k;
  return VectorField([c](const auto& x) {
    using S = scalar_of<decltype(x)>;
    if (value(x[2]) == 0.0) throw DomainError("I3", "I3 vanishes");
    auto v = zero_vec<S>();
    v[5] = c / (x[2] * x[2] * x[2]);
    return v;
  });
}

HierarchyLevel hierarchy_level(int h, const ReducedParams& rp) {
  if (h < 0) throw std::invalid_argument("hierarchy level must be non-negative");
  const auto N = n_tilde(rp);
  const double c = rp.m * rp.k * rp.k;
  HierarchyLevel L;
  L.h = h;
  L.F = ScalarField([c, h](const auto& x) {
    if (value(x[2]) == 0.0) throw DomainError("I3", "I3 vanishes");
    return -c / ((2.0 + h) * ipow_s(x[2], 2 + h));
  });
  L.P = BivectorField([N, h](const auto& x) {
    using S = scalar_of<decltype(x)>;
    auto m = zero_mat<S>();
    for (int j = 0; j < 3; ++j) {
      S v = std::pow(N[j], h + 1) * ipow_s(x[j], h);
      m[j][3 + j] = v;
      m[3 + j][j] = -v;
    }
    return m;
  });
  L.omega = TwoForm([N, h](const auto& x) {
    using S = scalar_of<decltype(x)>;
    auto m = zero_mat<S>();
    for (int j = 0; j < 3; ++j) {
      if (h > 0 && value(x[j]) == 0.0) throw DomainError("I" + std::to_string(j + 1), "inverse form needs I != 0");
      S v = 1.0 / (std::pow(N[j], h + 1) * ipow_s(x[j], h));
      m[j][3 + j] = v;
      m[3 + j][j] = -v;
    }
    return m;
  });
  L.T = MixedTensor([N, h](const auto& x) {
    using S = scalar_of<decltype(x)>;
    auto m = zero_mat<S>();
    for (int j = 0; j < 3; ++j) {
      S v = std::pow(N[j], h) * ipow_s(x[j], h);
      m[j][j] = v;
      m[3 + j][3 + j] = v;
    }
    return m;
  });
  return L;
}

Eigen::Matrix3d lambda_h(int h, const PhasePoint& d, const ReducedParams& rp) {
  const double M = rp.M();
  Eigen::Matrix3d L = Eigen::Matrix3d::Zero();
  L(0, 0) = std::pow(d[0], h);
  L(1, 1) = std::pow(M, h + 1) * std::pow(d[1], h);
  L(2, 2) = std::pow(d[2], h);
  return L;
}

double lambda_bracket(const ScalarField& f, const ScalarField& g, const PhasePoint& d, int h, const ReducedParams& rp) {
  const auto L = lambda_h(h, d, rp);
  const Vector6 df = gradient(f, d), dg = gradient(g, d);
  double r = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r += L(i, j) * (df(i) * dg(3 + j) - df(3 + j) * dg(i));
  return r;
}

Eigen::Vector3d recursion_eigenvalues(int h, const PhasePoint& d, const ReducedParams& rp) {
  auto T = hierarchy_level(h, rp).T(d);
  return {T[0][0], T[1][1], T[2][2]};
}

ActionAngleLevel hierarchy_in_action_angle(int h, const ReducedParams& rp) {
  auto map = delaunay_chart_map(rp);
  auto L = hierarchy_level(h, rp);
  return {transport(map, L.P), transport(map, L.omega), transport(map, L.T), transport(map, L.F)};
}

DisplayedTables displayed_action_angle_tables(int h, const PhasePoint& s, const ReducedParams& rp) {
  const double M = rp.M(), m = rp.m, k = rp.k;
  const double H = energy_from_actions({s[0], s[1], s[2]}, rp);
  const double Lt = M * s[1] + s[2], J3 = s[2];
  DisplayedTables t;
  t.P = zero_mat<double>();
  t.omega = zero_mat<double>();
  t.T = zero_mat<double>();

  const double P14 = std::pow(k * std::sqrt(-m / (2.0 * H)), h);
  const double P25 = std::pow(M, h) * std::pow(Lt, h);
  const double P36 = std::pow(J3, h);
  const double P24 = (P14 - P25) / M, P34 = M * P24, P35 = M * (P25 - P36);
  auto setP = [&](int a, int b, double v) {
    t.P[a][b] = v;
    t.P[b][a] = -v;
  };
  setP(0, 3, P14);
  setP(1, 3, P24);
  setP(1, 4, P25);
  setP(2, 3, P34);
  setP(2, 4, P35);
  setP(2, 5, P36);

  const double w41 = std::pow(std::sqrt(-2.0 * H / m) / k, h);
  const double w52 = 1.0 / (std::pow(M, h) * std::pow(Lt, h));
  const double w63 = std::pow(J3, -h);
  const double w42 = M * (w41 - w52), w43 = w42 / M, w53 = (w52 - w63) / M;
  // displayed (phi_a, J_b) entry is the dJ_b ^ dphi_a coefficient
  auto setW = [&](int phi, int J, double v) {
    t.omega[J][phi] = v;
    t.omega[phi][J] = -v;
  };
  setW(3, 0, w41);
  setW(3, 1, w42);
  setW(4, 1, w52);
  setW(3, 2, w43);
  setW(4, 2, w53);
  setW(5, 2, w63);

  // (R)^j_i -> T[j][i] on the action block, (S)^j_i -> T[3+j][3+i] on the angle block
  const double R22 = P14 + P25;
  auto R = [&](int j, int i, double v) { t.T[j - 1][i - 1] = v; };
  auto Sx = [&](int j, int i, double v) { t.T[2 + j][2 + i] = v; };
  R(1, 1, P14);
  R(3, 1, P14);
  t.R33_first = P14;
  R(2, 1, M * P14);
  R(1, 2, P14 / M);
  R(2, 2, R22);
  R(3, 2, R22 / M);
  R(2, 3, M * R22);
  R(3, 3, R22 + P36);
  Sx(1, 1, R22);
  Sx(2, 1, -P25 / M);
  Sx(1, 2, -M * P25);
  Sx(2, 2, P36 + P25);
  Sx(3, 2, -M * P36);
  Sx(2, 3, -P36 / M);
  Sx(3, 3, P36);
  return t;
}

std::vector<TableComparison> compare_action_angle_tables(int h, const PhasePoint& s, const ReducedParams& rp) {
  static const char* names[6] = {"J1", "J2", "J3", "phi1", "phi2", "phi3"};
  auto disp = displayed_action_angle_tables(h, s, rp);
  auto tr = hierarchy_in_action_angle(h, rp);
  const auto P = tr.P(s), w = tr.omega(s), T = tr.T(s);
  std::vector<TableComparison> out;
  auto add = [&](const std::string& tag, const Mat6<double>& a, const Mat6<double>& b, bool antisym) {
    for (int i = 0; i < 6; ++i)
      for (int j = antisym ? i + 1 : 0; j < 6; ++j) {
        if (a[i][j] == 0.0 && b[i][j] == 0.0) continue;
        out.push_back({tag + "[" + names[i] + "," + names[j] + "]", a[i][j], b[i][j]});
      }
  };
  add("P_h", disp.P, P, true);
  add("omega_h", disp.omega, w, true);
  add("T_h", disp.T, T, false);
  out.push_back({"T_h[J3,J3] first assignment", disp.R33_first, T[2][2]});
  return out;
}

std::vector<PhasePoint> sample_delaunay(int n, std::uint64_t seed, const ReducedParams& rp) {
  (void)rp;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<PhasePoint> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double I3 = 0.5 + 1.5 * u(rng);
    const double I2 = I3 * (0.2 + 0.8 * u(rng));
    const double I1 = I2 * (0.1 + 0.9 * u(rng));
    const double a = 2 * std::numbers::pi;
    pts.push_back({{I1, I2, I3, a * u(rng), a * u(rng), a * u(rng)}, Chart::delaunay});
  }
  return pts;
}

namespace {

double max_abs(const Matrix6& m) { return m.cwiseAbs().maxCoeff(); }

double torsion_on_frame(const MixedTensor& T, const PhasePoint& x) {
  double w = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      w = std::max(w, nijenhuis_torsion(T, coordinate_vector(i), coordinate_vector(j), x).cwiseAbs().maxCoeff());
  return w;
}

BivectorField flip_pair(const BivectorField& P, int a, int b) {
  return BivectorField([P, a, b](const auto& x) {
    auto m = P(x);
    m[a][b] = -m[a][b];
    m[b][a] = -m[b][a];
    return m;
  });
}

struct ChartSet {
  std::string chart;
  std::vector<BivectorField> P;  // levels 0..h
  TwoForm omega;
  MixedTensor T;
  ScalarField F;
  BivectorField Pprime;
  VectorField X;
  std::array<ScalarField, 3> eig;
};

void run_checks(VerificationReport& rep, int h, const ChartSet& c, const PhasePoint& x, double tol) {
  const std::string tag = "h" + std::to_string(h) + " " + c.chart + " ";
  rep.check_residual(tag + "(a) [P_h, P'] = 0", "compatibility of each hierarchy bivector with P'", x,
                     schouten_bracket(c.P[h], c.Pprime, x).max_abs(), tol);
  rep.check_residual(tag + "(b) iota_X omega_h + dF_h = 0", "bi-Hamiltonian property", x,
                     (interior_product(c.X, c.omega, x) + gradient(c.F, x)).cwiseAbs().maxCoeff(), tol);
  for (int hp = 0; hp <= h; ++hp)
    rep.check_residual(tag + "(c) [P_h, P_" + std::to_string(hp) + "] = 0", "mutual compatibility of the hierarchy",
                       x, schouten_bracket(c.P[h], c.P[hp], x).max_abs(), tol);
  rep.check_residual(tag + "(d) Nijenhuis torsion of T_h = 0", "recursion operator is Nijenhuis", x,
                     torsion_on_frame(c.T, x), tol);
  double e = 0.0;
  for (const auto& f : c.eig) e = std::max(e, std::abs(lie_derivative(c.X, f, x)));
  rep.check_residual(tag + "(e) X(eigenvalues of T_h) = 0", "eigenvalues of the recursion operator are integrals", x,
                     e, tol);
  const Matrix6 wp = to_eigen(c.omega(x)) * to_eigen(c.P[h](x));
  rep.check_residual(tag + "omega_h P_h = -I", "hierarchy forms invert the bivectors", x,
                     max_abs(wp + Matrix6::Identity()), tol);
  const Vector6 xf = to_eigen(hamiltonian_vector_field(c.P[h], c.F)(x));
  rep.check_residual(tag + "{F_h, .}_h = X_H'", "same vector field from each Hamiltonian pair", x,
                     (xf - to_eigen(c.X(x))).cwiseAbs().maxCoeff(), tol);
}

}  // namespace

VerificationReport verify_level(int h, const std::vector<PhasePoint>& delaunay_points, const ReducedParams& rp,
                                const LevelOptions& opt) {
  VerificationReport rep("hierarchy");
  rep.note("omega_h is built as the inverse of P_h in the orientation of omega' (omega_h P_h = -I), so that "
           "iota_X omega_h = -dF_h; the displayed form table is read with (phi, J) index pairs naming the "
           "dJ ^ dphi coefficient, the reading under which h = 0 reproduces omega'.");
  rep.note("(J, phi) component tables are compared against the exact pushforward through the action/angle maps; "
           "bracket, torsion and pairing assertions in that chart use the transported tensors.");
  if (opt.negative_control)
    rep.note("negative control: the (J1, phi2) component pair of the transported P_1 is sign-flipped.");

  const auto N = n_tilde(rp);
  ChartSet D;
  D.chart = "delaunay";
  for (int l = 0; l <= h; ++l) D.P.push_back(hierarchy_level(l, rp).P);
  auto L = hierarchy_level(h, rp);
  D.omega = L.omega;
  D.T = L.T;
  D.F = L.F;
  D.Pprime = D.P[0];
  D.X = delaunay_vector_field(rp);
  for (int j = 0; j < 3; ++j)
    D.eig[j] = ScalarField([j, h, n = N[j]](const auto& x) { return std::pow(n, h) * ipow_s(x[j], h); });

  auto map = delaunay_chart_map(rp);
  ChartSet J;
  J.chart = "action_angle";
  for (int l = 0; l <= h; ++l) J.P.push_back(transport(map, D.P[l]));
  if (opt.negative_control && h >= 1) J.P[1] = flip_pair(J.P[1], 0, 4);
  J.omega = transport(map, D.omega);
  J.T = transport(map, D.T);
  J.F = transport(map, D.F);
  J.Pprime = J.P[0];
  J.X = transport(map, D.X);
  for (int j = 0; j < 3; ++j) J.eig[j] = transport(map, D.eig[j]);

  for (const auto& d : delaunay_points) {
    run_checks(rep, h, D, d, opt.tolerance);
    const PhasePoint s = action_angle_from_delaunay(d, rp);
    run_checks(rep, h, J, s, opt.tolerance);
    for (const auto& c : compare_action_angle_tables(h, s, rp)) {
      const double r = std::abs(c.displayed - c.transported);
      rep.discrepancy("h" + std::to_string(h) + " table " + c.name, "(J, phi) component tables of the hierarchy", s,
                      c.displayed, c.transported, r <= opt.tolerance ? "agrees" : "disagrees");
    }
  }
  return rep;
}

EigenvalueDrift eigenvalue_drift(const PhasePoint& spherical0, const ReducedParams& rp, int h_max, double dt,
                                 int n_steps) {
  auto tr = integrate_reduced(spherical0, rp, dt, n_steps);
  EigenvalueDrift out;
  out.truncated = tr.truncated;
  out.steps = static_cast<int>(tr.states.size()) - 1;
  const Eigen::Matrix3d A = action_map(rp.M());
  auto eig = [&](const PhasePoint& s) {
    Eigen::Vector3d I = A * actions_from_state(s, rp).J;
    std::vector<double> v;
    for (int h = 1; h <= h_max; ++h) {
      PhasePoint d{{I(0), I(1), I(2), 0, 0, 0}, Chart::delaunay};
      auto e = recursion_eigenvalues(h, d, rp);
      v.insert(v.end(), e.data(), e.data() + 3);
    }
    return v;
  };
  const auto e0 = eig(tr.states.front());
  for (const auto& s : tr.states) {
    const auto e = eig(s);
    for (std::size_t i = 0; i < e.size(); ++i)
      out.drift = std::max(out.drift, std::abs(e[i] - e0[i]) / std::max(1.0, std::abs(e0[i])));
  }
  return out;
}

}  // namespace nckepler
