#include "nckepler/action_angle.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace nckepler {

void ReducedParams::validate() const {
  if (!(m > 0.0) || !(k > 0.0)) throw InvalidDeformation("m and k must be positive");
  if (!(thetadot_ratio > 0.0)) throw InvalidDeformation("thetadot ratio must be positive");
  if (std::abs(thetadot) > thetadot_ratio * m) throw InvalidDeformation("|thetadot| exceeds the small-rate bound");
  if (!(1.0 + std::numbers::sqrt2 * phidot / m + phidot * phidot / (2.0 * m) > 0.0))
    throw InvalidDeformation("M^2 must be positive");
}

nlohmann::json to_json(const ReducedParams& rp) {
  return {{"thetadot", rp.thetadot}, {"phidot", rp.phidot}, {"mass", rp.m}, {"k", rp.k},
          {"thetadot_ratio", rp.thetadot_ratio}};
}

ReducedParams reduced_params_from_json(const nlohmann::json& j) {
  ReducedParams rp;
  rp.thetadot = j.value("thetadot", 0.0);
  rp.phidot = j.value("phidot", 0.0);
  rp.m = j.value("mass", 1.0);
  rp.k = j.value("k", 1.0);
  rp.thetadot_ratio = j.value("thetadot_ratio", 0.01);
  rp.validate();
  return rp;
}

Eigen::Matrix3d lambda_matrix(const ReducedParams& rp, double phi) {
  auto l = lambda_matrix_t(rp, phi);
  Eigen::Matrix3d r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = l[i][j];
  return r;
}

PhasePoint to_spherical(const PhasePoint& x) {
  if (x.chart != Chart::cartesian) throw DomainError("chart", "expected a cartesian state");
  if (x[0] == 0.0 && x[1] == 0.0) throw DomainError("theta", "spherical chart undefined on the polar axis");
  PhasePoint s{cartesian_to_spherical_t(x.x), Chart::spherical};
  validate(s);
  return s;
}

PhasePoint to_cartesian(const PhasePoint& s) {
  if (s.chart != Chart::spherical) throw DomainError("chart", "expected a spherical state");
  validate(s);
  return {spherical_to_cartesian_t(s.x), Chart::cartesian};
}

ChartMap spherical_chart_map() {
  ChartMap m;
  m.from = Chart::cartesian;
  m.to = Chart::spherical;
  m.forward = VectorField([](const auto& x) { return cartesian_to_spherical_t(x); });
  m.inverse = VectorField([](const auto& s) { return spherical_to_cartesian_t(s); });
  return m;
}

namespace {
// P and omega share the pattern (omega * P = -I).
Mat6<double> canonical_matrix(Chart c) {
  auto m = zero_mat<double>();
  const bool actions_first = c == Chart::action_angle || c == Chart::delaunay;
  for (int i = 0; i < 3; ++i) {
    int a = actions_first ? i : 3 + i;  // momentum-like index
    int b = actions_first ? 3 + i : i;
    m[a][b] = 1.0;
    m[b][a] = -1.0;
  }
  return m;
}
}  // namespace

BivectorField canonical_bivector(Chart c) { return constant_bivector(canonical_matrix(c)); }
TwoForm canonical_form(Chart c) { return constant_two_form(canonical_matrix(c)); }

ReducedConditions reduced_hamiltonian_conditions_check(const PhasePoint& x, const ReducedParams& rp,
                                                       const Eigen::Matrix3d& alpha) {
  Eigen::Vector3d q(x[0], x[1], x[2]);
  Eigen::Vector3d lq = lambda_matrix(rp, std::atan2(x[1], x[0])) * q;
  ReducedConditions c;
  c.quadratic = lq.squaredNorm();
  c.quadratic_holds = c.quadratic <= 1e-10;
  c.alpha_zero = alpha.isZero(0.0);
  return c;
}

namespace {
template <class S> S varpi_t(const Vec6<S>& x, const ReducedParams& rp) {
  using std::atan2;
  auto l = lambda_matrix_t(rp, atan2(x[1], x[0]));
  // The epsilon-weighted angular momentum sum cancels identically; kept for fidelity.
  S L[3] = {x[1] * x[5] - x[2] * x[4], x[2] * x[3] - x[0] * x[5], x[0] * x[4] - x[1] * x[3]};
  S eps(0.0), quad(0.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int kk = 0; kk < 3; ++kk) eps += static_cast<double>((i - j) * (j - kk) * (kk - i) / 2) * L[kk];
  for (int i = 0; i < 3; ++i) {
    S lq(0.0);
    for (int j = 0; j < 3; ++j) lq += l[i][j] * x[j];
    quad += lq * lq;
  }
  return -eps / (4.0 * rp.m) + quad / (8.0 * rp.m);
}
}  // namespace

ScalarField varpi_field(const ReducedParams& rp) {
  return ScalarField([rp](const auto& x) { return varpi_t(x, rp); });
}

ScalarField reduced_cartesian_hamiltonian(const ReducedParams& rp) {
  return ScalarField([rp](const auto& x) {
    using std::sqrt;
    auto r = sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    return (x[3] * x[3] + x[4] * x[4] + x[5] * x[5]) / (2.0 * rp.m) + varpi_t(x, rp) - rp.k / r;
  });
}

double spherical_hamiltonian(const PhasePoint& s, const ReducedParams& rp) { return spherical_hamiltonian_t(s.x, rp); }

ScalarField spherical_hamiltonian_field(const ReducedParams& rp) {
  return ScalarField([rp](const auto& s) { return spherical_hamiltonian_t(s, rp); });
}

VectorField spherical_vector_field(const ReducedParams& rp) {
  return hamiltonian_vector_field(canonical_bivector(Chart::spherical), spherical_hamiltonian_field(rp));
}

Vec6<double> spherical_vector_field_as_printed(const PhasePoint& s, const ReducedParams& rp) {
  const double r = s[0], st = std::sin(s[1]), ct = std::cos(s[1]), M = rp.M(), m = rp.m;
  const double g = 1.0 + (rp.thetadot / m) * std::sin(2.0 * s[2]);
  const double r2 = r * r, s2 = st * st;
  return {s[3] / m,
          M * M * s[4] / (m * r2),
          g * s[5] / (m * r2 * s2),
          -(m * rp.k - (M * M * s[4] * s[4] * s2 + g * s[5] * s[5]) / (r * s2)) / (m * r2),
          g * s[5] * s[5] * ct / (m * r2 * s2 * st),
          -rp.thetadot * std::cos(2.0 * s[2]) / (m * m * r2 * s2)};
}

FirstIntegrals first_integrals(const PhasePoint& s, const ReducedParams& rp) {
  validate(s);
  FirstIntegrals f;
  f.M = rp.M();
  f.D_phi = d_phi_t(s.x, rp);
  f.L_tilde = l_tilde_t(s.x, rp);
  if (std::abs(f.D_phi) <= f.L_tilde && f.L_tilde > 0.0) f.inclination = std::acos(f.D_phi / f.L_tilde);
  return f;
}

ScalarField d_phi_field(const ReducedParams& rp) {
  return ScalarField([rp](const auto& s) { return d_phi_t(s, rp); });
}

ScalarField l_tilde_field(const ReducedParams& rp) {
  return ScalarField([rp](const auto& s) { return l_tilde_t(s, rp); });
}

Eigen::Vector3d actions_from_integrals(double E, double L_tilde, double D_phi, const ReducedParams& rp) {
  if (!(E < 0.0)) throw DomainError("E", "action-angle variables need a bound orbit (E < 0)");
  if (D_phi == 0.0) throw DomainError("L", "D_phi must be nonzero");
  if (L_tilde < std::abs(D_phi)) throw DomainError("L", "L_tilde < |D_phi|");
  const double M = rp.M();
  return {-L_tilde + rp.m * rp.k / std::sqrt(-2.0 * rp.m * E), (L_tilde - D_phi) / M, D_phi};
}

double energy_from_actions(const Eigen::Vector3d& J, const ReducedParams& rp) {
  return energy_from_actions_t(Vec6<double>{J(0), J(1), J(2), 0.0, 0.0, 0.0}, rp);
}

ActionsFromState actions_from_state(const PhasePoint& s, const ReducedParams& rp) {
  auto f = first_integrals(s, rp);
  ActionsFromState a;
  a.energy = spherical_hamiltonian(s, rp);
  a.J = actions_from_integrals(a.energy, f.L_tilde, f.D_phi, rp);
  const double g = 1.0 + (rp.thetadot / rp.m) * std::sin(2.0 * s[2]);
  a.j3_exact = f.D_phi / std::sqrt(g);
  a.regime_ok = std::abs(rp.thetadot * std::sin(2.0 * s[2])) <= rp.thetadot_ratio * rp.m;
  return a;
}

namespace {
// arcsin with a rounding allowance at the endpoints; nullopt outside.
std::optional<double> safe_asin(double v) {
  if (!std::isfinite(v) || std::abs(v) > 1.0 + 1e-12) return std::nullopt;
  return std::asin(std::clamp(v, -1.0, 1.0));
}
}  // namespace

AngleEvaluation evaluate_angles(const PhasePoint& s, const Eigen::Vector3d& J, const ReducedParams& rp) {
  validate(s);
  AngleEvaluation a;
  a.outbound = s[3] >= 0.0;
  const double M = rp.M(), m = rp.m, k = rp.k, r = s[0];
  const double S = J(0) + M * J(1) + J(2), L = M * J(1) + J(2);
  const double S2 = S * S;
  const double Q = S * std::sqrt(S2 - L * L);
  const double U = L / std::sqrt(L * L - J(2) * J(2));
  a.G = -m * m * k * k * r * r + 2.0 * m * k * S2 * r - L * L * S2;
  double G = a.G;
  if (G < 0.0 && G > -1e-12 * S2 * S2) G = 0.0;

  if (G < 0.0) {
    a.failures[0] = "phi1: radicand G-tilde is negative";
  } else if (auto as = safe_asin((m * k * r - S2) / Q)) {
    a.values[0] = -std::sqrt(G) / S2 + *as;
  } else {
    a.failures[0] = "phi1: arcsin argument outside [-1, 1]";
  }

  if (a.values[0]) {
    auto t1 = safe_asin((1.0 - L / (m * k * r)) * std::pow(S, 1.5) / Q);
    auto t2 = safe_asin(U * std::cos(s[1]));
    if (t1 && t2)
      a.values[1] = M * *a.values[0] - M * *t1 + M * *t2;
    else
      a.failures[1] = t1 ? "phi2: arcsin(U cos theta) argument outside [-1, 1]"
                         : "phi2: radial arcsin argument outside [-1, 1]";
  } else {
    a.failures[1] = "phi2: depends on phi1";
  }

  if (a.values[1]) {
    auto t = safe_asin(J(2) * std::cos(s[1]) / std::sin(s[1]) / std::sqrt(L * L - J(2) * J(2)));
    if (t)
      a.values[2] = *a.values[1] / M + *t + s[2];
    else
      a.failures[2] = "phi3: arcsin argument outside [-1, 1]";
  } else {
    a.failures[2] = "phi3: depends on phi2";
  }
  return a;
}

Eigen::Vector3d angles_from_state(const PhasePoint& s, const Eigen::Vector3d& J, const ReducedParams& rp) {
  auto a = evaluate_angles(s, J, rp);
  static const char* names[3] = {"phi1", "phi2", "phi3"};
  for (int i = 0; i < 3; ++i)
    if (!a.values[i]) throw DomainError(names[i], "turning-point error: " + a.failures[i]);
  return {*a.values[0], *a.values[1], *a.values[2]};
}

PhasePoint to_action_angle(const PhasePoint& s, const ReducedParams& rp) {
  auto a = actions_from_state(s, rp);
  auto ang = angles_from_state(s, a.J, rp);
  return {{a.J(0), a.J(1), a.J(2), ang(0), ang(1), ang(2)}, Chart::action_angle};
}

ReducedStructures reduced_structures(const ReducedParams& rp) {
  ReducedStructures r;
  r.P = canonical_bivector(Chart::action_angle);
  r.omega = canonical_form(Chart::action_angle);
  r.H = ScalarField([rp](const auto& x) { return energy_from_actions_t(x, rp); });
  r.X = VectorField([rp](const auto& x) {
    using S = scalar_of<decltype(x)>;
    const double M = rp.M();
    S s = x[0] + M * x[1] + x[2];
    if (!(value(s) > 0.0)) throw DomainError("J", "J1 + M J2 + J3 must be positive");
    S w = rp.m * rp.k * rp.k / (s * s * s);
    auto v = zero_vec<S>();
    v[3] = w;
    v[4] = M * w;
    v[5] = w;
    return v;
  });
  return r;
}

Eigen::Vector3d frequencies(const Eigen::Vector3d& J, const ReducedParams& rp) {
  const double M = rp.M(), s = J(0) + M * J(1) + J(2);
  if (!(s > 0.0)) throw DomainError("J", "J1 + M J2 + J3 must be positive");
  const double w = rp.m * rp.k * rp.k / (s * s * s);
  return {w, M * w, w};
}

double isochronous_derivative(double E, const ReducedParams& rp) {
  if (!(E < 0.0)) throw DomainError("E", "bound orbit required");
  return std::pow(-2.0 * E, 1.5) / (rp.k * std::sqrt(rp.m));
}

double maclaurin_deviation(const ReducedParams& rp, double phi) {
  return std::abs(1.0 / std::sqrt(1.0 + (rp.thetadot / rp.m) * std::sin(2.0 * phi)) - 1.0);
}

double j_theta_quadrature(double L_tilde, double D_phi, const ReducedParams& rp) {
  if (L_tilde < std::abs(D_phi)) throw DomainError("L", "L_tilde < |D_phi|");
  // cos(theta) = c0 sin(u) maps the libration interval onto (-pi/2, pi/2) and removes the root singularities.
  const double c02 = 1.0 - D_phi * D_phi / (L_tilde * L_tilde);
  auto f = [&](double u) {
    const double su = std::sin(u), cu = std::cos(u);
    return L_tilde * c02 * cu * cu / (1.0 - c02 * su * su);
  };
  const double pi = std::numbers::pi;
  double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, -pi / 2, pi / 2, 15, 1e-14);
  return integral / (pi * rp.M());
}

Trajectory integrate_reduced(const PhasePoint& s0, const ReducedParams& rp, double dt, int n_steps, Method method) {
  validate(s0);
  std::vector<Monitor> mons = {{"D_phi", d_phi_field(rp)}, {"L_tilde", l_tilde_field(rp)},
                               {"H", spherical_hamiltonian_field(rp)}};
  SingularityGuard guard;
  guard.position = [](const Vec6<double>& s) {
    auto c = spherical_to_cartesian_t(s);
    return std::array<double, 3>{c[0], c[1], c[2]};
  };
  auto tr = integrate_field(spherical_vector_field(rp), s0, dt, n_steps, method, mons, guard);
  for (auto& st : tr.states) st.chart = Chart::spherical;
  return tr;
}

}  // namespace nckepler
