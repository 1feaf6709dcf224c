#include "nckepler/kepler.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace nckepler {

double deformed_radius(const PhasePoint& x, const DeformationParams& p) { return deformed_radius_t(x.x, p); }
double hamiltonian(const PhasePoint& x, const DeformationParams& p) { return hamiltonian_t(x.x, p); }

ScalarField hamiltonian_field(const DeformationParams& p) {
  return ScalarField([p](const auto& x) { return hamiltonian_t(x, p); });
}

ScalarField deformed_radius_field(const DeformationParams& p) {
  return ScalarField([p](const auto& x) { return deformed_radius_t(x, p); });
}

KeplerAux kepler_aux(const PhasePoint& x, const DeformationParams& p, SigmaConvention sc) {
  KeplerAux a;
  a.Y = deformed_radius(x, p);
  const double Y3 = a.Y * a.Y * a.Y;
  const double kc = sc == SigmaConvention::with_coupling ? p.k : 1.0;
  for (int mu = 0; mu < 3; ++mu) {
    double sa = 0.0, sl = 0.0;
    for (int i = 0; i < 3; ++i) {
      sa += p.alpha(i, mu) * p.alpha(i, mu);
      sl += p.lambda(i, mu) * p.lambda(i, mu);
    }
    a.sigma[mu] = 1.0 / p.m + kc * sa / (4.0 * Y3);
    a.sigma_tilde[mu] = kc / Y3 + sl / (4.0 * p.m);
    for (int s = 0; s < 3; ++s) a.R(mu, s) = p.lambda(mu, s) / (2.0 * p.m) - p.alpha(s, mu) * p.k / (2.0 * Y3);
  }
  return a;
}

Vector6 hamilton_rhs_closed_form(const PhasePoint& x, const DeformationParams& p, SigmaConvention sc,
                                 IndexRestriction ir) {
  const KeplerAux a = kepler_aux(x, p, sc);
  const auto th = theta_weights(p);
  const double Y3 = a.Y * a.Y * a.Y;
  Vector6 r;
  for (int mu = 0; mu < 3; ++mu) {
    const double q_mu = x[mu], p_mu = x[3 + mu];
    double qdot = a.sigma[mu] * p_mu;
    double pdot = a.sigma_tilde[mu] * q_mu;
    for (int s = 0; s < 3; ++s) {
      qdot += a.R(mu, s) * x[s];
      pdot -= a.R(mu, s) * x[3 + s];
    }
    for (int l = 0; l < 3; ++l)
      for (int nu = 0; nu < 3; ++nu) {
        if (ir == IndexRestriction::literal && nu == mu) continue;
        qdot += p.k / (4.0 * Y3) * p.alpha(l, mu) * p.alpha(l, nu) * x[3 + nu];
        pdot += 1.0 / (4.0 * p.m) * p.lambda(l, mu) * p.lambda(l, nu) * x[nu];
      }
    r(mu) = qdot / th[mu];
    r(3 + mu) = -pdot / th[mu];
  }
  return r;
}

Vector6 hamilton_rhs_primed(const PhasePoint& x, const DeformationParams& p, bool printed_pdot_sign) {
  const auto th = theta_weights(p);
  const auto y = primed_coords(x.x, p);
  const double Y = deformed_radius(x, p);
  const double Y3 = Y * Y * Y;
  Vector6 r;
  for (int i = 0; i < 3; ++i) {
    double qdot = y[3 + i] / p.m;
    double pdot = p.k * y[i] / Y3;
    for (int j = 0; j < 3; ++j) {
      qdot += p.k / (2.0 * Y3) * p.alpha(i, j) * y[j];
      pdot += p.lambda(j, i) * y[3 + j] / (2.0 * p.m);
    }
    r(i) = qdot / th[i];
    r(3 + i) = (printed_pdot_sign ? 1.0 : -1.0) * pdot / th[i];
  }
  return r;
}

VectorField hamiltonian_vector_field_nc(const DeformationParams& p) {
  return hamiltonian_vector_field(nc_bivector(p), hamiltonian_field(p));
}

// ---- integration ----

namespace {

using State = Vec6<double>;

State axpy(const State& x, double a, const State& v) {
  State r;
  for (int i = 0; i < 6; ++i) r[i] = x[i] + a * v[i];
  return r;
}

double norm3(const std::array<double, 3>& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

// Distance from the origin to the segment a-b.
double chord_distance(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  std::array<double, 3> d{b[0] - a[0], b[1] - a[1], b[2] - a[2]};
  const double dd = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
  double t = 0.0;
  if (dd > 0.0) t = std::clamp(-(a[0] * d[0] + a[1] * d[1] + a[2] * d[2]) / dd, 0.0, 1.0);
  return norm3({a[0] + t * d[0], a[1] + t * d[1], a[2] + t * d[2]});
}

struct Singular {
  std::string reason;
};

}  // namespace

Trajectory integrate_field(const VectorField& X, const PhasePoint& x0, double dt, int n_steps, Method method,
                           const std::vector<Monitor>& monitors, const SingularityGuard& guard) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (n_steps < 0) throw std::invalid_argument("n_steps must be non-negative");
  Trajectory tr;
  for (const auto& m : monitors) tr.monitor_names.push_back(m.name);

  const double floor = guard.position ? guard.floor_ratio * norm3(guard.position(x0.x)) : 0.0;
  auto check = [&](const State& s) {
    if (guard.position && norm3(guard.position(s)) < floor) throw Singular{"singularity: radius below guard"};
  };
  auto f = [&](const State& s) {
    check(s);
    State v = X(s);
    for (double c : v)
      if (!std::isfinite(c)) throw Singular{"singularity: non-finite vector field"};
    return v;
  };
  auto record = [&](double t, const State& s) {
    tr.times.push_back(t);
    tr.states.push_back({s, x0.chart});
    std::vector<double> row;
    row.reserve(monitors.size());
    for (const auto& m : monitors) row.push_back(m.f(s));
    tr.monitors.push_back(std::move(row));
  };

  State x = x0.x;
  if (guard.position && !(norm3(guard.position(x)) > 0.0)) throw SingularConfiguration("initial state is singular");
  record(0.0, x);
  for (int n = 0; n < n_steps; ++n) {
    State next;
    try {
      if (method == Method::rk4) {
        State k1 = f(x);
        State k2 = f(axpy(x, 0.5 * dt, k1));
        State k3 = f(axpy(x, 0.5 * dt, k2));
        State k4 = f(axpy(x, dt, k3));
        for (int i = 0; i < 6; ++i) next[i] = x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      } else {
        next = axpy(x, dt, f(x));
        bool converged = false;
        for (int it = 0; it < 50; ++it) {
          State mid;
          for (int i = 0; i < 6; ++i) mid[i] = 0.5 * (x[i] + next[i]);
          State cand = axpy(x, dt, f(mid));
          double res = 0.0;
          for (int i = 0; i < 6; ++i) res = std::max(res, std::abs(cand[i] - next[i]));
          next = cand;
          if (res < 1e-12) {
            converged = true;
            break;
          }
        }
        if (!converged) throw StepFailure("implicit midpoint fixed point did not converge at step " + std::to_string(n));
      }
      check(next);
      if (guard.position && chord_distance(guard.position(x), guard.position(next)) < floor)
        throw Singular{"singularity: step passes through the singular point"};
    } catch (const Singular& s) {
      tr.truncated = true;
      tr.termination_reason = s.reason;
      return tr;
    } catch (const SingularConfiguration& e) {
      tr.truncated = true;
      tr.termination_reason = std::string("singularity: ") + e.what();
      return tr;
    }
    x = next;
    record(dt * (n + 1), x);
  }
  return tr;
}

Trajectory integrate(const PhasePoint& x0, const DeformationParams& p, double dt, int n_steps, Method method,
                     const std::vector<Monitor>& monitors) {
  if (x0.chart != Chart::cartesian) throw DomainError("chart", "integration requires the cartesian chart");
  SingularityGuard g;
  g.position = [p](const Vec6<double>& s) {
    auto y = primed_coords(s, p);
    return std::array<double, 3>{y[0], y[1], y[2]};
  };
  return integrate_field(hamiltonian_vector_field_nc(p), x0, dt, n_steps, method, monitors, g);
}

void write_csv(const Trajectory& t, std::ostream& os) {
  const Chart chart = t.states.empty() ? Chart::cartesian : t.states.front().chart;
  switch (chart) {
    case Chart::cartesian: os << "t,q1,q2,q3,p1,p2,p3"; break;
    case Chart::spherical: os << "t,r,theta,phi,p_r,p_theta,p_phi"; break;
    case Chart::action_angle: os << "t,J1,J2,J3,phi1,phi2,phi3"; break;
    case Chart::delaunay: os << "t,I1,I2,I3,vphi1,vphi2,vphi3"; break;
  }
  for (const auto& n : t.monitor_names) os << ',' << n;
  os << '\n';
  os << std::setprecision(17);
  for (std::size_t i = 0; i < t.times.size(); ++i) {
    os << t.times[i];
    for (double c : t.states[i].x) os << ',' << c;
    for (double v : t.monitors[i]) os << ',' << v;
    os << '\n';
  }
}

}  // namespace nckepler
