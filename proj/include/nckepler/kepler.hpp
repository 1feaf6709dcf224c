#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nckepler/nc_phase_space.hpp"

namespace nckepler {

struct KeplerAux {
  double Y = 0.0;
  std::array<double, 3> sigma{};
  std::array<double, 3> sigma_tilde{};
  Eigen::Matrix3d R = Eigen::Matrix3d::Zero();
};

// with_coupling: sigma = 1/m + (k/4Y^3) sum alpha^2, sigma~ = k/Y^3 + (1/4m) sum lambda^2.
// as_printed drops the k factors (agrees only at k = 1).
enum class SigmaConvention { with_coupling, as_printed };
// literal: the double sums skip nu == mu; unrestricted keeps them.
enum class IndexRestriction { literal, unrestricted };

template <class S> S deformed_radius_t(const Vec6<S>& x, const DeformationParams& p) {
  using std::sqrt;
  auto y = primed_coords(x, p);
  S r2 = y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
  if (value(r2) == 0.0) throw SingularConfiguration("deformed radius vanishes");
  return sqrt(r2);
}

template <class S> S hamiltonian_t(const Vec6<S>& x, const DeformationParams& p) {
  auto y = primed_coords(x, p);
  S kin = (y[3] * y[3] + y[4] * y[4] + y[5] * y[5]) / (2.0 * p.m);
  return kin - p.k / deformed_radius_t(x, p);
}

double deformed_radius(const PhasePoint& x, const DeformationParams& p);
double hamiltonian(const PhasePoint& x, const DeformationParams& p);
ScalarField hamiltonian_field(const DeformationParams& p);
ScalarField deformed_radius_field(const DeformationParams& p);

KeplerAux kepler_aux(const PhasePoint& x, const DeformationParams& p,
                     SigmaConvention sc = SigmaConvention::with_coupling);

// (qdot, pdot) from the unprimed closed forms.
Vector6 hamilton_rhs_closed_form(const PhasePoint& x, const DeformationParams& p,
                                 SigmaConvention sc = SigmaConvention::with_coupling,
                                 IndexRestriction ir = IndexRestriction::literal);
// (qdot, pdot) from the primed-coordinate forms. printed_pdot_sign drops the overall minus on pdot.
Vector6 hamilton_rhs_primed(const PhasePoint& x, const DeformationParams& p, bool printed_pdot_sign = false);

// X_H' = P_nc dH'
VectorField hamiltonian_vector_field_nc(const DeformationParams& p);

// ---- integration ----

enum class Method { rk4, implicit_midpoint };

struct Monitor {
  std::string name;
  ScalarField f;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<PhasePoint> states;
  std::vector<std::string> monitor_names;
  std::vector<std::vector<double>> monitors;  // one row per state
  bool truncated = false;
  std::string termination_reason;
};

// Integration aborts (truncated trajectory) when |position(x)| drops below
// floor_ratio * |position(x0)| at any stage or along the chord of a step.
struct SingularityGuard {
  std::function<std::array<double, 3>(const Vec6<double>&)> position;
  double floor_ratio = 1e-9;
};

Trajectory integrate_field(const VectorField& X, const PhasePoint& x0, double dt, int n_steps, Method method,
                           const std::vector<Monitor>& monitors, const SingularityGuard& guard = {});

Trajectory integrate(const PhasePoint& x0, const DeformationParams& p, double dt, int n_steps, Method method,
                     const std::vector<Monitor>& monitors);

void write_csv(const Trajectory& t, std::ostream& os);

}  // namespace nckepler
