#include "nckepler/fields.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nckepler {

std::string to_string(Chart c) {
  switch (c) {
    case Chart::cartesian: return "cartesian";
    case Chart::spherical: return "spherical";
    case Chart::action_angle: return "action_angle";
    case Chart::delaunay: return "delaunay";
  }
  return "unknown";
}

Chart chart_from_string(const std::string& s) {
  if (s == "cartesian") return Chart::cartesian;
  if (s == "spherical") return Chart::spherical;
  if (s == "action_angle") return Chart::action_angle;
  if (s == "delaunay") return Chart::delaunay;
  throw std::invalid_argument("unknown chart: " + s);
}

void validate(const PhasePoint& p, double M) {
  for (int i = 0; i < 6; ++i)
    if (!std::isfinite(p[i])) throw DomainError("x" + std::to_string(i + 1), "non-finite coordinate");
  switch (p.chart) {
    case Chart::cartesian: break;
    case Chart::spherical:
      if (!(p[0] > 0.0)) throw DomainError("r", "spherical chart requires r > 0");
      if (!(p[1] > 0.0 && p[1] < std::numbers::pi)) throw DomainError("theta", "spherical chart requires theta in (0, pi)");
      break;
    case Chart::action_angle:
      if (p[0] + M * p[1] + p[2] == 0.0) throw DomainError("J", "J1 + M J2 + J3 vanishes");
      break;
    case Chart::delaunay:
      if (p[2] == 0.0) throw DomainError("I3", "I3 vanishes");
      break;
  }
}

ScalarField constant_scalar(double c) {
  return ScalarField([c](const auto& x) { return scalar_of<decltype(x)>(c); });
}

ScalarField coordinate_function(int i) {
  return ScalarField([i](const auto& x) { return x[i]; });
}

VectorField constant_vector(const Vec6<double>& v) {
  return VectorField([v](const auto& x) { return lift<scalar_of<decltype(x)>>(v); });
}

VectorField coordinate_vector(int i) {
  Vec6<double> v{};
  v[i] = 1.0;
  return constant_vector(v);
}

namespace {
template <class S> Mat6<S> lift_mat(const Mat6<double>& m) {
  Mat6<S> r;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) r[a][b] = S(m[a][b]);
  return r;
}
}  // namespace

BivectorField constant_bivector(const Mat6<double>& m) {
  return BivectorField([m](const auto& x) { return lift_mat<scalar_of<decltype(x)>>(m); });
}

TwoForm constant_two_form(const Mat6<double>& m) {
  return TwoForm([m](const auto& x) { return lift_mat<scalar_of<decltype(x)>>(m); });
}

MixedTensor constant_mixed(const Mat6<double>& m) {
  return MixedTensor([m](const auto& x) { return lift_mat<scalar_of<decltype(x)>>(m); });
}

}  // namespace nckepler
