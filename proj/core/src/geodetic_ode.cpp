#include "geodivp/geodetic_ode.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "geodivp/errors.hpp"

namespace geodivp {

namespace {

void require_off_pole(double phi) {
  if (!(std::abs(phi) < std::numbers::pi / 2)) {
    throw PoleSingularityError("geodetic formulation is singular at latitude " +
                               std::to_string(rad_to_deg(phi)) +
                               " deg; use the cartesian system for polar geodesics");
  }
}

}  // namespace

MetricCoefficients first_fundamental_form(const Ellipsoid& ell, double phi) {
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  const double w = 1.0 - ell.e2() * s * s;
  const double a2 = ell.a() * ell.a();
  return {a2 * ell.ep() * ell.ep() / (w * w * w), 0.0, a2 * c * c / w};
}

ChristoffelTriple christoffel(const Ellipsoid& ell, double phi) {
  require_off_pole(phi);
  const double s = std::sin(phi);
  const double w = 1.0 - ell.e2() * s * s;
  const double s2 = std::sin(2.0 * phi);
  return {
      3.0 * ell.e2() * s2 / (2.0 * w),
      w * s2 / (2.0 * ell.ep()),
      -ell.ep() * std::tan(phi) / w,
  };
}

StateVec<4> geodetic_rhs(const Ellipsoid& ell, const StateVec<4>& st) {
  const auto [phi, dphi, lam, dlam] = st;
  static_cast<void>(lam);
  const ChristoffelTriple g = christoffel(ell, phi);
  return {
      dphi,
      -g.g111 * dphi * dphi - g.g122 * dlam * dlam,
      dlam,
      -2.0 * g.g212 * dphi * dlam,
  };
}

GeodeticState initial_geodetic_state(const Ellipsoid& ell, double phi0, double lam0, SinCos alpha0) {
  require_off_pole(phi0);
  const double m = meridian_radius(ell, phi0);
  const double n = prime_vertical_radius(ell, phi0);
  return {phi0, alpha0.cos / m, lam0, alpha0.sin / (n * std::cos(phi0))};
}

GeodeticState initial_geodetic_state(const Ellipsoid& ell, double phi0, double lam0, double alpha0) {
  return initial_geodetic_state(ell, phi0, lam0, sincos_rad(alpha0));
}

double azimuth_geodetic(const Ellipsoid& ell, const GeodeticState& st) {
  const double u = meridian_radius(ell, st.phi) * st.dphi;
  const double v = prime_vertical_radius(ell, st.phi) * std::cos(st.phi) * st.dlam;
  if (u == 0.0 && v == 0.0) throw DegenerateStateError("zero direction: azimuth undefined");
  return wrap_azimuth(rad_to_deg(std::atan2(v, u)));
}

double clairaut_geodetic(const Ellipsoid& ell, const GeodeticState& st) {
  return first_fundamental_form(ell, st.phi).G * st.dlam;
}

double unit_speed_residual(const Ellipsoid& ell, const GeodeticState& st) {
  const MetricCoefficients m = first_fundamental_form(ell, st.phi);
  return m.E * st.dphi * st.dphi + m.G * st.dlam * st.dlam - 1.0;
}

}  // namespace geodivp
