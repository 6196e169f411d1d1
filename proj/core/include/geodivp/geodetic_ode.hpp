#pragma once

#include "geodivp/angles.hpp"
#include "geodivp/integrator.hpp"
#include "geodivp/spheroid.hpp"

namespace geodivp {

/// (phi, dphi/ds, lambda, dlambda/ds); angles in radians, rates in rad/m.
struct GeodeticState {
  double phi = 0.0;
  double dphi = 0.0;
  double lam = 0.0;
  double dlam = 0.0;

  StateVec<4> vec() const noexcept { return {phi, dphi, lam, dlam}; }
  static GeodeticState from(const StateVec<4>& v) noexcept { return {v[0], v[1], v[2], v[3]}; }
};

/// First fundamental form in (phi, lambda). F is always zero.
struct MetricCoefficients {
  double E;
  double F;
  double G;
};

struct ChristoffelTriple {
  double g111;  // Gamma^1_11
  double g122;  // Gamma^1_22
  double g212;  // Gamma^2_12
};

MetricCoefficients first_fundamental_form(const Ellipsoid& ell, double phi);

/// Throws PoleSingularityError for |phi| >= pi/2.
ChristoffelTriple christoffel(const Ellipsoid& ell, double phi);

StateVec<4> geodetic_rhs(const Ellipsoid& ell, const StateVec<4>& st);

/// Unit-speed state heading along alpha0 (all radians). Throws
/// PoleSingularityError at the poles; use the Cartesian system there.
GeodeticState initial_geodetic_state(const Ellipsoid& ell, double phi0, double lam0, double alpha0);
GeodeticState initial_geodetic_state(const Ellipsoid& ell, double phi0, double lam0, SinCos alpha0);

/// Azimuth in degrees, [0, 360). Throws DegenerateStateError on a zero direction.
double azimuth_geodetic(const Ellipsoid& ell, const GeodeticState& st);

/// Clairaut constant G(phi) * dlambda/ds, in metres.
double clairaut_geodetic(const Ellipsoid& ell, const GeodeticState& st);

/// E dphi^2 + G dlam^2 - 1.
double unit_speed_residual(const Ellipsoid& ell, const GeodeticState& st);

/// Vector field adaptor for the integrator.
struct GeodeticField {
  const Ellipsoid* ell;
  StateVec<4> operator()(const StateVec<4>& y) const { return geodetic_rhs(*ell, y); }
};

}  // namespace geodivp
