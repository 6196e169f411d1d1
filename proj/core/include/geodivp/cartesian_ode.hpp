#pragma once

#include "geodivp/angles.hpp"
#include "geodivp/integrator.hpp"
#include "geodivp/spheroid.hpp"

namespace geodivp {

/// Position (m) and unit tangent (dimensionless) of a geodesic in ECEF space.
struct CartesianState {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double xd = 0.0;
  double yd = 0.0;
  double zd = 0.0;

  CartesianCoord position() const noexcept { return {x, y, z}; }
  Vec3 direction() const noexcept { return {xd, yd, zd}; }
  StateVec<6> vec() const noexcept { return {x, xd, y, yd, z, zd}; }
  static CartesianState from(const StateVec<6>& v) noexcept {
    return {v[0], v[2], v[4], v[1], v[3], v[5]};
  }
};

/// Local frame at a surface point: outward normal n, east p, north q = n x p.
struct FrameVectors {
  Vec3 n;
  Vec3 p;
  Vec3 q;
};

struct CurvatureScalars {
  double H;  // m^2
  double h;  // dimensionless
};

/// x^2 + y^2 below (kPoleThreshold * a)^2 counts as the polar axis for the east vector.
inline constexpr double kPoleThreshold = 1e-9;

CurvatureScalars curvature_scalars(const Ellipsoid& ell, const CartesianState& st);

/// Derivatives in StateVec<6> layout (x, xd, y, yd, z, zd).
StateVec<6> cartesian_rhs(const Ellipsoid& ell, const StateVec<6>& st);

Vec3 surface_normal(const Ellipsoid& ell, CartesianCoord c);

/// Unit east vector (-y, x, 0)/rho. On the polar axis the meridian is taken
/// as lambda = pole_azimuth, i.e. p = (-sin, cos, 0) of that angle.
Vec3 east_vector(const Ellipsoid& ell, CartesianCoord c, SinCos pole_azimuth);
Vec3 east_vector(const Ellipsoid& ell, CartesianCoord c, double pole_azimuth);

/// q = n x p. Throws FrameError if (n, p) is not orthonormal within 1e-12.
Vec3 north_vector(Vec3 n, Vec3 p);

FrameVectors local_frame(const Ellipsoid& ell, CartesianCoord c, SinCos pole_azimuth);

/// Surface point plus unit tangent p sin(alpha0) + q cos(alpha0). alpha0 in
/// radians. Throws DomainError if |surface_residual(c)| > 1e-12.
CartesianState initial_cartesian_state(const Ellipsoid& ell, CartesianCoord c, double alpha0);
CartesianState initial_cartesian_state(const Ellipsoid& ell, CartesianCoord c, SinCos alpha0);
/// As above, but a start on the polar axis takes its east vector from
/// pole_meridian instead of alpha0.
CartesianState initial_cartesian_state(const Ellipsoid& ell, CartesianCoord c, SinCos alpha0, SinCos pole_meridian);

/// Azimuth in degrees, [0, 360). On the polar axis the frame uses pole_azimuth
/// (see east_vector). Throws DegenerateStateError when the tangent has no
/// horizontal component.
double azimuth_cartesian(const Ellipsoid& ell, const CartesianState& st, SinCos pole_azimuth = {0.0, 1.0});

/// First integral x dy/ds - y dx/ds, in metres.
inline double clairaut_cartesian(const CartesianState& st) { return st.x * st.yd - st.y * st.xd; }

/// (x xd + y yd + z zd/(1 - e2)) / a; zero for tangent directions.
double tangency_residual(const Ellipsoid& ell, const CartesianState& st);

struct CartesianField {
  const Ellipsoid* ell;
  StateVec<6> operator()(const StateVec<6>& y) const { return cartesian_rhs(*ell, y); }
};

}  // namespace geodivp
