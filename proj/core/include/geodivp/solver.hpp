#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geodivp/spheroid.hpp"

namespace geodivp {

enum class CoordinateSystem { geodetic, cartesian };

std::string_view to_string(CoordinateSystem system);
/// Accepts "geodetic" or "cartesian"; throws ConstructionError otherwise.
CoordinateSystem parse_coordinate_system(std::string_view name);

/// Warning codes attached to Diagnostics::warnings.
inline constexpr std::string_view kWarnHighLatitude = "geodetic-high-latitude";

/// Start latitude at or above which the geodetic system refuses to run (degrees).
inline constexpr double kGeodeticStartLimit = 89.9;
/// Trajectory latitude above which the geodetic system warns (degrees).
inline constexpr double kGeodeticWarnLatitude = 85.0;

inline constexpr double kDefaultTargetStep = 10'000.0;

/// Direct problem: start point, start azimuth (deg), arc length (m).
struct DirectProblem {
  GeodeticCoord start;
  double alpha0 = 0.0;
  double s01 = 0.0;
  CoordinateSystem system = CoordinateSystem::cartesian;
  std::optional<std::size_t> steps;
};

struct Diagnostics {
  double clairaut_c0 = 0.0;  ///< From the start point and azimuth (N cos phi sin alpha).
  double clairaut_c1 = 0.0;  ///< First integral evaluated on the final state.
  double max_abs_delta_c = 0.0;
  std::optional<double> max_abs_surface_residual;   ///< cartesian only
  std::optional<double> max_abs_tangency_residual;  ///< cartesian only
  std::vector<std::string> warnings;
};

struct DirectResult {
  GeodeticCoord end_geodetic;
  CartesianCoord end_cartesian;
  double alpha1 = 0.0;
  /// Longitude before wrapping into (-180, 180].
  double end_lon_unwrapped = 0.0;
  std::size_t steps = 0;
  Diagnostics diagnostics;
};

struct TraceSample {
  double s = 0.0;
  CartesianCoord position;
  GeodeticCoord geodetic;
  double lon_unwrapped = 0.0;
  double alpha = 0.0;
  double delta_c = 0.0;
};

/// clamp(ceil(s01 / target_ds), 16, 2^20).
std::size_t select_steps(double s01, double target_ds = kDefaultTargetStep);

/// Normalizes alpha0 into [0, 360) and validates the remaining fields.
DirectProblem normalized(const DirectProblem& prob);

DirectResult solve_direct(const Ellipsoid& ell, const DirectProblem& prob);

/// Samples at steps 0, k, 2k, ... and always the final step.
std::vector<TraceSample> trace_direct(const Ellipsoid& ell, const DirectProblem& prob, std::size_t every_k);

}  // namespace geodivp
