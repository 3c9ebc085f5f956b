#pragma once

#include <optional>
#include <string>

#include "agrishade/geometry.hpp"
#include "agrishade/scene.hpp"

// Per-timestep tracker orientation: ideal tracking, backtracking correction,
// axis-frame transformation and tilt clamping for the three system kinds.
//
// Angle conventions: the first-axis tilt (omega) rotates about the row axis
// (y), positive tips the panel face toward the west; the second-axis tilt
// (beta) is positive when the panel face tips toward the south.

namespace agrishade {

// How the second-axis ideal angle is derived for two-axis trackers.
//  kSunPointing: beta = atan2(y', sqrt(x'^2 + z'^2)) -- points the posed
//                normal at the sun when the sun lies in the tilt plane.
//  kAzimuthal:   beta = atan(y' / sqrt(x'^2 + y'^2)) -- follows the solar
//                azimuth only; retained for comparison runs.
enum class TrackingMode { kSunPointing, kAzimuthal };

std::string to_string(TrackingMode mode);
TrackingMode tracking_mode_from_string(const std::string& name);

// Normalized axis spacings; both must exceed 1 or the panels would overlap
// at rest.
struct AxisGeometry {
  double l_ew = 0.0;  // east-west axis spacing / panel extent across the row axis
  double l_ns = 0.0;  // two-axis: along-row axis pitch / panel width
};

AxisGeometry axis_geometry(const LayoutConfig& layout);

struct TrackerAngles {
  double omega_it_deg = 0.0;   // ideal first-axis tilt
  double omega_itc_deg = 0.0;  // corrected + clamped first-axis tilt
  double beta_it_deg = 0.0;    // ideal second-axis tilt (two-axis only)
  double beta_itc_deg = 0.0;   // corrected + clamped second-axis tilt
  double sf = 0.0;             // shaded fraction at the ideal angle, [0, 1]
};

/// Transforms a unit solar vector into the tracker axis frame for an axis
/// azimuth (relative to N-S) and axis tilt, both degrees.
Vec3 axis_frame(const Vec3& s, double axis_azimuth_deg, double axis_tilt_deg);

/// Ideal first-axis tilt atan2(x', z'), degrees. Requires z' > 0.
double ideal_tilt(const Vec3& s_axis);

/// Mutual-shading fraction at the ideal angle: the normalized shadow length
/// is 1/cos(omega); sf = max(0, 1 - l_ew / shadow).
double shaded_fraction(double omega_it_deg, double l_ew);

/// Backtracking: when l_ew cos(omega) < 1 the tilt is reduced by the
/// correction angle acos(l_ew cos(omega)); the result is clamped to
/// [tilt_min, tilt_max] last.
double backtrack_tilt(double omega_it_deg, double l_ew, double tilt_min_deg,
                      double tilt_max_deg);

/// Ideal second-axis tilt, degrees. Requires z' > 0.
double ideal_second_axis(const Vec3& s_axis, TrackingMode mode);

/// Second-axis correction: when ratio*cos(beta) < 1 the corrected angle is
/// sign(beta) * acos(ratio * cos(beta)); clamped last. `l_ns_over_w` is the
/// axis pitch divided by the panel width.
double backtrack_second_axis(double beta_it_deg, double l_ns_over_w, double tilt_min_deg,
                             double tilt_max_deg);

/// Orientation for one timestep. `sun_axis` is the solar vector already
/// transformed into the axis frame. Returns nullopt for tracked systems when
/// the sun is at or below the tracker horizon (night marker); the vertical
/// system always reports its fixed pose.
std::optional<TrackerAngles> pose_for(const LayoutConfig& layout, const Vec3& sun_axis,
                                      TrackingMode mode);

}  // namespace agrishade
