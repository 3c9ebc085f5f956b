#include "agrishade/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "agrishade/errors.hpp"

namespace agrishade {

std::string to_string(TrackingMode mode) {
  return mode == TrackingMode::kSunPointing ? "sun-pointing" : "azimuthal";
}

TrackingMode tracking_mode_from_string(const std::string& name) {
  if (name == "sun-pointing" || name == "default") return TrackingMode::kSunPointing;
  if (name == "azimuthal") return TrackingMode::kAzimuthal;
  throw ConfigError("unknown tracking mode: '" + name + "' (expected sun-pointing | azimuthal)");
}

AxisGeometry axis_geometry(const LayoutConfig& layout) {
  AxisGeometry g;
  // The dimension that rotates about the row axis is the panel length, so it
  // normalizes the east-west spacing; the second axis rotates the width.
  g.l_ew = layout.row_spacing_m / layout.panel_length_m;
  g.l_ns = layout.pitch_m > 0.0 ? layout.pitch_m / layout.panel_width_m : 0.0;
  return g;
}

Vec3 axis_frame(const Vec3& s, double axis_azimuth_deg, double axis_tilt_deg) {
  const double ca = std::cos(deg2rad(axis_azimuth_deg));
  const double sa = std::sin(deg2rad(axis_azimuth_deg));
  const double cb = std::cos(deg2rad(axis_tilt_deg));
  const double sb = std::sin(deg2rad(axis_tilt_deg));
  return {s.x() * ca - s.y() * sa,
          s.x() * cb * sa + s.y() * cb * ca - s.z() * sb,
          s.x() * sb * sa + s.y() * sb * ca + s.z() * cb};
}

double ideal_tilt(const Vec3& s_axis) {
  if (s_axis.z() <= 0.0)
    throw std::invalid_argument("ideal_tilt: sun-below-horizon (z' <= 0)");
  return rad2deg(std::atan2(s_axis.x(), s_axis.z()));
}

double shaded_fraction(double omega_it_deg, double l_ew) {
  const double c = std::cos(deg2rad(omega_it_deg));
  if (c <= 0.0) return 1.0;  // panel edge-on to its own horizon: full overlap
  const double shadow = 1.0 / c;
  return std::clamp(1.0 - l_ew / shadow, 0.0, 1.0);
}

double backtrack_tilt(double omega_it_deg, double l_ew, double tilt_min_deg,
                      double tilt_max_deg) {
  const double arg = l_ew * std::cos(deg2rad(omega_it_deg));
  double out = omega_it_deg;
  if (arg < 1.0) {
    const double correction = rad2deg(std::acos(std::max(arg, -1.0)));
    out = omega_it_deg - (omega_it_deg >= 0.0 ? correction : -correction);
  }
  return std::clamp(out, tilt_min_deg, tilt_max_deg);
}

double ideal_second_axis(const Vec3& s_axis, TrackingMode mode) {
  if (s_axis.z() <= 0.0)
    throw std::invalid_argument("ideal_second_axis: sun-below-horizon (z' <= 0)");
  if (mode == TrackingMode::kSunPointing)
    return rad2deg(std::atan2(s_axis.y(), std::hypot(s_axis.x(), s_axis.z())));
  const double denom = std::hypot(s_axis.x(), s_axis.y());
  if (denom < 1e-300) return 0.0;  // sun at the exact zenith
  return rad2deg(std::atan(s_axis.y() / denom));
}

double backtrack_second_axis(double beta_it_deg, double l_ns_over_w, double tilt_min_deg,
                             double tilt_max_deg) {
  const double arg = l_ns_over_w * std::cos(deg2rad(beta_it_deg));
  double out = beta_it_deg;
  if (arg < 1.0) {
    const double corrected = rad2deg(std::acos(std::max(arg, -1.0)));
    out = beta_it_deg >= 0.0 ? corrected : -corrected;
  }
  return std::clamp(out, tilt_min_deg, tilt_max_deg);
}

std::optional<TrackerAngles> pose_for(const LayoutConfig& layout, const Vec3& sun_axis,
                                      TrackingMode mode) {
  TrackerAngles a;
  if (layout.system_kind == SystemKind::kVertical) {
    a.omega_it_deg = a.omega_itc_deg = layout.fixed_tilt_deg;
    return a;  // fixed pose, constant over time
  }
  if (sun_axis.z() <= 0.0) return std::nullopt;

  const AxisGeometry geom = axis_geometry(layout);
  a.omega_it_deg = ideal_tilt(sun_axis);
  a.sf = shaded_fraction(a.omega_it_deg, geom.l_ew);
  a.omega_itc_deg =
      backtrack_tilt(a.omega_it_deg, geom.l_ew, layout.tilt_min_deg, layout.tilt_max_deg);

  if (layout.system_kind == SystemKind::kTwoAxis) {
    a.beta_it_deg = ideal_second_axis(sun_axis, mode);
    a.beta_itc_deg = backtrack_second_axis(a.beta_it_deg, geom.l_ns, layout.tilt_min_deg,
                                           layout.tilt_max_deg);
  }
  return a;
}

}  // namespace agrishade
