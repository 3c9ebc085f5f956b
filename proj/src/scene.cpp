#include "agrishade/scene.hpp"

#include <cmath>
#include <sstream>

#include "agrishade/errors.hpp"

namespace agrishade {

std::string to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::kVertical: return "vertical";
    case SystemKind::kOneAxis: return "one-axis";
    case SystemKind::kTwoAxis: return "two-axis";
  }
  return "?";
}

SystemKind system_kind_from_string(const std::string& name) {
  if (name == "vertical") return SystemKind::kVertical;
  if (name == "one-axis" || name == "one_axis") return SystemKind::kOneAxis;
  if (name == "two-axis" || name == "two_axis") return SystemKind::kTwoAxis;
  throw ConfigError("unknown system kind: '" + name + "' (expected vertical | one-axis | two-axis)");
}

double PanelQuad::coplanarity_error() const {
  const Vec3 u = corners[1] - corners[0];
  const Vec3 v = corners[2] - corners[0];
  Vec3 n = u.cross(v);
  const double len = n.norm();
  if (len < 1e-15) return 0.0;
  n /= len;
  return std::abs(n.dot(corners[3] - corners[0]));
}

PanelQuad make_rest_quad(const Vec3& origin, double length_m, double width_m, int row_index) {
  PanelQuad q;
  const double x0 = origin.x(), y0 = origin.y(), z0 = origin.z();
  q.corners[0] = {x0, y0, z0};
  q.corners[1] = {x0, y0 + width_m, z0};
  q.corners[2] = {x0 + length_m, y0, z0};
  q.corners[3] = {x0 + length_m, y0 + width_m, z0};
  q.center = {x0 + 0.5 * length_m, y0 + 0.5 * width_m, z0};
  q.row_index = row_index;
  return q;
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

bool divides_evenly(double extent, double res) {
  if (res <= 0.0) return false;
  const double cells = extent / res;
  return std::abs(cells - std::round(cells)) < 1e-9;
}

double crop_extent_x(const LayoutConfig& l) {
  // Between the outermost row axes; a single-row scene keeps the nominal
  // row-spacing width centered on its axis.
  return l.n_rows >= 2 ? l.row_spacing_m * (l.n_rows - 1) : l.row_spacing_m;
}

}  // namespace

std::vector<Diagnostic> validate_config(const LayoutConfig& l, const SiteConfig& s) {
  std::vector<Diagnostic> d;
  auto bad = [&](const std::string& field, double value, const std::string& rule) {
    d.push_back({field, fmt(value), rule});
  };

  if (!(s.latitude_deg >= -90.0 && s.latitude_deg <= 90.0))
    bad("latitude_deg", s.latitude_deg, "latitude must lie in [-90, 90]");
  if (!(s.longitude_deg >= -180.0 && s.longitude_deg <= 180.0))
    bad("longitude_deg", s.longitude_deg, "longitude must lie in [-180, 180]");
  if (!std::isfinite(s.elevation_m))
    bad("elevation_m", s.elevation_m, "elevation must be finite");

  if (!(l.panel_width_m > 0.0)) bad("panel_width_m", l.panel_width_m, "must be > 0");
  if (!(l.panel_length_m > 0.0)) bad("panel_length_m", l.panel_length_m, "must be > 0");
  if (!(l.row_spacing_m > 0.0)) bad("row_spacing_m", l.row_spacing_m, "must be > 0");
  if (!(l.row_length_m > 0.0)) bad("row_length_m", l.row_length_m, "must be > 0");
  if (l.n_panels < 0) bad("n_panels", l.n_panels, "must be >= 0");
  if (l.n_rows < 1) bad("n_rows", l.n_rows, "must be >= 1");
  if (l.n_rows >= 1 && l.n_panels % l.n_rows != 0)
    bad("n_panels", l.n_panels, "must be divisible by n_rows");
  if (l.n_rows >= 1 && l.n_panels > 0 &&
      (l.n_panels / l.n_rows) * l.panel_width_m > l.row_length_m + 1e-9)
    bad("n_panels", l.n_panels, "panels exceed row_length");

  if (!(l.tilt_min_deg <= l.tilt_max_deg))
    bad("tilt_min_deg", l.tilt_min_deg, "tilt_min must not exceed tilt_max");
  if (std::abs(l.tilt_min_deg) > 90.0)
    bad("tilt_min_deg", l.tilt_min_deg, "tilt_min exceeds +/-90 physical bound");
  if (std::abs(l.tilt_max_deg) > 90.0)
    bad("tilt_max_deg", l.tilt_max_deg, "tilt_max exceeds +/-90 physical bound");

  if (!divides_evenly(crop_extent_x(l), l.grid_resolution_m) ||
      !divides_evenly(l.row_length_m, l.grid_resolution_m))
    bad("grid_resolution_m", l.grid_resolution_m, "resolution does not tile area");

  if (l.system_kind == SystemKind::kTwoAxis) {
    if (!(l.pitch_m > l.panel_width_m))
      bad("pitch_m", l.pitch_m, "two-axis pitch must exceed panel_width (axes would overlap)");
  }
  if (l.system_kind == SystemKind::kVertical) {
    if (!(l.fixed_tilt_deg >= 0.0 && l.fixed_tilt_deg <= 90.0))
      bad("fixed_tilt_deg", l.fixed_tilt_deg, "fixed tilt must lie in [0, 90]");
    if (l.axis_height_m < 0.0)
      bad("axis_height_m", l.axis_height_m, "lower panel edge must not be below ground");
  } else {
    // worst-case dip of a rotated corner below the rotation axis
    const double half_diag = 0.5 * std::hypot(l.panel_length_m, l.panel_width_m);
    const double max_tilt = std::max(std::abs(l.tilt_min_deg), std::abs(l.tilt_max_deg));
    const double dip = half_diag * std::sin(deg2rad(std::min(max_tilt, 90.0)));
    if (l.axis_height_m < dip - 1e-9)
      bad("axis_height_m", l.axis_height_m, "panel corners can dip below ground at full tilt");
  }
  if (l.axis_tilt_deg != 0.0)
    bad("axis_tilt_deg", l.axis_tilt_deg,
        "scene construction assumes horizontal axes (axis_tilt = 0)");
  if (!(std::abs(l.panel_azimuth_deg) <= 180.0))
    bad("panel_azimuth_deg", l.panel_azimuth_deg, "azimuth must lie in [-180, 180]");

  return d;
}

Scene build_scene(const LayoutConfig& l) {
  SiteConfig dummy_site;  // layout-only diagnostics matter here
  auto diags = validate_config(l, dummy_site);
  if (!diags.empty()) {
    std::ostringstream os;
    os << "invalid-config:";
    for (const auto& d : diags) os << " [" << d.field << "=" << d.value << ": " << d.rule << "]";
    throw ConfigError(os.str());
  }

  Scene scene;
  const double W = l.panel_width_m;
  const double L = l.panel_length_m;

  const double ext_x = crop_extent_x(l);
  scene.crop.extent_x_m = ext_x;
  scene.crop.extent_y_m = l.row_length_m;
  scene.crop.resolution_m = l.grid_resolution_m;
  scene.crop.origin = {-0.5 * ext_x, -0.5 * l.row_length_m};
  scene.crop.nx = static_cast<int>(std::llround(ext_x / l.grid_resolution_m));
  scene.crop.ny = static_cast<int>(std::llround(l.row_length_m / l.grid_resolution_m));

  if (l.n_panels == 0) return scene;  // open-field scene

  const int per_row = l.n_panels / l.n_rows;
  const double strip = per_row * W;
  if (strip > l.row_length_m + 1e-9)
    throw ConfigError("geometry-overflow: panels exceed row_length");

  // The vertical system stands on its lower edge: rest pose keeps the quad
  // horizontal at the rotation-center height so that the 90 degree tilt about
  // the row axis puts the bottom edge at axis_height.
  const double z0 = l.system_kind == SystemKind::kVertical ? l.axis_height_m + 0.5 * L
                                                           : l.axis_height_m;

  scene.panels.reserve(l.n_panels);
  for (int r = 0; r < l.n_rows; ++r) {
    const double row_x = (r - 0.5 * (l.n_rows - 1)) * l.row_spacing_m;
    const double y_start = -0.5 * strip;
    for (int k = 0; k < per_row; ++k) {
      const Vec3 origin{row_x - 0.5 * L, y_start + k * W, z0};
      scene.panels.push_back(make_rest_quad(origin, L, W, r));
    }
  }
  return scene;
}

}  // namespace agrishade
