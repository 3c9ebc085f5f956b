#pragma once

#include <array>
#include <string>
#include <vector>

#include "agrishade/geometry.hpp"

// Site and array-layout configuration, and construction of the rest-pose
// scene: panel corner quads, rotation centers, the crop reference rectangle
// and its ground grid.
//
// Scene frame (see geometry.hpp): rows run along the y-axis, i.e. north to
// south, when the layout azimuth is zero; the two rows sit at x = +/- half
// the row spacing and the crop rectangle spans the ground between the row
// axes. A nonzero layout azimuth rotates the whole installation; the solar
// vector is transformed into this axis frame instead of rotating the scene
// (tracking::axis_frame).

namespace agrishade {

enum class SystemKind { kVertical, kOneAxis, kTwoAxis };

std::string to_string(SystemKind kind);
SystemKind system_kind_from_string(const std::string& name);

struct SiteConfig {
  double latitude_deg = 0.0;    // [-90, 90]
  double longitude_deg = 0.0;   // [-180, 180], east positive
  double elevation_m = 0.0;
  // timestamps are always UTC
};

struct LayoutConfig {
  SystemKind system_kind = SystemKind::kVertical;
  double panel_width_m = 1.0;    // W, along the row axis
  double panel_length_m = 2.0;   // L, across the row axis
  int n_panels = 40;
  int n_rows = 2;
  double row_spacing_m = 10.0;   // distance between row axes
  double row_length_m = 20.0;
  double pitch_m = 0.0;          // two-axis only: axis spacing along the row
  double axis_height_m = 0.0;    // tracked: rest-pose panel height;
                                 // vertical: height of the lower panel edge
  double fixed_tilt_deg = 90.0;  // vertical only
  double panel_azimuth_deg = 0.0;  // axis azimuth relative to N-S
  double axis_tilt_deg = 0.0;
  double tilt_min_deg = -60.0;
  double tilt_max_deg = 60.0;
  double grid_resolution_m = 0.25;
};

// One PV panel: four corners, the rotation center and its row.
// At rest pose the corners are the axis-aligned rectangle
//   P1 = (x0, y0, z0)         P2 = (x0, y0 + W, z0)
//   P3 = (x0 + L, y0, z0)     P4 = (x0 + L, y0 + W, z0)
struct PanelQuad {
  std::array<Vec3, 4> corners{};  // P1, P2, P3, P4
  Vec3 center{0, 0, 0};
  int row_index = 0;

  /// Corners in perimeter order (P1, P2, P4, P3).
  std::array<Vec3, 4> perimeter() const {
    return {corners[0], corners[1], corners[3], corners[2]};
  }
  /// Max deviation of the four corners from their common plane, meters.
  double coplanarity_error() const;
};

PanelQuad make_rest_quad(const Vec3& origin, double length_m, double width_m, int row_index);

struct CropArea {
  Vec2 origin{0, 0};  // lower-left corner
  double extent_x_m = 0.0;
  double extent_y_m = 0.0;
  double resolution_m = 0.25;
  int nx = 0;
  int ny = 0;

  double total_area() const { return extent_x_m * extent_y_m; }
  int cell_count() const { return nx * ny; }
  /// Center of cell (ix, iy); cells are indexed row-major, x fastest.
  Vec2 cell_center(int ix, int iy) const {
    return {origin.x() + (ix + 0.5) * resolution_m, origin.y() + (iy + 0.5) * resolution_m};
  }
  Vec2 cell_center(int flat_index) const {
    return cell_center(flat_index % nx, flat_index / nx);
  }
  ConvexPolygon rectangle() const {
    return ConvexPolygon::rectangle(origin, {origin.x() + extent_x_m, origin.y() + extent_y_m});
  }
};

struct Scene {
  std::vector<PanelQuad> panels;
  CropArea crop;
};

struct Diagnostic {
  std::string field;
  std::string value;
  std::string rule;
};

/// Validates layout and site against their invariants. Empty result means
/// the configuration is acceptable for simulation.
std::vector<Diagnostic> validate_config(const LayoutConfig& layout, const SiteConfig& site);

/// Builds the rest-pose scene. Throws ConfigError when validate_config
/// reports diagnostics or the panels do not fit the row length.
Scene build_scene(const LayoutConfig& layout);

}  // namespace agrishade
