#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "agrishade/geometry.hpp"
#include "agrishade/scene.hpp"
#include "agrishade/tracking.hpp"

// Panel posing and beam-shadow evaluation: project posed panels onto the
// ground along the solar direction, clip to the crop area, take the union
// area and mark per-cell occlusion.

namespace agrishade {

/// Composite pose rotation: the second-axis rotation (about x) applied after
/// the first-axis rotation (about y). Positive beta tips the panel normal
/// toward the south, so the x-rotation takes the negated angle.
Mat3 pose_rotation(const TrackerAngles& angles);

/// Rotates every corner about the panel center: P -> R (P - c) + c.
PanelQuad pose_panel(const PanelQuad& rest, const Mat3& rotation);

std::vector<PanelQuad> pose_scene(std::span<const PanelQuad> rest, const TrackerAngles& angles);

/// Ground shadow of each posed panel, one convex polygon per panel in input
/// order. Panels edge-on to the sun produce empty zero-area polygons.
/// Requires s.z() > 0.
std::vector<ConvexPolygon> shadow_polygons(std::span<const PanelQuad> posed, const Vec3& s);

/// Area of (union of shadows) intersected with the crop rectangle.
double union_area_clipped(std::span<const ConvexPolygon> shadows, const CropArea& crop);

/// f_b = A_shade / A_tot, in [0, 1].
double beam_shading_factor(double a_shade, double a_tot);

struct GroundOcclusionMap {
  std::vector<std::uint8_t> shaded;  // per cell, row-major (x fastest)
  double f_b_grid = 0.0;             // shaded cells / total cells
};

/// Marks each cell whose center lies inside any shadow polygon (boundary
/// counts as inside). Requires s.z() > 0.
GroundOcclusionMap cell_occlusion(std::span<const PanelQuad> posed, const Vec3& s,
                                  const CropArea& crop);

/// Beam shading cast by `casters` onto the `receivers` panel surfaces, m2.
/// Casters coplanar with or behind a receiver plane do not contribute.
/// Used to verify that backtracking keeps rows off each other.
double inter_panel_shadow_area(std::span<const PanelQuad> casters,
                               std::span<const PanelQuad> receivers, const Vec3& s);

}  // namespace agrishade
