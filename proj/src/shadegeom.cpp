#include "agrishade/shadegeom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace agrishade {

Mat3 pose_rotation(const TrackerAngles& angles) {
  return rotation_about_x(-angles.beta_itc_deg) * rotation_about_y(angles.omega_itc_deg);
}

PanelQuad pose_panel(const PanelQuad& rest, const Mat3& rotation) {
  PanelQuad out = rest;
  for (auto& corner : out.corners) corner = rotation * (corner - rest.center) + rest.center;
  return out;
}

std::vector<PanelQuad> pose_scene(std::span<const PanelQuad> rest, const TrackerAngles& angles) {
  const Mat3 r = pose_rotation(angles);
  std::vector<PanelQuad> posed;
  posed.reserve(rest.size());
  for (const auto& quad : rest) posed.push_back(pose_panel(quad, r));
  return posed;
}

std::vector<ConvexPolygon> shadow_polygons(std::span<const PanelQuad> posed, const Vec3& s) {
  if (s.z() <= 0.0)
    throw std::invalid_argument("shadow_polygons: no-beam (sun direction has z <= 0)");
  std::vector<ConvexPolygon> out;
  out.reserve(posed.size());
  for (const auto& quad : posed) {
    std::vector<Vec2> pts;
    pts.reserve(4);
    for (const Vec3& corner : quad.perimeter()) pts.push_back(project_point_to_ground(corner, s));
    out.emplace_back(std::move(pts));
  }
  return out;
}

double union_area_clipped(std::span<const ConvexPolygon> shadows, const CropArea& crop) {
  const ConvexPolygon rect = crop.rectangle();
  std::vector<ConvexPolygon> clipped;
  clipped.reserve(shadows.size());
  for (const auto& poly : shadows) {
    if (poly.empty()) continue;
    ConvexPolygon c = clip_convex(poly, rect);
    if (!c.empty()) clipped.push_back(std::move(c));
  }
  return union_area(clipped);
}

double beam_shading_factor(double a_shade, double a_tot) {
  if (a_tot <= 0.0) throw std::invalid_argument("beam_shading_factor: A_tot must be > 0");
  return std::clamp(a_shade / a_tot, 0.0, 1.0);
}

GroundOcclusionMap cell_occlusion(std::span<const PanelQuad> posed, const Vec3& s,
                                  const CropArea& crop) {
  GroundOcclusionMap map;
  map.shaded.assign(static_cast<size_t>(crop.cell_count()), 0);
  if (crop.cell_count() == 0) return map;

  const auto polys = shadow_polygons(posed, s);
  const double res = crop.resolution_m;
  for (const auto& poly : polys) {
    if (poly.empty()) continue;
    // only cells whose centers fall inside the polygon's bounding box
    int ix0 = static_cast<int>(std::floor((poly.bbox_lo().x() - crop.origin.x()) / res - 0.5));
    int ix1 = static_cast<int>(std::ceil((poly.bbox_hi().x() - crop.origin.x()) / res - 0.5));
    int iy0 = static_cast<int>(std::floor((poly.bbox_lo().y() - crop.origin.y()) / res - 0.5));
    int iy1 = static_cast<int>(std::ceil((poly.bbox_hi().y() - crop.origin.y()) / res - 0.5));
    ix0 = std::max(ix0, 0);
    iy0 = std::max(iy0, 0);
    ix1 = std::min(ix1, crop.nx - 1);
    iy1 = std::min(iy1, crop.ny - 1);
    for (int iy = iy0; iy <= iy1; ++iy) {
      for (int ix = ix0; ix <= ix1; ++ix) {
        auto& flag = map.shaded[static_cast<size_t>(iy) * crop.nx + ix];
        if (!flag && poly.contains(crop.cell_center(ix, iy))) flag = 1;
      }
    }
  }
  std::int64_t count = 0;
  for (auto v : map.shaded) count += v;
  map.f_b_grid = static_cast<double>(count) / crop.cell_count();
  return map;
}

double inter_panel_shadow_area(std::span<const PanelQuad> casters,
                               std::span<const PanelQuad> receivers, const Vec3& s) {
  double total = 0.0;
  for (const auto& recv : receivers) {
    const auto rp = recv.perimeter();
    Vec3 n = (rp[1] - rp[0]).cross(rp[2] - rp[0]);
    const double nlen = n.norm();
    if (nlen < 1e-15) continue;
    n /= nlen;
    const double ns = n.dot(s);
    if (std::abs(ns) < 1e-12) continue;  // light grazing along the receiver plane

    // orthonormal in-plane basis
    Vec3 u = rp[1] - rp[0];
    u.normalize();
    const Vec3 v = n.cross(u);
    const Vec3 origin = rp[0];
    auto to2d = [&](const Vec3& p) -> Vec2 {
      const Vec3 d = p - origin;
      return {d.dot(u), d.dot(v)};
    };

    std::vector<Vec2> rv;
    for (const Vec3& c : rp) rv.push_back(to2d(c));
    const ConvexPolygon receiver_poly(std::move(rv));
    if (receiver_poly.empty()) continue;

    std::vector<ConvexPolygon> hits;
    const double plane_off = n.dot(origin);
    for (const auto& cast : casters) {
      if (&cast == &recv) continue;
      bool sunward = true;
      std::vector<Vec2> proj;
      for (const Vec3& c : cast.perimeter()) {
        const double t = (plane_off - n.dot(c)) / ns;
        // shading requires the caster between the receiver and the sun
        if (t >= -1e-12) {
          sunward = false;
          break;
        }
        proj.push_back(to2d(c + t * s));
      }
      if (!sunward) continue;
      ConvexPolygon shadow(std::move(proj));
      if (shadow.empty()) continue;
      ConvexPolygon clipped = clip_convex(shadow, receiver_poly);
      if (!clipped.empty()) hits.push_back(std::move(clipped));
    }
    total += union_area(hits);
  }
  return total;
}

}  // namespace agrishade
