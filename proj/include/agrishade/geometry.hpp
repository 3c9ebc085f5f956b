#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

// Geometric kernel: rotation matrices, line-plane projection and exact
// 2D convex-polygon operations (clipping, union area).
//
// Frame convention used throughout the library: z points to the zenith,
// y points to geographic south, x points to west. The ground is z = 0.

namespace agrishade {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

// Point-in-polygon and clipping tolerance in meters; boundary counts as
// inside so cell counts stay deterministic.
constexpr double kGeomTol = 1e-9;

/// Rotation about the y-axis; positive angle moves +x toward -z.
Mat3 rotation_about_y(double angle_deg);

/// Rotation about the x-axis; positive angle moves +y toward +z.
Mat3 rotation_about_x(double angle_deg);

/// Unit normal of a plane from its azimuthal orientation and tilt, both in
/// degrees: (cos g sin d, sin g sin d, cos d). Tilt 0 gives (0, 0, 1).
Vec3 plane_normal(double orientation_deg, double tilt_deg);

/// Intersection of the line {p + t*dir} with the plane {x . n = offset}.
/// Returns nullopt when the direction is parallel to the plane.
std::optional<Vec3> project_point_onto_plane(const Vec3& p, const Vec3& dir,
                                             const Vec3& n, double offset = 0.0);

/// Ground-plane shortcut: shadow of p cast along the sun direction s onto
/// z = 0. Requires s.z() > 0; the shadow lies on the anti-solar side.
Vec2 project_point_to_ground(const Vec3& p, const Vec3& s);

// A convex polygon in the ground plane, vertices counter-clockwise.
// Construction normalizes orientation; near-degenerate inputs collapse to
// an empty polygon with zero area.
class ConvexPolygon {
 public:
  ConvexPolygon() = default;
  explicit ConvexPolygon(std::vector<Vec2> vertices);

  static ConvexPolygon rectangle(const Vec2& lo, const Vec2& hi);

  const std::vector<Vec2>& vertices() const { return verts_; }
  bool empty() const { return verts_.size() < 3; }
  double area() const { return area_; }

  /// Boundary-inclusive containment test (tolerance kGeomTol).
  bool contains(const Vec2& p) const;

  Vec2 bbox_lo() const { return lo_; }
  Vec2 bbox_hi() const { return hi_; }

 private:
  std::vector<Vec2> verts_;
  double area_ = 0.0;
  Vec2 lo_{0, 0}, hi_{0, 0};
};

double signed_area(std::span<const Vec2> poly);

/// Clips subject against a convex clip polygon (Sutherland-Hodgman).
ConvexPolygon clip_convex(const ConvexPolygon& subject, const ConvexPolygon& clip);

/// Exact area of the union of convex polygons. Overlapping regions are
/// counted once; inputs may touch, overlap or coincide.
double union_area(std::span<const ConvexPolygon> polys);

}  // namespace agrishade
