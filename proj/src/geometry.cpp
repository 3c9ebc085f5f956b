#include "agrishade/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace agrishade {

Mat3 rotation_about_y(double angle_deg) {
  const double c = std::cos(deg2rad(angle_deg));
  const double s = std::sin(deg2rad(angle_deg));
  Mat3 r;
  r << c, 0, s,
       0, 1, 0,
      -s, 0, c;
  return r;
}

Mat3 rotation_about_x(double angle_deg) {
  const double c = std::cos(deg2rad(angle_deg));
  const double s = std::sin(deg2rad(angle_deg));
  Mat3 r;
  r << 1, 0, 0,
       0, c, -s,
       0, s, c;
  return r;
}

Vec3 plane_normal(double orientation_deg, double tilt_deg) {
  const double g = deg2rad(orientation_deg);
  const double d = deg2rad(tilt_deg);
  return {std::cos(g) * std::sin(d), std::sin(g) * std::sin(d), std::cos(d)};
}

std::optional<Vec3> project_point_onto_plane(const Vec3& p, const Vec3& dir,
                                             const Vec3& n, double offset) {
  const double denom = n.dot(dir);
  if (std::abs(denom) < 1e-12) return std::nullopt;
  const double t = (offset - n.dot(p)) / denom;
  return p + t * dir;
}

Vec2 project_point_to_ground(const Vec3& p, const Vec3& s) {
  if (s.z() <= 0.0)
    throw std::invalid_argument("project_point_to_ground: no-beam (sun direction has z <= 0)");
  const double t = -p.z() / s.z();
  return {p.x() + t * s.x(), p.y() + t * s.y()};
}

double signed_area(std::span<const Vec2> poly) {
  double a = 0.0;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& u = poly[i];
    const Vec2& v = poly[(i + 1) % n];
    a += u.x() * v.y() - v.x() * u.y();
  }
  return 0.5 * a;
}

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices) : verts_(std::move(vertices)) {
  if (verts_.size() < 3) {
    verts_.clear();
    return;
  }
  double a = signed_area(verts_);
  if (a < 0) {
    std::reverse(verts_.begin(), verts_.end());
    a = -a;
  }
  if (a < 1e-12) {  // edge-on projections collapse to a zero-area polygon
    verts_.clear();
    area_ = 0.0;
    return;
  }
  area_ = a;
  lo_ = hi_ = verts_[0];
  for (const Vec2& v : verts_) {
    lo_ = lo_.cwiseMin(v);
    hi_ = hi_.cwiseMax(v);
  }
}

ConvexPolygon ConvexPolygon::rectangle(const Vec2& lo, const Vec2& hi) {
  return ConvexPolygon({{lo.x(), lo.y()}, {hi.x(), lo.y()}, {hi.x(), hi.y()}, {lo.x(), hi.y()}});
}

bool ConvexPolygon::contains(const Vec2& p) const {
  if (verts_.size() < 3) return false;
  if (p.x() < lo_.x() - kGeomTol || p.x() > hi_.x() + kGeomTol ||
      p.y() < lo_.y() - kGeomTol || p.y() > hi_.y() + kGeomTol)
    return false;
  const size_t n = verts_.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& u = verts_[i];
    const Vec2& v = verts_[(i + 1) % n];
    const double cross = (v.x() - u.x()) * (p.y() - u.y()) - (v.y() - u.y()) * (p.x() - u.x());
    if (cross < -kGeomTol) return false;
  }
  return true;
}

ConvexPolygon clip_convex(const ConvexPolygon& subject, const ConvexPolygon& clip) {
  if (subject.empty() || clip.empty()) return {};
  std::vector<Vec2> out(subject.vertices().begin(), subject.vertices().end());
  const auto& cv = clip.vertices();
  const size_t cn = cv.size();
  std::vector<Vec2> in;
  for (size_t e = 0; e < cn && !out.empty(); ++e) {
    const Vec2 a = cv[e];
    const Vec2 b = cv[(e + 1) % cn];
    const Vec2 dir = b - a;
    in.swap(out);
    out.clear();
    auto side = [&](const Vec2& p) {
      return dir.x() * (p.y() - a.y()) - dir.y() * (p.x() - a.x());
    };
    const size_t n = in.size();
    for (size_t i = 0; i < n; ++i) {
      const Vec2& p = in[i];
      const Vec2& q = in[(i + 1) % n];
      const double sp = side(p);
      const double sq = side(q);
      if (sp >= -kGeomTol) out.push_back(p);
      if ((sp >= -kGeomTol) != (sq >= -kGeomTol)) {
        const double denom = sp - sq;
        if (std::abs(denom) > 1e-300) {
          const double t = sp / denom;
          out.push_back(p + t * (q - p));
        }
      }
    }
  }
  return ConvexPolygon(std::move(out));
}

namespace {

// x-coordinates of proper crossings between two segments; collinear or
// parallel pairs contribute nothing (their endpoints are already slab breaks).
void edge_intersection_x(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d,
                         std::vector<double>& xs) {
  const Vec2 r = b - a;
  const Vec2 s = d - c;
  const double denom = r.x() * s.y() - r.y() * s.x();
  if (std::abs(denom) < 1e-14) return;
  const Vec2 qp = c - a;
  const double t = (qp.x() * s.y() - qp.y() * s.x()) / denom;
  const double u = (qp.x() * r.y() - qp.y() * r.x()) / denom;
  if (t < -1e-12 || t > 1.0 + 1e-12 || u < -1e-12 || u > 1.0 + 1e-12) return;
  xs.push_back(a.x() + t * r.x());
}

// Vertical extent of a convex polygon at abscissa x (the polygon is known
// to span x). Returns false if it does not.
bool y_interval_at(const ConvexPolygon& poly, double x, double& ylo, double& yhi) {
  if (x < poly.bbox_lo().x() - 1e-12 || x > poly.bbox_hi().x() + 1e-12) return false;
  const auto& v = poly.vertices();
  const size_t n = v.size();
  bool any = false;
  ylo = 0.0;
  yhi = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const Vec2& p = v[i];
    const Vec2& q = v[(i + 1) % n];
    const double x0 = p.x(), x1 = q.x();
    if ((x0 - x) * (x1 - x) > 0.0) continue;  // edge entirely on one side
    double y;
    if (std::abs(x1 - x0) < 1e-14) {
      // vertical edge at x: both endpoints contribute
      for (double yy : {p.y(), q.y()}) {
        if (!any) { ylo = yhi = yy; any = true; }
        ylo = std::min(ylo, yy);
        yhi = std::max(yhi, yy);
      }
      continue;
    }
    y = p.y() + (q.y() - p.y()) * (x - x0) / (x1 - x0);
    if (!any) { ylo = yhi = y; any = true; }
    ylo = std::min(ylo, y);
    yhi = std::max(yhi, y);
  }
  return any;
}

}  // namespace

double union_area(std::span<const ConvexPolygon> polys) {
  std::vector<const ConvexPolygon*> active;
  for (const auto& p : polys)
    if (!p.empty()) active.push_back(&p);
  if (active.empty()) return 0.0;

  // Slab decomposition: between consecutive break abscissae the union of
  // per-polygon y-intervals varies linearly, so one midpoint evaluation per
  // slab integrates exactly.
  std::vector<double> xs;
  for (const auto* p : active)
    for (const Vec2& v : p->vertices()) xs.push_back(v.x());
  for (size_t i = 0; i < active.size(); ++i) {
    for (size_t j = i + 1; j < active.size(); ++j) {
      const auto* pi = active[i];
      const auto* pj = active[j];
      if (pi->bbox_hi().x() < pj->bbox_lo().x() || pj->bbox_hi().x() < pi->bbox_lo().x() ||
          pi->bbox_hi().y() < pj->bbox_lo().y() || pj->bbox_hi().y() < pi->bbox_lo().y())
        continue;
      const auto& vi = pi->vertices();
      const auto& vj = pj->vertices();
      for (size_t a = 0; a < vi.size(); ++a)
        for (size_t b = 0; b < vj.size(); ++b)
          edge_intersection_x(vi[a], vi[(a + 1) % vi.size()],
                              vj[b], vj[(b + 1) % vj.size()], xs);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(),
                       [](double a, double b) { return std::abs(a - b) < 1e-12; }),
           xs.end());

  double area = 0.0;
  std::vector<std::pair<double, double>> ivals;
  for (size_t k = 0; k + 1 < xs.size(); ++k) {
    const double width = xs[k + 1] - xs[k];
    if (width <= 1e-13) continue;
    const double xm = 0.5 * (xs[k] + xs[k + 1]);
    ivals.clear();
    for (const auto* p : active) {
      double ylo, yhi;
      if (y_interval_at(*p, xm, ylo, yhi) && yhi > ylo) ivals.emplace_back(ylo, yhi);
    }
    if (ivals.empty()) continue;
    std::sort(ivals.begin(), ivals.end());
    double total = 0.0;
    double lo = ivals[0].first, hi = ivals[0].second;
    for (size_t i = 1; i < ivals.size(); ++i) {
      if (ivals[i].first > hi) {
        total += hi - lo;
        lo = ivals[i].first;
        hi = ivals[i].second;
      } else {
        hi = std::max(hi, ivals[i].second);
      }
    }
    total += hi - lo;
    area += total * width;
  }
  return area;
}

}  // namespace agrishade
