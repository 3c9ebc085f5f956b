#include "agrishade/skydiffuse.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "agrishade/errors.hpp"

namespace agrishade {

std::string to_string(DiffuseMode mode) {
  return mode == DiffuseMode::kPerCell ? "per-cell" : "uniform";
}

DiffuseMode diffuse_mode_from_string(const std::string& name) {
  if (name == "per-cell" || name == "per_cell") return DiffuseMode::kPerCell;
  if (name == "uniform") return DiffuseMode::kUniform;
  throw ConfigError("unknown diffuse mode: '" + name + "' (expected per-cell | uniform)");
}

DomeGrid DomeGrid::with_step(double step_deg) {
  if (!(step_deg > 0.01))
    throw ConfigError("dome step must be > 0.01 degrees");
  const double na = 90.0 / step_deg;
  const double nz = 360.0 / step_deg;
  if (std::abs(na - std::round(na)) > 1e-9 || std::abs(nz - std::round(nz)) > 1e-9)
    throw ConfigError("dome step must divide both 90 and 360 degrees evenly");
  DomeGrid g;
  g.step_deg = step_deg;
  g.n_alt = static_cast<int>(std::llround(na)) + 1;
  g.n_az = static_cast<int>(std::llround(nz));
  return g;
}

double DomeGrid::weight(int i) const {
  const double a = deg2rad(altitude(i));
  return std::sin(a) * std::cos(a);
}

PoseKey PoseKey::from(SystemKind kind, const TrackerAngles& angles) {
  auto bucket = [](double deg) {
    return static_cast<std::int64_t>(std::floor(deg * 10.0 + 1e-7));
  };
  return {kind, bucket(angles.omega_itc_deg),
          kind == SystemKind::kTwoAxis ? bucket(angles.beta_itc_deg) : 0};
}

std::string PoseKey::fingerprint() const {
  return to_string(kind) + "_w" + std::to_string(omega_decideg) + "_b" +
         std::to_string(beta_decideg);
}

namespace {

// Directions blocked by one panel as seen from a viewpoint form a convex
// cone: the intersection of five half-spaces through the origin (four edge
// planes plus the panel-plane side that gives a forward hit). Both the
// brute-force ray test and the analytic dome rasterizer share this predicate
// so they agree bit-for-bit.
struct ConeClip {
  std::array<Vec3, 5> n{};
  bool valid = false;

  // rel: panel center relative to the viewpoint; off: perimeter-ordered
  // corner offsets from the center.
  static ConeClip from_rel(const Vec3& rel, const std::array<Vec3, 4>& off) {
    ConeClip c;
    std::array<Vec3, 4> k;
    for (int i = 0; i < 4; ++i) k[i] = rel + off[i];
    const Vec3 g = 0.25 * (k[0] + k[1] + k[2] + k[3]);
    Vec3 m = (k[1] - k[0]).cross(k[2] - k[0]);
    const double h = m.dot(g);
    if (std::abs(h) <= 1e-12 * m.norm() * g.norm()) return c;  // edge-on: no hit
    c.n[4] = h > 0 ? m : Vec3(-m);
    for (int i = 0; i < 4; ++i) {
      Vec3 e = k[i].cross(k[(i + 1) % 4]);
      if (e.norm() <= 1e-12 * k[i].norm() * k[(i + 1) % 4].norm()) {
        c.n[i].setZero();  // viewpoint collinear with this edge: vacuous plane
        continue;
      }
      c.n[i] = e.dot(g) >= 0 ? e : Vec3(-e);
    }
    c.valid = true;
    return c;
  }

  bool blocked(const Vec3& d) const {
    if (!valid) return false;
    for (const Vec3& p : n)
      if (d.dot(p) < 0.0) return false;
    return true;
  }
};

std::array<Vec3, 4> corner_offsets(const PanelQuad& q) {
  const auto p = q.perimeter();
  return {p[0] - q.center, p[1] - q.center, p[2] - q.center, p[3] - q.center};
}

Vec3 direction_from(double alt_deg, double az_deg) {
  const double a = deg2rad(alt_deg);
  const double g = deg2rad(az_deg);
  return {std::cos(a) * std::sin(g), std::cos(a) * std::cos(g), std::sin(a)};
}

// Altitude range (degrees) of the cone footprint. Corner altitudes bound the
// minimum (edge arcs between upper-hemisphere directions never dip below
// their endpoints); the maximum may bulge above the corners where an edge
// arc culminates, and reaches 90 when the cone contains the zenith.
void footprint_alt_range(const ConeClip& cone, const Vec3& rel, const std::array<Vec3, 4>& off,
                         double& amin_deg, double& amax_deg) {
  std::array<Vec3, 4> khat;
  amin_deg = 90.0;
  amax_deg = 0.0;
  for (int i = 0; i < 4; ++i) {
    khat[i] = (rel + off[i]).normalized();
    const double a = rad2deg(std::asin(std::clamp(khat[i].z(), -1.0, 1.0)));
    amin_deg = std::min(amin_deg, a);
    amax_deg = std::max(amax_deg, a);
  }
  for (int i = 0; i < 4; ++i) {
    const Vec3& u = khat[i];
    const Vec3& v = khat[(i + 1) % 4];
    Vec3 nc = u.cross(v);
    const double nl = nc.norm();
    if (nl < 1e-14) continue;
    nc /= nl;
    const double horiz2 = nc.x() * nc.x() + nc.y() * nc.y();
    if (horiz2 < 1e-28) continue;  // horizontal circle: constant altitude
    Vec3 apex(-nc.x() * nc.z(), -nc.y() * nc.z(), horiz2);
    apex /= std::sqrt(horiz2);  // unit, with z = sqrt(1 - nc.z^2)
    if (u.cross(apex).dot(nc) >= -1e-12 && apex.cross(v).dot(nc) >= -1e-12)
      amax_deg = std::max(amax_deg, rad2deg(std::asin(std::clamp(apex.z(), -1.0, 1.0))));
  }
  if (cone.blocked(Vec3(0, 0, 1))) amax_deg = 90.0;
  amin_deg = std::max(amin_deg, 0.0);
}

constexpr double kTwoPi = 2.0 * kPi;

struct ArcList {
  // segments (start, end), end > start, total length <= 2*pi
  std::array<std::pair<double, double>, 16> seg;
  int count = 0;
  bool full = true;  // before any constraint is applied

  void clip(double a, double len) {
    // intersect with the arc [a, a+len]
    if (len >= kTwoPi - 1e-12) return;
    if (len <= 0.0) {
      count = 0;
      full = false;
      return;
    }
    std::array<std::pair<double, double>, 16> out;
    int n_out = 0;
    auto emit = [&](double lo, double hi) {
      if (hi - lo > 1e-14 && n_out < 16) out[n_out++] = {lo, hi};
    };
    if (full) {
      full = false;
      double lo = a;
      // normalize to [-pi, pi)
      lo = std::remainder(lo, kTwoPi);
      emit(lo, lo + len);
      count = n_out;
      std::copy_n(out.begin(), n_out, seg.begin());
      return;
    }
    for (int i = 0; i < count; ++i) {
      const double s = seg[i].first;
      const double e = seg[i].second;
      double shift = std::fmod(a - s, kTwoPi);
      if (shift < 0) shift += kTwoPi;
      const double a1 = s + shift;
      const double b1 = a1 + len;
      emit(std::max(s, a1), std::min(e, b1));
      emit(std::max(s, a1 - kTwoPi), std::min(e, b1 - kTwoPi));
    }
    count = n_out;
    std::copy_n(out.begin(), n_out, seg.begin());
  }

  bool empty() const { return !full && count == 0; }
};

struct RowIv {
  std::int16_t row;
  std::int16_t lo;
  std::int16_t hi;
};

// Per-row trig tables for the dome; altitude/azimuth expressions match
// cell_blocked exactly so snapped intervals agree with the ray test.
struct DomeTrig {
  int n_alt, n_az;
  double step_deg, step_rad;
  std::vector<double> row_sin, row_cos, row_tan, row_w;
  std::vector<double> col_sin, col_cos;

  explicit DomeTrig(const DomeGrid& dome)
      : n_alt(dome.n_alt), n_az(dome.n_az), step_deg(dome.step_deg),
        step_rad(deg2rad(dome.step_deg)) {
    row_sin.resize(n_alt);
    row_cos.resize(n_alt);
    row_tan.resize(n_alt);
    row_w.resize(n_alt);
    for (int i = 0; i < n_alt; ++i) {
      const double a = deg2rad(dome.altitude(i));
      row_sin[i] = std::sin(a);
      row_cos[i] = std::cos(a);
      row_tan[i] = row_cos[i] > 0 ? row_sin[i] / row_cos[i] : 1e300;
      row_w[i] = row_sin[i] * row_cos[i];
    }
    col_sin.resize(n_az);
    col_cos.resize(n_az);
    for (int j = 0; j < n_az; ++j) {
      const double g = deg2rad(dome.azimuth(j));
      col_sin[j] = std::sin(g);
      col_cos[j] = std::cos(g);
    }
  }

  Vec3 node_dir(int i, int j) const {
    return {row_cos[i] * col_sin[j], row_cos[i] * col_cos[j], row_sin[i]};
  }
};

// Analytic footprint of one cone on the dome rows: for each altitude row the
// five half-spaces each cut one arc out of the row circle; their
// intersection, snapped to the exact predicate at the endpoints, gives the
// blocked node columns.
void footprint_intervals(const ConeClip& cone, const Vec3& rel, const std::array<Vec3, 4>& off,
                         const DomeTrig& trig, std::vector<RowIv>& out) {
  if (!cone.valid) return;
  double amin, amax;
  footprint_alt_range(cone, rel, off, amin, amax);
  int i_lo = std::max(1, static_cast<int>(std::floor(amin / trig.step_deg)));
  int i_hi = std::min(trig.n_alt - 2, static_cast<int>(std::ceil(amax / trig.step_deg)));

  // row-independent pieces of the half-space conditions
  std::array<double, 5> phi0, inv_rh, kz;
  std::array<bool, 5> degen;
  for (int c = 0; c < 5; ++c) {
    const Vec3& n = cone.n[c];
    const double rh = std::hypot(n.x(), n.y());
    degen[c] = rh < 1e-300;
    phi0[c] = degen[c] ? 0.0 : std::atan2(n.y(), n.x());
    inv_rh[c] = degen[c] ? 0.0 : 1.0 / rh;
    kz[c] = n.z();
  }

  for (int i = i_lo; i <= i_hi; ++i) {
    ArcList arcs;
    bool empty_row = false;
    for (int c = 0; c < 5 && !empty_row; ++c) {
      const Vec3& n = cone.n[c];
      if (n.squaredNorm() == 0.0) continue;  // vacuous constraint
      if (degen[c]) {
        // horizontal-normal-free constraint: n.z * sin(alt) >= 0
        if (kz[c] * trig.row_sin[i] < 0.0) empty_row = true;
        continue;
      }
      // A sin(g) + B cos(g) >= C with A = nx cos a, B = ny cos a, C = -nz sin a
      const double tau = -kz[c] * trig.row_tan[i] * inv_rh[c];
      if (tau <= -1.0) continue;  // whole circle satisfies it
      if (tau > 1.0) {
        empty_row = true;
        continue;
      }
      const double psi = std::asin(tau);
      arcs.clip(psi - phi0[c], kPi - 2.0 * psi);
      if (arcs.empty()) empty_row = true;
    }
    if (empty_row || arcs.empty()) continue;

    auto emit_nodes = [&](double lo, double hi) {
      // columns j with azimuth in [lo, hi]; node j sits at -pi + j*step
      long jlo = static_cast<long>(std::ceil((lo + kPi) / trig.step_rad - 1e-6));
      long jhi = static_cast<long>(std::floor((hi + kPi) / trig.step_rad + 1e-6));
      if (jhi < jlo) return;
      // near-full circles: cover every column once, then let the snap trim
      if (jhi - jlo + 1 > trig.n_az) jhi = jlo + trig.n_az - 1;
      while (jlo < 0) { jlo += trig.n_az; jhi += trig.n_az; }
      // snap endpoints to the exact predicate (shrink only)
      auto col = [&](long j) { return static_cast<int>(j % trig.n_az); };
      while (jlo <= jhi && !cone.blocked(trig.node_dir(i, col(jlo)))) ++jlo;
      while (jlo <= jhi && !cone.blocked(trig.node_dir(i, col(jhi)))) --jhi;
      if (jhi < jlo) return;
      long a = jlo % trig.n_az;
      long b = jhi % trig.n_az;
      if (a <= b && jhi - jlo == b - a) {
        out.push_back({static_cast<std::int16_t>(i), static_cast<std::int16_t>(a),
                       static_cast<std::int16_t>(b)});
      } else {  // wraps the seam: split
        out.push_back({static_cast<std::int16_t>(i), static_cast<std::int16_t>(a),
                       static_cast<std::int16_t>(trig.n_az - 1)});
        out.push_back({static_cast<std::int16_t>(i), 0, static_cast<std::int16_t>(b)});
      }
    };

    if (arcs.full) {
      out.push_back({static_cast<std::int16_t>(i), 0, static_cast<std::int16_t>(trig.n_az - 1)});
    } else {
      for (int k = 0; k < arcs.count; ++k) emit_nodes(arcs.seg[k].first, arcs.seg[k].second);
    }
  }
}

struct OffsetKey {
  int group;
  std::uint64_t x, y, z;
  bool operator==(const OffsetKey&) const = default;
};

struct OffsetKeyHash {
  size_t operator()(const OffsetKey& k) const {
    std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(k.group);
    for (std::uint64_t v : {k.x, k.y, k.z}) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

}  // namespace

bool cell_blocked(const Vec2& cell, double alt_deg, double az_deg,
                  std::span<const PanelQuad> posed) {
  const Vec3 dir = direction_from(alt_deg, az_deg);
  const Vec3 view(cell.x(), cell.y(), 0.0);
  for (const auto& quad : posed) {
    const Vec3 rel = quad.center - view;
    const auto cone = ConeClip::from_rel(rel, corner_offsets(quad));
    if (cone.blocked(dir)) return true;
  }
  return false;
}

ShadingTable build_shading_table(std::span<const PanelQuad> posed, const CropArea& crop,
                                 const DomeGrid& dome, PoseKey pose) {
  ShadingTable table;
  table.dome = dome;
  table.pose = pose;
  const int cols = dome.n_az + 1;
  table.f_b.assign(static_cast<size_t>(dome.n_alt) * cols, 0.0);
  if (posed.empty() || crop.total_area() <= 0.0) return table;

  const double a_tot = crop.total_area();
  for (int i = 0; i < dome.n_alt; ++i) {
    double alt = dome.altitude(i);
    if (i == 0) alt = 0.5 * dome.step_deg;  // horizon entries: just above 0
    const bool zenith = i == dome.n_alt - 1;
    for (int j = 0; j < dome.n_az; ++j) {
      double fb;
      if (zenith && j > 0) {
        fb = table.at(i, 0);  // azimuth degenerate at the zenith
      } else {
        const Vec3 dir = direction_from(alt, dome.azimuth(j));
        const auto shadows = shadow_polygons(posed, dir);
        fb = beam_shading_factor(union_area_clipped(shadows, crop), a_tot);
      }
      table.f_b[static_cast<size_t>(i) * cols + j] = fb;
    }
    table.f_b[static_cast<size_t>(i) * cols + dome.n_az] = table.at(i, 0);  // +180 seam
  }
  return table;
}

double diffuse_factor(const ShadingTable& table) {
  const DomeGrid& dome = table.dome;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < dome.n_alt; ++i) {
    const double w = dome.weight(i);
    if (w <= 0.0) continue;
    double row = 0.0;
    for (int j = 0; j < dome.n_az; ++j) row += table.at(i, j);  // seam column excluded
    num += w * row;
    den += w * dome.n_az;
  }
  return den > 0.0 ? num / den : 0.0;
}

DiffuseResult per_cell_diffuse(std::span<const PanelQuad> posed, const CropArea& crop,
                               const DomeGrid& dome, PoseKey pose) {
  DiffuseResult res;
  res.pose = pose;
  res.cells.assign(static_cast<size_t>(crop.cell_count()), 0.0);
  if (posed.empty() || crop.cell_count() == 0) return res;

  const DomeTrig trig(dome);
  double denom = 0.0;
  for (int i = 1; i <= trig.n_alt - 2; ++i) denom += trig.row_w[i] * trig.n_az;
  if (denom <= 0.0) return res;

  // panels sharing identical corner-offset sets (the common case: one pose)
  // reuse footprints through the relative-offset cache
  std::vector<std::array<Vec3, 4>> group_offsets;
  std::vector<int> panel_group(posed.size());
  for (size_t p = 0; p < posed.size(); ++p) {
    const auto off = corner_offsets(posed[p]);
    int g = -1;
    for (size_t k = 0; k < group_offsets.size(); ++k) {
      bool same = true;
      for (int c = 0; c < 4 && same; ++c)
        same = group_offsets[k][c] == off[c];
      if (same) {
        g = static_cast<int>(k);
        break;
      }
    }
    if (g < 0) {
      group_offsets.push_back(off);
      g = static_cast<int>(group_offsets.size()) - 1;
    }
    panel_group[p] = g;
  }

  auto bits = [](double v) { return std::bit_cast<std::uint64_t>(v); };
  std::unordered_map<OffsetKey, std::vector<RowIv>, OffsetKeyHash> cache;
  cache.reserve(4096);

  std::vector<RowIv> scratch;
  scratch.reserve(2048);

  for (int iy = 0; iy < crop.ny; ++iy) {
    for (int ix = 0; ix < crop.nx; ++ix) {
      const Vec2 cc = crop.cell_center(ix, iy);
      const Vec3 view(cc.x(), cc.y(), 0.0);
      scratch.clear();
      for (size_t p = 0; p < posed.size(); ++p) {
        const Vec3 rel = posed[p].center - view;
        const OffsetKey key{panel_group[p], bits(rel.x()), bits(rel.y()), bits(rel.z())};
        auto it = cache.find(key);
        if (it == cache.end()) {
          std::vector<RowIv> ivs;
          const auto& off = group_offsets[panel_group[p]];
          const auto cone = ConeClip::from_rel(rel, off);
          footprint_intervals(cone, rel, off, trig, ivs);
          it = cache.emplace(key, std::move(ivs)).first;
        }
        scratch.insert(scratch.end(), it->second.begin(), it->second.end());
      }
      if (scratch.empty()) continue;
      std::sort(scratch.begin(), scratch.end(), [](const RowIv& a, const RowIv& b) {
        return a.row != b.row ? a.row < b.row : a.lo < b.lo;
      });
      double total = 0.0;
      int cur_row = -1;
      int cur_lo = 0, cur_hi = -1;
      auto flush = [&]() {
        if (cur_row >= 0 && cur_hi >= cur_lo)
          total += trig.row_w[cur_row] * (cur_hi - cur_lo + 1);
      };
      for (const RowIv& iv : scratch) {
        if (iv.row != cur_row || iv.lo > cur_hi + 1) {
          flush();
          cur_row = iv.row;
          cur_lo = iv.lo;
          cur_hi = iv.hi;
        } else {
          cur_hi = std::max(cur_hi, static_cast<int>(iv.hi));
        }
      }
      flush();
      res.cells[static_cast<size_t>(iy) * crop.nx + ix] = total / denom;
    }
  }

  double sum = 0.0;
  for (double v : res.cells) sum += v;
  res.aggregate = sum / res.cells.size();
  return res;
}

std::shared_ptr<const DiffuseResult> DiffuseCache::get_or_compute(const PoseKey& key,
                                                                  const Compute& fn) {
  {
    std::lock_guard lock(mu_);
    auto it = map_.find(key);
    if (it != map_.end()) {
      ++hits_;
      return it->second;
    }
  }
  // computed outside the lock; concurrent duplicates produce identical values
  auto value = std::make_shared<const DiffuseResult>(fn());
  std::lock_guard lock(mu_);
  auto [it, inserted] = map_.emplace(key, value);
  if (!inserted) {
    ++hits_;
    return it->second;
  }
  ++misses_;
  return value;
}

DiffuseCache::Stats DiffuseCache::stats() const {
  std::lock_guard lock(mu_);
  return {hits_, misses_, map_.size()};
}

namespace {
constexpr char kTableMagic[8] = {'A', 'S', 'H', 'T', '0', '0', '0', '1'};
}

void save_shading_table(const ShadingTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SimulationError("cannot write shading table: " + path);
  out.write(kTableMagic, 8);
  const std::int32_t kind = static_cast<std::int32_t>(table.pose.kind);
  const std::int32_t n_alt = table.dome.n_alt;
  const std::int32_t n_cols = table.dome.n_az + 1;
  out.write(reinterpret_cast<const char*>(&kind), 4);
  out.write(reinterpret_cast<const char*>(&table.pose.omega_decideg), 8);
  out.write(reinterpret_cast<const char*>(&table.pose.beta_decideg), 8);
  out.write(reinterpret_cast<const char*>(&table.dome.step_deg), 8);
  out.write(reinterpret_cast<const char*>(&n_alt), 4);
  out.write(reinterpret_cast<const char*>(&n_cols), 4);
  out.write(reinterpret_cast<const char*>(table.f_b.data()),
            static_cast<std::streamsize>(table.f_b.size() * sizeof(double)));
}

std::optional<ShadingTable> load_shading_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kTableMagic, 8) != 0) return std::nullopt;
  std::int32_t kind = 0, n_alt = 0, n_cols = 0;
  ShadingTable table;
  in.read(reinterpret_cast<char*>(&kind), 4);
  in.read(reinterpret_cast<char*>(&table.pose.omega_decideg), 8);
  in.read(reinterpret_cast<char*>(&table.pose.beta_decideg), 8);
  in.read(reinterpret_cast<char*>(&table.dome.step_deg), 8);
  in.read(reinterpret_cast<char*>(&n_alt), 4);
  in.read(reinterpret_cast<char*>(&n_cols), 4);
  if (!in || n_alt <= 0 || n_cols <= 1) return std::nullopt;
  table.pose.kind = static_cast<SystemKind>(kind);
  table.dome.n_alt = n_alt;
  table.dome.n_az = n_cols - 1;
  table.f_b.resize(static_cast<size_t>(n_alt) * n_cols);
  in.read(reinterpret_cast<char*>(table.f_b.data()),
          static_cast<std::streamsize>(table.f_b.size() * sizeof(double)));
  if (!in) return std::nullopt;
  return table;
}

}  // namespace agrishade
