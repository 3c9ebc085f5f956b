#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "agrishade/scene.hpp"
#include "agrishade/shadegeom.hpp"

// Isotropic-sky diffuse shading: the discretized sky-dome shading table,
// the aggregate diffuse factor and per-cell diffuse factors, with a cache
// keyed on quantized poses so fixed and frequently repeated orientations are
// evaluated once.
//
// The dome is discretized at the node altitudes {0, step, ..., 90} and
// azimuths {-180, ..., +180}; the +180 column duplicates -180 and is
// excluded from integrals. Each direction is weighted by
// cos(incidence) * cos(altitude) = sin(a) cos(a) for the horizontal ground,
// so the horizon and zenith rings carry zero weight.

namespace agrishade {

// How diffuse shading enters the per-cell PAR composition: per-cell factors
// (physically consistent default) or the aggregate dome factor applied
// uniformly to every cell.
enum class DiffuseMode { kPerCell, kUniform };

std::string to_string(DiffuseMode mode);
DiffuseMode diffuse_mode_from_string(const std::string& name);

struct DomeGrid {
  double step_deg = 1.0;
  int n_alt = 91;   // altitude nodes, 0..90 inclusive
  int n_az = 360;   // unique azimuth nodes, -180 .. 180 - step

  static DomeGrid with_step(double step_deg);
  double altitude(int i) const { return i * step_deg; }
  double azimuth(int j) const { return -180.0 + j * step_deg; }
  double weight(int i) const;
};

// Pose fingerprint: system kind plus first/second axis angles quantized to
// 0.1 degree buckets.
struct PoseKey {
  SystemKind kind = SystemKind::kVertical;
  std::int64_t omega_decideg = 0;
  std::int64_t beta_decideg = 0;

  static PoseKey from(SystemKind kind, const TrackerAngles& angles);
  bool operator==(const PoseKey&) const = default;
  std::string fingerprint() const;
};

struct PoseKeyHash {
  size_t operator()(const PoseKey& k) const {
    size_t h = std::hash<int>()(static_cast<int>(k.kind));
    h ^= std::hash<std::int64_t>()(k.omega_decideg) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= std::hash<std::int64_t>()(k.beta_decideg) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

struct ShadingTable {
  DomeGrid dome;
  PoseKey pose;
  std::vector<double> f_b;  // altitude-major, n_alt x (n_az + 1); last column
                            // duplicates the first (the +180 seam)

  double at(int i_alt, int j_az) const { return f_b[static_cast<size_t>(i_alt) * (dome.n_az + 1) + j_az]; }
};

/// Beam shading factor for a synthetic sun at every dome node. Altitude-0
/// entries are evaluated at half a step above the horizon; they carry zero
/// weight in the integral but complete the table.
ShadingTable build_shading_table(std::span<const PanelQuad> posed, const CropArea& crop,
                                 const DomeGrid& dome, PoseKey pose);

/// Aggregate isotropic diffuse shading factor from the table.
double diffuse_factor(const ShadingTable& table);

/// True iff the ray from the cell center toward (altitude, azimuth) hits any
/// panel rectangle.
bool cell_blocked(const Vec2& cell, double alt_deg, double az_deg,
                  std::span<const PanelQuad> posed);

struct DiffuseResult {
  PoseKey pose;
  double aggregate = 0.0;       // mean over cells
  std::vector<double> cells;    // row-major, x fastest
};

/// Per-cell diffuse shading factors over the dome. Exactly equivalent to
/// evaluating cell_blocked at every positive-weight node, but computed by
/// intersecting each panel's angular footprint with the dome rows
/// analytically.
DiffuseResult per_cell_diffuse(std::span<const PanelQuad> posed, const CropArea& crop,
                               const DomeGrid& dome, PoseKey pose);

// Lookup-or-insert cache of per-pose diffuse results. Safe for concurrent
// use; values are pure functions of the key so insertion races are benign.
class DiffuseCache {
 public:
  using Compute = std::function<DiffuseResult()>;

  std::shared_ptr<const DiffuseResult> get_or_compute(const PoseKey& key, const Compute& fn);

  struct Stats {
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
    size_t entries = 0;
  };
  Stats stats() const;

 private:
  mutable std::mutex mu_;
  std::unordered_map<PoseKey, std::shared_ptr<const DiffuseResult>, PoseKeyHash> map_;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
};

// Flat binary persistence for shading tables (documented layout: header,
// then altitude-major 8-byte little-endian doubles).
void save_shading_table(const ShadingTable& table, const std::string& path);
std::optional<ShadingTable> load_shading_table(const std::string& path);

}  // namespace agrishade
