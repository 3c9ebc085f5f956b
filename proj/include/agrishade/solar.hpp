#pragma once

#include <cstdint>
#include <optional>

#include "agrishade/geometry.hpp"
#include "agrishade/scene.hpp"

// Solar ephemeris and per-timestep radiation scalars.
//
// The position algorithm is the compact series solution from Meeus'
// "Astronomical Algorithms" (low-accuracy solar coordinates plus apparent
// sidereal time), good to about 0.01 degrees over 1950-2100; we document
// and test a conservative 0.2 degree bound against an independently coded
// reference. Azimuth convention everywhere: 0 = south, positive toward
// west, range (-180, 180].

namespace agrishade {

struct UtcTime {
  std::int64_t seconds = 0;  // since 1970-01-01T00:00:00Z

  static UtcTime from_civil(int year, int month, int day, int hour = 0, int minute = 0,
                            int sec = 0);
  void to_civil(int& year, int& month, int& day, int& hour, int& minute, int& sec) const;

  double julian_date() const;
  int day_of_year() const;  // 1-based
  int year() const;
  UtcTime plus_seconds(std::int64_t s) const { return {seconds + s}; }

  auto operator<=>(const UtcTime&) const = default;
};

struct SolarPosition {
  double elevation_deg = 0.0;
  double azimuth_deg = 0.0;   // 0 = south, + toward west
  double hour_angle_deg = 0.0;
  double declination_deg = 0.0;
};

constexpr double kSolarConstant = 1367.0;  // W/m2

/// Apparent solar elevation/azimuth. Throws SimulationError for timestamps
/// outside 1950-2100 (series accuracy is not established there).
SolarPosition solar_position(UtcTime t, const SiteConfig& site);

/// Unit vector toward the sun: (cos a sin g, cos a cos g, sin a).
Vec3 solar_vector(const SolarPosition& pos);

/// Horizontal extraterrestrial irradiance, W/m2; zero when the sun is at or
/// below the horizon. Eccentricity factor 1 + 0.033 cos(2 pi n / 365).
double extraterrestrial_horizontal(UtcTime t, const SolarPosition& pos);

/// Clear-sky GHI: passes a supplied input column through unchanged,
/// otherwise falls back to the Haurwitz elevation-based model
/// 1098 cos(Z) exp(-0.059 / cos(Z)). Zero at or below the horizon.
double clearsky_ghi(std::optional<double> column_value, const SolarPosition& pos);

/// Apparent solar time in hours [0, 24), from the ephemeris hour angle
/// (equivalent to UTC + 4 min/degree of longitude + equation of time).
double apparent_solar_time(UtcTime t, const SiteConfig& site);

struct RadiationScalars {
  double e_ext = 0.0;  // W/m2, horizontal extraterrestrial
  double g_cs = 0.0;   // W/m2, clear-sky GHI
  double ast_h = 0.0;  // apparent solar time, hours
};

}  // namespace agrishade
