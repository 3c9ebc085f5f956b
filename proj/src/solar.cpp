#include "agrishade/solar.hpp"

#include <cmath>

#include "agrishade/errors.hpp"

namespace agrishade {

namespace {

// Howard Hinnant's civil-date algorithms.
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2u) / 5u + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
  y = static_cast<int>(yy + (m <= 2));
}

double wrap180(double deg) {
  deg = std::fmod(deg, 360.0);
  if (deg > 180.0) deg -= 360.0;
  if (deg <= -180.0) deg += 360.0;
  return deg;
}

}  // namespace

UtcTime UtcTime::from_civil(int year, int month, int day, int hour, int minute, int sec) {
  return {days_from_civil(year, month, day) * 86400 + hour * 3600 + minute * 60 + sec};
}

void UtcTime::to_civil(int& year, int& month, int& day, int& hour, int& minute, int& sec) const {
  std::int64_t days = seconds / 86400;
  std::int64_t rem = seconds % 86400;
  if (rem < 0) {
    rem += 86400;
    days -= 1;
  }
  civil_from_days(days, year, month, day);
  hour = static_cast<int>(rem / 3600);
  minute = static_cast<int>((rem % 3600) / 60);
  sec = static_cast<int>(rem % 60);
}

double UtcTime::julian_date() const {
  return 2440587.5 + static_cast<double>(seconds) / 86400.0;
}

int UtcTime::day_of_year() const {
  int y, m, d, hh, mm, ss;
  to_civil(y, m, d, hh, mm, ss);
  return static_cast<int>(seconds / 86400 - days_from_civil(y, 1, 1)) + 1;
}

int UtcTime::year() const {
  int y, m, d, hh, mm, ss;
  to_civil(y, m, d, hh, mm, ss);
  return y;
}

SolarPosition solar_position(UtcTime t, const SiteConfig& site) {
  const int yr = t.year();
  if (yr < 1950 || yr > 2100)
    throw SimulationError("timestamp-out-of-range: solar ephemeris supports years 1950-2100");

  const double jd = t.julian_date();
  const double T = (jd - 2451545.0) / 36525.0;

  const double L0 = std::fmod(280.46646 + T * (36000.76983 + 0.0003032 * T), 360.0);
  const double M = 357.52911 + T * (35999.05029 - 0.0001537 * T);
  const double Mr = deg2rad(M);
  const double C = std::sin(Mr) * (1.914602 - T * (0.004817 + 0.000014 * T)) +
                   std::sin(2 * Mr) * (0.019993 - 0.000101 * T) +
                   std::sin(3 * Mr) * 0.000289;
  const double true_long = L0 + C;
  const double omega = 125.04 - 1934.136 * T;
  const double lambda = true_long - 0.00569 - 0.00478 * std::sin(deg2rad(omega));

  const double eps0 =
      23.0 + (26.0 + (21.448 - T * (46.8150 + T * (0.00059 - T * 0.001813))) / 60.0) / 60.0;
  const double eps = eps0 + 0.00256 * std::cos(deg2rad(omega));

  const double lr = deg2rad(lambda);
  const double er = deg2rad(eps);
  const double ra = rad2deg(std::atan2(std::cos(er) * std::sin(lr), std::cos(lr)));
  const double decl = rad2deg(std::asin(std::sin(er) * std::sin(lr)));

  // mean sidereal time, degrees; the equation-of-equinoxes term is a few
  // millidegrees and irrelevant at our accuracy target
  const double gmst = 280.46061837 + 360.98564736629 * (jd - 2451545.0) +
                      0.000387933 * T * T - T * T * T / 38710000.0;
  const double lst = gmst + site.longitude_deg;
  const double ha = wrap180(lst - ra);

  const double phi = deg2rad(site.latitude_deg);
  const double dr = deg2rad(decl);
  const double hr = deg2rad(ha);
  const double sin_elev =
      std::sin(phi) * std::sin(dr) + std::cos(phi) * std::cos(dr) * std::cos(hr);
  const double elev = rad2deg(std::asin(std::clamp(sin_elev, -1.0, 1.0)));

  // measured from south, positive toward west
  const double az = rad2deg(std::atan2(
      std::sin(hr), std::cos(hr) * std::sin(phi) - std::tan(dr) * std::cos(phi)));

  SolarPosition pos;
  pos.elevation_deg = elev;
  pos.azimuth_deg = wrap180(az);
  pos.hour_angle_deg = ha;
  pos.declination_deg = decl;
  return pos;
}

Vec3 solar_vector(const SolarPosition& pos) {
  const double a = deg2rad(pos.elevation_deg);
  const double g = deg2rad(pos.azimuth_deg);
  return {std::cos(a) * std::sin(g), std::cos(a) * std::cos(g), std::sin(a)};
}

double extraterrestrial_horizontal(UtcTime t, const SolarPosition& pos) {
  const double sin_elev = std::sin(deg2rad(pos.elevation_deg));
  if (sin_elev <= 0.0) return 0.0;
  const int n = t.day_of_year();
  const double ecc = 1.0 + 0.033 * std::cos(2.0 * kPi * n / 365.0);
  return kSolarConstant * ecc * sin_elev;
}

double clearsky_ghi(std::optional<double> column_value, const SolarPosition& pos) {
  if (column_value.has_value()) return *column_value;
  const double cz = std::sin(deg2rad(pos.elevation_deg));  // cos of zenith
  if (cz <= 0.0) return 0.0;
  return 1098.0 * cz * std::exp(-0.059 / cz);
}

double apparent_solar_time(UtcTime t, const SiteConfig& site) {
  const SolarPosition pos = solar_position(t, site);
  double ast = 12.0 + pos.hour_angle_deg / 15.0;
  ast = std::fmod(ast, 24.0);
  if (ast < 0.0) ast += 24.0;
  return ast;
}

}  // namespace agrishade
