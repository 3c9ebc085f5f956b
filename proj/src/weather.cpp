#include "agrishade/weather.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "agrishade/errors.hpp"

namespace agrishade {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

[[noreturn]] void fail(int line_no, const std::string& what) {
  throw IngestError("line " + std::to_string(line_no) + ": " + what);
}

double parse_value(const std::string& field, int line_no) {
  if (field.empty() || field == "nan" || field == "NaN" || field == "NAN" || field == "NA")
    return kNaN;
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0') fail(line_no, "malformed-row: bad number '" + field + "'");
  if (v <= -990.0) return kNaN;  // station missing-data sentinel
  return v;
}

UtcTime parse_timestamp(const std::string& field, const std::string& format, int line_no) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, se = 0;
  bool ok = false;
  if (format == "iso") {
    // YYYY-MM-DD[T ]HH:MM[:SS]
    int n = std::sscanf(field.c_str(), "%4d-%2d-%2d%*1[T ]%2d:%2d:%2d", &y, &mo, &d, &h, &mi, &se);
    if (n == 5) {
      se = 0;
      ok = true;
    } else if (n == 6) {
      ok = true;
    }
  } else if (format == "ymdhm") {
    // YYYYMMDDHHMM
    if (field.size() == 12) {
      int n = std::sscanf(field.c_str(), "%4d%2d%2d%2d%2d", &y, &mo, &d, &h, &mi);
      ok = n == 5;
    }
  } else {
    throw IngestError("unknown timestamp format: '" + format + "' (expected iso | ymdhm)");
  }
  if (!ok) fail(line_no, "malformed-row: bad timestamp '" + field + "'");
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23 || mi < 0 || mi > 59 || se < 0 ||
      se > 59)
    fail(line_no, "malformed-row: timestamp out of range '" + field + "'");
  return UtcTime::from_civil(y, mo, d, h, mi, se);
}

struct Columns {
  int timestamp = -1, ghi = -1, par = -1, kd_sat = -1, gcs = -1, kd_meas = -1;
};

Columns resolve_columns(const std::vector<std::string>& header, const IngestSpec& spec) {
  auto find = [&](const std::string& name, bool required) {
    if (name.empty()) return -1;
    for (size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    if (required) throw IngestError("column '" + name + "' not found in header");
    throw IngestError("optional column '" + name + "' named in the ingest spec but not in header");
  };
  Columns c;
  c.timestamp = find(spec.timestamp_column, true);
  c.ghi = find(spec.ghi_column, true);
  c.par = find(spec.par_column, true);
  if (!spec.kd_sat_column.empty()) c.kd_sat = find(spec.kd_sat_column, false);
  if (!spec.gcs_column.empty()) c.gcs = find(spec.gcs_column, false);
  if (!spec.kd_measured_column.empty()) c.kd_meas = find(spec.kd_measured_column, false);
  return c;
}

std::optional<double> opt_from(double v) {
  if (std::isnan(v)) return std::nullopt;
  return v;
}

}  // namespace

ParUnit par_unit_from_string(const std::string& name) {
  if (name == "W/m2" || name == "w/m2") return ParUnit::kWattsPerM2;
  if (name == "umol/m2/s" || name == "umol") return ParUnit::kMicromolPerM2S;
  throw ConfigError("unknown PAR unit: '" + name + "' (expected W/m2 | umol/m2/s)");
}

Cadence cadence_from_string(const std::string& name) {
  if (name == "hourly") return Cadence::kHourly;
  if (name == "half-hourly" || name == "halfhourly") return Cadence::kHalfHourly;
  throw ConfigError("unknown cadence: '" + name + "' (expected hourly | half-hourly)");
}

std::vector<WeatherRecord> ingest_weather(const IngestSpec& spec, GapReport* report) {
  std::ifstream in(spec.path);
  if (!in) throw IngestError("cannot open weather file: " + spec.path);

  std::string line;
  if (!std::getline(in, line)) throw IngestError("empty weather file: " + spec.path);
  const Columns cols = resolve_columns(split_csv(line), spec);

  const std::int64_t step_s = spec.cadence == Cadence::kHourly ? 3600 : 1800;
  std::vector<WeatherRecord> raw;
  GapReport rep;
  int line_no = 1;
  std::int64_t prev = std::numeric_limits<std::int64_t>::min();
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    const int needed = std::max({cols.timestamp, cols.ghi, cols.par, cols.kd_sat, cols.gcs,
                                 cols.kd_meas});
    if (static_cast<int>(fields.size()) <= needed)
      fail(line_no, "malformed-row: expected at least " + std::to_string(needed + 1) + " fields");

    WeatherRecord r;
    r.source_line = line_no;
    r.start = parse_timestamp(fields[cols.timestamp], spec.timestamp_format, line_no);
    if (r.start.seconds <= prev) fail(line_no, "timestamps must be strictly increasing");
    if (prev != std::numeric_limits<std::int64_t>::min() &&
        (r.start.seconds - prev) % step_s != 0)
      fail(line_no, "cadence-violation: timestamp not on the expected grid");
    prev = r.start.seconds;

    r.ghi_wm2 = parse_value(fields[cols.ghi], line_no);
    if (r.ghi_wm2 < 0.0) fail(line_no, "unit-violation: negative GHI");
    r.par_wm2 = parse_value(fields[cols.par], line_no);
    if (r.par_wm2 < 0.0) fail(line_no, "unit-violation: negative PAR");
    if (spec.par_unit == ParUnit::kMicromolPerM2S && !std::isnan(r.par_wm2))
      r.par_wm2 /= kUmolPerWattPar;

    if (cols.kd_sat >= 0) {
      const double v = parse_value(fields[cols.kd_sat], line_no);
      if (!std::isnan(v)) {
        if (v < -1e-3 || v > 1.0 + 1e-3) fail(line_no, "unit-violation: diffuse fraction outside [0, 1]");
        r.kd_satellite = std::clamp(v, 0.0, 1.0);
      }
    }
    if (cols.gcs >= 0) {
      const double v = parse_value(fields[cols.gcs], line_no);
      if (!std::isnan(v) && v < 0.0) fail(line_no, "unit-violation: negative clear-sky GHI");
      r.g_cs_wm2 = opt_from(v);
    }
    if (cols.kd_meas >= 0) {
      const double v = parse_value(fields[cols.kd_meas], line_no);
      if (!std::isnan(v)) {
        if (v < -1e-3 || v > 1.0 + 1e-3) fail(line_no, "unit-violation: diffuse fraction outside [0, 1]");
        r.kd_measured = std::clamp(v, 0.0, 1.0);
      }
    }
    raw.push_back(std::move(r));
  }
  rep.n_source_rows = static_cast<int>(raw.size());

  std::vector<WeatherRecord> records;
  if (spec.cadence == Cadence::kHourly) {
    records = std::move(raw);
  } else {
    // aggregate half-hour pairs to hourly means; a slot with one missing half
    // uses the other half alone
    for (size_t i = 0; i < raw.size();) {
      const std::int64_t hour_start = raw[i].start.seconds - (raw[i].start.seconds % 3600);
      WeatherRecord agg;
      agg.start = {hour_start};
      agg.source_line = raw[i].source_line;
      double ghi_sum = 0, par_sum = 0, kd_sum = 0, gcs_sum = 0, kdm_sum = 0;
      int n_ghi = 0, n_par = 0, n_kd = 0, n_gcs = 0, n_kdm = 0;
      while (i < raw.size() && raw[i].start.seconds - hour_start < 3600) {
        const auto& r = raw[i];
        if (!std::isnan(r.ghi_wm2)) { ghi_sum += r.ghi_wm2; ++n_ghi; }
        if (!std::isnan(r.par_wm2)) { par_sum += r.par_wm2; ++n_par; }
        if (r.kd_satellite) { kd_sum += *r.kd_satellite; ++n_kd; }
        if (r.g_cs_wm2) { gcs_sum += *r.g_cs_wm2; ++n_gcs; }
        if (r.kd_measured) { kdm_sum += *r.kd_measured; ++n_kdm; }
        ++i;
      }
      agg.ghi_wm2 = n_ghi ? ghi_sum / n_ghi : kNaN;
      agg.par_wm2 = n_par ? par_sum / n_par : kNaN;
      if (n_kd) agg.kd_satellite = kd_sum / n_kd;
      if (n_gcs) agg.g_cs_wm2 = gcs_sum / n_gcs;
      if (n_kdm) agg.kd_measured = kdm_sum / n_kdm;
      records.push_back(std::move(agg));
    }
  }

  for (const auto& r : records) {
    const bool usable = !std::isnan(r.ghi_wm2) && !std::isnan(r.par_wm2);
    if (usable) {
      ++rep.n_records;
      rep.ghi_sum += r.ghi_wm2;
    } else {
      ++rep.n_gap_records;
    }
  }
  if (report) *report = rep;
  return records;
}

}  // namespace agrishade
