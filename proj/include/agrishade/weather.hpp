#pragma once

#include <string>
#include <vector>

#include "agrishade/par.hpp"

// Weather time-series ingestion: CSV with a header row, a configurable
// column map, strict timestamp validation and unit normalization.
//
// Timestamps mark the START of each interval and are UTC. Half-hourly files
// are aggregated to hourly means on ingest. Missing values are empty fields,
// NaN, or sentinel values <= -990 (station products commonly use -9999);
// other negative irradiance values are rejected as unit violations.

namespace agrishade {

enum class ParUnit { kWattsPerM2, kMicromolPerM2S };
enum class Cadence { kHourly, kHalfHourly };

ParUnit par_unit_from_string(const std::string& name);
Cadence cadence_from_string(const std::string& name);

struct IngestSpec {
  std::string path;
  std::string timestamp_column = "timestamp";
  std::string ghi_column = "ghi";
  std::string par_column = "par";
  std::string kd_sat_column;       // optional; empty = absent
  std::string gcs_column;          // optional
  std::string kd_measured_column;  // optional
  std::string timestamp_format = "iso";  // iso | ymdhm
  ParUnit par_unit = ParUnit::kWattsPerM2;
  Cadence cadence = Cadence::kHourly;
};

struct GapReport {
  int n_source_rows = 0;
  int n_records = 0;     // records with usable GHI and PAR
  int n_gap_records = 0; // hourly slots missing or with missing GHI/PAR
  double ghi_sum = 0.0;  // over usable records, W/m2 summed
};

/// Reads and validates the weather file. Records are returned for every
/// hourly slot present in the file (gaps are represented by NaN fields and
/// counted in the report). Throws IngestError with the offending line number
/// for malformed rows, negative irradiance or cadence violations.
std::vector<WeatherRecord> ingest_weather(const IngestSpec& spec, GapReport* report = nullptr);

}  // namespace agrishade
