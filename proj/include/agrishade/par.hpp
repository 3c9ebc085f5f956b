#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "agrishade/solar.hpp"

// Irradiance decomposition and PAR accounting: split measured GHI/PAR into
// beam and diffuse parts (satellite-augmented logistic separation model plus
// the canopy-radiation PAR relation), compose shaded per-cell PAR, and
// reduce annual maps to the homogeneity and reduction metrics.

namespace agrishade {

// 1 W/m2 of PAR as photon flux; used to convert umol m-2 s-1 inputs.
constexpr double kUmolPerWattPar = 4.57;

struct WeatherRecord {
  UtcTime start;                       // beginning of the hourly interval, UTC
  double ghi_wm2 = 0.0;
  double par_wm2 = 0.0;
  std::optional<double> kd_satellite;  // satellite-derived diffuse fraction
  std::optional<double> g_cs_wm2;      // clear-sky GHI column
  std::optional<double> kd_measured;   // measured diffuse fraction, overrides the model
  int source_line = 0;
};

struct Yang2Coefficients {
  double c = 0.0888;
  double beta0 = -2.6258;
  double beta1 = 7.2506;
  double beta2 = -0.0458;
  double beta3 = 0.0099;
  double beta4 = -0.0839;
  double beta5 = 0.5002;
  double beta6 = -2.1731;
};

/// Diffuse fraction from the logistic separation model:
///   k_d = C + (1 - C) / (1 + exp(b0 + b1 kt + b2 AST + b3 Z + b4 dktc
///                               + b6 kd_sat)) + b5 kde
/// with Z the solar zenith angle in degrees and AST in hours. Clamped to
/// [0, 1].
double yang2_diffuse_fraction(double k_t, double ast_h, double zenith_deg, double delta_ktc,
                              double k_de, double kd_satellite, const Yang2Coefficients& coef);

/// Broadband-to-PAR diffuse fraction conversion; beta is the solar elevation
/// in degrees. Clamped to [0, 1].
double spitters_par_fraction(double k_d, double elevation_deg);

/// Shaded PAR at one cell: beam (1 - f_b) + diffuse (1 - f_d).
double compose_cell_par(double par_beam, double par_diffuse, double f_b_cell, double f_d_cell);

struct DecompositionResult {
  double k_t = 0.0;
  double delta_ktc = 0.0;
  double k_de = 0.0;
  double k_d = 0.0;      // broadband diffuse fraction, clamped [0, 1]
  double k_d_par = 0.0;  // PAR diffuse fraction, clamped [0, 1]
  double par_beam_wm2 = 0.0;
  double par_diffuse_wm2 = 0.0;
  bool from_measured = false;  // measured diffuse fraction bypassed the model
};

/// Full per-record decomposition. Requires GHI > 0 and E_ext > 0. Throws
/// SimulationError when neither a measured diffuse fraction nor a satellite
/// fraction is available.
DecompositionResult decompose_record(const WeatherRecord& record, const RadiationScalars& scalars,
                                     double elevation_deg, const Yang2Coefficients& coef);

enum class LhiMode { kStd, kVariance };

std::string to_string(LhiMode mode);
LhiMode lhi_mode_from_string(const std::string& name);

/// Light homogeneity index, percent: 100 (1 - dispersion / mean) where the
/// dispersion is the sample (n-1) standard deviation, or the sample variance
/// in kVariance mode. Requires >= 2 cells and a positive mean.
double light_homogeneity_index(std::span<const double> cells, LhiMode mode = LhiMode::kStd);

/// Total PAR reduction, percent: 100 (1 - sum shaded / sum unshaded).
double par_reduction(double shaded_sum, double unshaded_sum);

struct Metrics {
  double lhi_pct = 0.0;
  double par_reduction_pct = 0.0;
  double mean_par_kwh_m2 = 0.0;      // shaded map mean
  double unshaded_par_kwh_m2 = 0.0;  // open-field annual PAR
};

struct PARMap {
  int nx = 0, ny = 0;
  double resolution_m = 0.0;
  Vec2 origin{0, 0};
  std::vector<double> shaded_kwh;  // per cell, row-major (x fastest)
  double unshaded_kwh = 0.0;       // spatially uniform open-field total
};

}  // namespace agrishade
