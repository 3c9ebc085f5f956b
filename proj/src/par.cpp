#include "agrishade/par.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "agrishade/errors.hpp"

namespace agrishade {

double yang2_diffuse_fraction(double k_t, double ast_h, double zenith_deg, double delta_ktc,
                              double k_de, double kd_satellite, const Yang2Coefficients& coef) {
  const double expo = coef.beta0 + coef.beta1 * k_t + coef.beta2 * ast_h +
                      coef.beta3 * zenith_deg + coef.beta4 * delta_ktc +
                      coef.beta6 * kd_satellite;
  const double k_d = coef.c + (1.0 - coef.c) / (1.0 + std::exp(expo)) + coef.beta5 * k_de;
  return std::clamp(k_d, 0.0, 1.0);
}

double spitters_par_fraction(double k_d, double elevation_deg) {
  const double one_minus_kd2 = 1.0 - k_d * k_d;
  const double cz = std::cos(deg2rad(90.0 - elevation_deg));
  const double cb = std::cos(deg2rad(elevation_deg));
  const double num = (1.0 + 0.3 * one_minus_kd2) * k_d;
  const double den = 1.0 + one_minus_kd2 * cz * cz * cb * cb * cb;
  return std::clamp(num / den, 0.0, 1.0);
}

double compose_cell_par(double par_beam, double par_diffuse, double f_b_cell, double f_d_cell) {
  return par_beam * (1.0 - f_b_cell) + par_diffuse * (1.0 - f_d_cell);
}

DecompositionResult decompose_record(const WeatherRecord& record, const RadiationScalars& scalars,
                                     double elevation_deg, const Yang2Coefficients& coef) {
  if (record.ghi_wm2 <= 0.0)
    throw std::invalid_argument("decompose_record: nonpositive-GHI (dark record)");
  if (scalars.e_ext <= 0.0)
    throw std::invalid_argument("decompose_record: extraterrestrial irradiance is zero");

  DecompositionResult out;
  out.k_t = record.ghi_wm2 / scalars.e_ext;
  out.delta_ktc = scalars.g_cs / scalars.e_ext - out.k_t;
  out.k_de = std::max(0.0, 1.0 - scalars.g_cs / record.ghi_wm2);

  if (record.kd_measured.has_value()) {
    out.k_d = std::clamp(*record.kd_measured, 0.0, 1.0);
    out.from_measured = true;
  } else if (record.kd_satellite.has_value()) {
    out.k_d = yang2_diffuse_fraction(out.k_t, scalars.ast_h, 90.0 - elevation_deg,
                                     out.delta_ktc, out.k_de, *record.kd_satellite, coef);
  } else {
    throw SimulationError(
        "missing-satellite-fraction: record has neither a measured diffuse fraction nor a "
        "satellite-derived diffuse fraction; the decomposition cannot run");
  }

  out.k_d_par = spitters_par_fraction(out.k_d, elevation_deg);
  out.par_diffuse_wm2 = record.par_wm2 * out.k_d_par;
  out.par_beam_wm2 = record.par_wm2 - out.par_diffuse_wm2;  // closure is exact
  return out;
}

std::string to_string(LhiMode mode) { return mode == LhiMode::kStd ? "std" : "variance"; }

LhiMode lhi_mode_from_string(const std::string& name) {
  if (name == "std") return LhiMode::kStd;
  if (name == "variance") return LhiMode::kVariance;
  throw ConfigError("unknown LHI mode: '" + name + "' (expected std | variance)");
}

double light_homogeneity_index(std::span<const double> cells, LhiMode mode) {
  const size_t n = cells.size();
  if (n < 2) throw std::invalid_argument("light_homogeneity_index: need at least 2 cells");
  double mean = 0.0;
  for (double v : cells) mean += v;
  mean /= static_cast<double>(n);
  if (mean <= 0.0) throw std::invalid_argument("light_homogeneity_index: degenerate-map (mean <= 0)");
  double ss = 0.0;
  for (double v : cells) ss += (v - mean) * (v - mean);
  const double variance = ss / static_cast<double>(n - 1);
  const double dispersion = mode == LhiMode::kStd ? std::sqrt(variance) : variance;
  return 100.0 * (1.0 - dispersion / mean);
}

double par_reduction(double shaded_sum, double unshaded_sum) {
  if (unshaded_sum <= 0.0)
    throw std::invalid_argument("par_reduction: unshaded total must be > 0");
  return 100.0 * (1.0 - shaded_sum / unshaded_sum);
}

}  // namespace agrishade
