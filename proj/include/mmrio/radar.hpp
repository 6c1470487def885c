// FMCW radar measurement model and sensor configuration.
//
// Range is encoded in the intermediate (beat) frequency of the chirp mixer
// output, d = f_if * c / (2 S); bearing comes from the inter-antenna phase
// difference, theta = asin(lambda * omega / (2 pi d_ant)).
#pragma once

#include <cmath>
#include <vector>

#include "mmrio/core.hpp"

namespace mmrio {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// Sensor characteristics. Defaults mirror a single-chip 76 GHz automotive
/// radar: 4 GHz bandwidth swept at 70 MHz/us, 4.3 cm range bins, 22.55 m
/// unambiguous range, 120 deg azimuth FoV, 63 points per frame at 20 fps.
struct RadarConfig {
  double start_frequency = 76e9;           // f_c, Hz
  double bandwidth = 4e9;                  // B, Hz
  double chirp_duration = 4e9 / 70e12;     // T_c, s
  double slope = 70e12;                    // S = B / T_c, Hz/s
  double antenna_spacing = 0.5 * kSpeedOfLight / 76e9;  // d_ant = lambda/2, m
  double wavelength = kSpeedOfLight / 76e9;             // lambda, m
  double range_resolution = 0.043;         // m
  double max_range = 22.55;                // m
  double max_radial_velocity = 2.28;       // m/s
  double fov_azimuth = 120.0 * kPi / 180.0;  // rad, full cone
  int max_points_per_frame = 63;
  double frame_rate = 20.0;  // fps

  void validate() const {
    if (std::abs(slope * chirp_duration - bandwidth) > 1e-6 * bandwidth) {
      throw ConfigError("RadarConfig: S * T_c must equal B");
    }
    if (range_resolution <= 0.0) throw ConfigError("RadarConfig: range_resolution <= 0");
    if (max_points_per_frame < 1) throw ConfigError("RadarConfig: max_points_per_frame < 1");
  }
};

/// One detected reflector in the sensor frame.
struct RadarPoint {
  Vec3 position = Vec3::Zero();  // m, sensor frame (+x forward)
  double intensity = 0.0;        // linear power units
  double radial_velocity = 0.0;  // m/s, closing range is negative
};

struct RadarScan {
  double t = 0.0;  // s
  std::vector<RadarPoint> points;
};

/// Range from the intermediate frequency: d = f_if * c / (2 S).
/// Negative f_if is rejected; callers discard ranges above max_range.
inline double range_from_if(double f_if, const RadarConfig& cfg) {
  if (f_if < 0.0 || !std::isfinite(f_if)) {
    throw ConfigError("range_from_if: f_if must be finite and >= 0");
  }
  return f_if * kSpeedOfLight / (2.0 * cfg.slope);
}

/// Angle of arrival from the inter-antenna phase difference.
/// Throws NumericError when |lambda * omega / (2 pi d_ant)| > 1 (aliased).
inline double aoa_from_phase(double omega, const RadarConfig& cfg) {
  const double arg = cfg.wavelength * omega / (2.0 * kPi * cfg.antenna_spacing);
  if (std::abs(arg) > 1.0) {
    throw NumericError("aoa_from_phase: aliased phase difference, |arg| = " +
                       std::to_string(std::abs(arg)));
  }
  return std::asin(arg);
}

}  // namespace mmrio
