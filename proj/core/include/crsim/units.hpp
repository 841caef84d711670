#pragma once

#include <cmath>
#include <numbers>

namespace crsim {

/// Natural-log units per dB: X = kBeta * X_dB.
inline constexpr double kBeta = std::numbers::ln10 / 10.0;

/// The primary and secondary links are both provisioned so that SNR exceeds
/// this threshold with kCalibrationReliability over their coverage area.
inline constexpr double kCalibrationSnrDb = 5.0;
inline constexpr double kCalibrationReliability = 0.95;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace crsim
