#pragma once

#include <numbers>
#include <optional>
#include <string_view>

namespace uas {

/// Peak-gain constant of the sectored antenna pattern (gain = G_o / theta^2).
inline constexpr double kDefaultAntennaConstant = 2.2846;

/// Plane angle with explicit unit conversions. Stored in radians.
class Angle {
 public:
  constexpr Angle() = default;

  static constexpr Angle radians(double value) { return Angle(value); }
  static constexpr Angle degrees(double value) {
    return Angle(value * std::numbers::pi / 180.0);
  }

  constexpr double rad() const { return radians_; }
  constexpr double deg() const { return radians_ * 180.0 / std::numbers::pi; }

  friend constexpr bool operator==(Angle, Angle) = default;

 private:
  explicit constexpr Angle(double r) : radians_(r) {}
  double radians_ = 0.0;
};

/// Propagation environment: LoS fit (a, b), linear excess-loss means for
/// LoS/N-LoS links and the antenna half-beamwidth.
struct EnvironmentProfile {
  double a = 0.0;
  double b = 0.0;
  double eta_los = 0.0;
  double eta_nlos = 0.0;
  Angle half_beamwidth;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  static EnvironmentProfile suburban();
  static EnvironmentProfile urban();
};

/// "suburban" or "urban"; empty for any other name.
std::optional<EnvironmentProfile> environment_preset(std::string_view name);

/// Link budget. All quantities linear (Watts, ratios).
struct RadioConfig {
  double g0 = 0.0;           // channel gain at 1 m
  double p_downlink = 0.0;   // PAP power per GN
  double p_max_gn = 0.0;     // GN transmit power cap
  double noise_power = 0.0;
  double gamma_dl = 0.0;     // downlink SNR threshold
  double gamma_ul = 0.0;     // uplink SNR threshold
  double antenna_constant = kDefaultAntennaConstant;

  void validate() const;

  /// g0 = 1.42e-4, P = 1 mW, P_max = 1 W, sigma^2 = 1.25e-14 W, both thresholds 100.
  static RadioConfig reference();
};

/// Peak gain inside the main lobe.
double boresight_gain(Angle half_beamwidth,
                      double antenna_constant = kDefaultAntennaConstant);

/// Piecewise sectored pattern: constant inside [-theta, theta] on both axes,
/// zero outside.
double antenna_gain(Angle half_beamwidth, Angle azimuth_offset, Angle elevation_offset,
                    double antenna_constant = kDefaultAntennaConstant);

/// Sigmoid LoS probability; the fit is expressed in degrees of elevation.
double los_probability(Angle elevation, const EnvironmentProfile& env);

/// Elevation-weighted excess loss, in [eta_los^2, eta_nlos^2].
double mean_additional_loss(Angle elevation, const EnvironmentProfile& env);

/// Elevation seen by a GN at the given horizontal offset. 90 degrees at r = 0.
Angle elevation_angle(double horizontal_distance, double altitude);

/// Free-space loss (r^2 + h^2)/g0 scaled by the mean excess loss.
double mean_path_loss(double horizontal_distance, double altitude,
                      const EnvironmentProfile& env, const RadioConfig& cfg);

}  // namespace uas
