#include "uas/channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace uas {
namespace {

constexpr double kAngleSlackDeg = 1e-9;

void require_positive(double value, const char* field) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string(field) + " must be positive and finite");
  }
}

void check_half_beamwidth(Angle theta) {
  if (!(theta.rad() > 0.0) || !(theta.rad() < std::numbers::pi / 2)) {
    throw std::invalid_argument("half_beamwidth must lie in (0, 90) degrees");
  }
}

double checked_elevation_deg(Angle elevation) {
  double deg = elevation.deg();
  if (!(deg >= -kAngleSlackDeg && deg <= 90.0 + kAngleSlackDeg)) {
    throw std::invalid_argument("elevation must lie in [0, 90] degrees, got " +
                                std::to_string(deg));
  }
  return std::clamp(deg, 0.0, 90.0);
}

}  // namespace

void EnvironmentProfile::validate() const {
  require_positive(a, "environment.a");
  require_positive(b, "environment.b");
  require_positive(eta_los, "environment.eta_los");
  require_positive(eta_nlos, "environment.eta_nlos");
  if (eta_los > eta_nlos) {
    throw std::invalid_argument("environment.eta_los must not exceed environment.eta_nlos");
  }
  check_half_beamwidth(half_beamwidth);
}

EnvironmentProfile EnvironmentProfile::suburban() {
  return {4.83, 0.43, 1.01, 11.22, Angle::degrees(70.0)};
}

EnvironmentProfile EnvironmentProfile::urban() {
  return {9.6, 0.16, 1.12, 10.0, Angle::degrees(52.0)};
}

std::optional<EnvironmentProfile> environment_preset(std::string_view name) {
  if (name == "suburban") return EnvironmentProfile::suburban();
  if (name == "urban") return EnvironmentProfile::urban();
  return std::nullopt;
}

void RadioConfig::validate() const {
  require_positive(g0, "radio.g0");
  require_positive(p_downlink, "radio.p_downlink_w");
  require_positive(p_max_gn, "radio.p_max_gn_w");
  require_positive(noise_power, "radio.noise_power_w");
  require_positive(gamma_dl, "radio.gamma_dl");
  require_positive(gamma_ul, "radio.gamma_ul");
  require_positive(antenna_constant, "radio.antenna_constant");
}

RadioConfig RadioConfig::reference() {
  RadioConfig cfg;
  cfg.g0 = 1.42e-4;
  cfg.p_downlink = 1e-3;
  cfg.p_max_gn = 1.0;
  cfg.noise_power = 1.25e-14;
  cfg.gamma_dl = 100.0;
  cfg.gamma_ul = 100.0;
  return cfg;
}

double boresight_gain(Angle half_beamwidth, double antenna_constant) {
  check_half_beamwidth(half_beamwidth);
  double theta = half_beamwidth.rad();
  return antenna_constant / (theta * theta);
}

double antenna_gain(Angle half_beamwidth, Angle azimuth_offset, Angle elevation_offset,
                    double antenna_constant) {
  double peak = boresight_gain(half_beamwidth, antenna_constant);
  double theta = half_beamwidth.rad();
  bool inside = std::abs(azimuth_offset.rad()) <= theta &&
                std::abs(elevation_offset.rad()) <= theta;
  return inside ? peak : 0.0;
}

double los_probability(Angle elevation, const EnvironmentProfile& env) {
  double phi = checked_elevation_deg(elevation);
  return 1.0 / (1.0 + env.a * std::exp(-env.b * (phi - env.a)));
}

double mean_additional_loss(Angle elevation, const EnvironmentProfile& env) {
  double p_los = los_probability(elevation, env);
  double los2 = env.eta_los * env.eta_los;
  double nlos2 = env.eta_nlos * env.eta_nlos;
  return nlos2 + p_los * (los2 - nlos2);
}

Angle elevation_angle(double horizontal_distance, double altitude) {
  if (horizontal_distance == 0.0) return Angle::degrees(90.0);
  return Angle::radians(std::atan(altitude / horizontal_distance));
}

double mean_path_loss(double horizontal_distance, double altitude,
                      const EnvironmentProfile& env, const RadioConfig& cfg) {
  if (!(altitude > 0.0)) throw std::invalid_argument("altitude must be positive");
  if (!(horizontal_distance >= 0.0)) {
    throw std::invalid_argument("horizontal_distance must be non-negative");
  }
  double r = horizontal_distance;
  double fspl = (r * r + altitude * altitude) / cfg.g0;
  return fspl * mean_additional_loss(elevation_angle(r, altitude), env);
}

}  // namespace uas
