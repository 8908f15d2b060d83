#include "uas/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uas {
namespace {

// G_p * g0 * sin^2(theta) / (sigma^2 * eta_m(theta)); the radius is
// sqrt(link_factor * power / gamma).
double link_factor(const RadioConfig& cfg, const EnvironmentProfile& env) {
  cfg.validate();
  env.validate();
  Angle theta = env.half_beamwidth;
  double gain = boresight_gain(theta, cfg.antenna_constant);
  double s = std::sin(theta.rad());
  return gain * cfg.g0 * s * s / (cfg.noise_power * mean_additional_loss(theta, env));
}

}  // namespace

double downlink_radius(const RadioConfig& cfg, const EnvironmentProfile& env) {
  return std::sqrt(link_factor(cfg, env) * cfg.p_downlink / cfg.gamma_dl);
}

double uplink_radius(const RadioConfig& cfg, const EnvironmentProfile& env) {
  return std::sqrt(link_factor(cfg, env) * cfg.p_max_gn / cfg.gamma_ul);
}

double downlink_threshold_for_radius(double radius, const RadioConfig& cfg,
                                     const EnvironmentProfile& env) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  return link_factor(cfg, env) * cfg.p_downlink / (radius * radius);
}

CoverageSpec coverage_spec(const RadioConfig& cfg, const EnvironmentProfile& env) {
  CoverageSpec spec;
  spec.radius_dl = downlink_radius(cfg, env);
  spec.radius_ul = uplink_radius(cfg, env);
  spec.radius = std::min(spec.radius_dl, spec.radius_ul);
  spec.hover_height = spec.radius * std::tan(env.half_beamwidth.rad());
  spec.target_arrival_power =
      cfg.gamma_ul * cfg.noise_power / boresight_gain(env.half_beamwidth, cfg.antenna_constant);
  return spec;
}

double gn_transmit_power(double horizontal_distance, const CoverageSpec& spec,
                         const EnvironmentProfile& env, const RadioConfig& cfg) {
  if (!(horizontal_distance >= 0.0)) {
    throw std::invalid_argument("horizontal_distance must be non-negative");
  }
  if (horizontal_distance > spec.radius * (1.0 + 1e-12)) {
    throw std::out_of_range("GN lies outside the coverage radius");
  }
  return spec.target_arrival_power *
         mean_path_loss(horizontal_distance, spec.hover_height, env, cfg);
}

}  // namespace uas
