#pragma once

#include "uas/channel_model.hpp"

namespace uas {

/// Coverage footprint of one PAP.
struct CoverageSpec {
  double radius_dl = 0.0;             // m
  double radius_ul = 0.0;             // m
  double radius = 0.0;                // m, min of the two
  double hover_height = 0.0;          // m, radius * tan(theta)
  double target_arrival_power = 0.0;  // W, uplink power-control target at the PAP
};

/// Largest ground radius at which the edge GN still meets the downlink SNR target.
double downlink_radius(const RadioConfig& cfg, const EnvironmentProfile& env);

/// Largest ground radius at which an edge GN reaches the uplink target within P_max.
double uplink_radius(const RadioConfig& cfg, const EnvironmentProfile& env);

/// Downlink SNR threshold that would place the downlink edge exactly at `radius`.
/// Inverse of downlink_radius with respect to gamma_dl.
double downlink_threshold_for_radius(double radius, const RadioConfig& cfg,
                                     const EnvironmentProfile& env);

CoverageSpec coverage_spec(const RadioConfig& cfg, const EnvironmentProfile& env);

/// Uplink power-control transmit power of a GN at `horizontal_distance` from
/// the cell center, with the PAP at spec.hover_height. Throws
/// std::out_of_range if the GN is outside the cell.
double gn_transmit_power(double horizontal_distance, const CoverageSpec& spec,
                         const EnvironmentProfile& env, const RadioConfig& cfg);

}  // namespace uas
