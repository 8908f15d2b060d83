#pragma once

#include <cstdint>
#include <vector>

namespace uas {

/// Per-cell Poisson request rate and per-PAP exponential service rate.
struct TrafficModel {
  double arrival_rate = 0.0;  // lambda, per idle cell
  double service_rate = 1.0;  // kappa, per busy PAP

  double intensity() const { return arrival_rate / service_rate; }
  void validate() const;

  static TrafficModel from_intensity(double delta) { return {delta, 1.0}; }
};

/// n cells served by u PAPs. State j = number of busy PAPs, birth rate
/// (n - j) * lambda, death rate j * kappa.
struct FleetModel {
  int n_cells = 1;
  int n_paps = 1;
  TrafficModel traffic;

  void validate() const;
};

struct AvailabilityResult {
  std::vector<double> stationary;  // p_0 .. p_u
  double availability = 0.0;
  double blocking = 0.0;           // p_u
  double utilization = 0.0;
};

/// Product-form stationary law p_j proportional to C(n, j) delta^j,
/// accumulated through the ratio p_{j+1} / p_j = (n - j) delta / (j + 1).
std::vector<double> stationary_distribution(const FleetModel& model);

/// 1 - p_u. Zero for an empty fleet.
double availability(const FleetModel& model);

/// Mean number of busy PAPs over fleet size. Requires u >= 1.
double utilization(const FleetModel& model);

AvailabilityResult analyze(const FleetModel& model);

/// Smallest u in 1..n with availability >= threshold, or n if none qualifies.
int optimal_pap_count(int n_cells, const TrafficModel& traffic, double threshold);

struct OccupancyEstimate {
  std::vector<double> occupancy;  // time fraction spent in each state
  std::uint64_t transitions = 0;
};

/// Event-driven simulation of the birth-death chain over [0, horizon].
/// Draws come from std::mt19937_64 seeded with `seed`; exponential holding
/// times by inverse transform of a 53-bit uniform.
OccupancyEstimate simulate_ctmc(const FleetModel& model, double horizon, std::uint64_t seed);

}  // namespace uas
