#include "uas/reliability.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "uas/random.hpp"

namespace uas {

void TrafficModel::validate() const {
  if (!(arrival_rate >= 0.0) || !std::isfinite(arrival_rate)) {
    throw std::invalid_argument("traffic.arrival_rate must be non-negative and finite");
  }
  if (!(service_rate > 0.0) || !std::isfinite(service_rate)) {
    throw std::invalid_argument("traffic.service_rate must be positive and finite");
  }
}

void FleetModel::validate() const {
  traffic.validate();
  if (n_cells < 1) throw std::invalid_argument("n_cells must be at least 1");
  if (n_paps < 0) throw std::invalid_argument("n_paps must be non-negative");
  if (n_paps > n_cells) throw std::invalid_argument("n_paps must not exceed n_cells");
}

std::vector<double> stationary_distribution(const FleetModel& model) {
  model.validate();
  const int u = model.n_paps;
  const double delta = model.traffic.intensity();
  std::vector<double> p(static_cast<std::size_t>(u) + 1, 0.0);
  p[0] = 1.0;
  double total = 1.0;
  for (int j = 0; j < u; ++j) {
    p[j + 1] = p[j] * (model.n_cells - j) * delta / (j + 1);
    total += p[j + 1];
  }
  for (double& v : p) v /= total;
  return p;
}

double availability(const FleetModel& model) {
  if (model.n_paps == 0) {
    model.validate();
    return 0.0;
  }
  return 1.0 - stationary_distribution(model).back();
}

double utilization(const FleetModel& model) {
  if (model.n_paps < 1) throw std::invalid_argument("utilization requires at least one PAP");
  auto p = stationary_distribution(model);
  double busy = 0.0;
  for (std::size_t j = 1; j < p.size(); ++j) busy += static_cast<double>(j) * p[j];
  return busy / model.n_paps;
}

AvailabilityResult analyze(const FleetModel& model) {
  AvailabilityResult res;
  res.stationary = stationary_distribution(model);
  res.blocking = model.n_paps == 0 ? 1.0 : res.stationary.back();
  res.availability = 1.0 - res.blocking;
  if (model.n_paps > 0) {
    double busy = 0.0;
    for (std::size_t j = 1; j < res.stationary.size(); ++j) {
      busy += static_cast<double>(j) * res.stationary[j];
    }
    res.utilization = busy / model.n_paps;
  }
  return res;
}

int optimal_pap_count(int n_cells, const TrafficModel& traffic, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("availability threshold must lie in (0, 1]");
  }
  if (n_cells < 1) throw std::invalid_argument("n_cells must be at least 1");
  traffic.validate();
  if (traffic.intensity() == 0.0) return 1;
  // p_u > 0 for any positive intensity, however small it rounds
  if (threshold == 1.0) return n_cells;
  const double max_blocking = 1.0 - threshold;
  for (int u = 1; u <= n_cells; ++u) {
    if (stationary_distribution({n_cells, u, traffic}).back() <= max_blocking) return u;
  }
  return n_cells;
}

OccupancyEstimate simulate_ctmc(const FleetModel& model, double horizon, std::uint64_t seed) {
  model.validate();
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  const int u = model.n_paps;
  const double lambda = model.traffic.arrival_rate;
  const double kappa = model.traffic.service_rate;

  std::mt19937_64 rng(seed);
  std::vector<double> time_in(static_cast<std::size_t>(u) + 1, 0.0);
  OccupancyEstimate est;
  int state = 0;
  double now = 0.0;
  while (now < horizon) {
    double birth = state < u ? (model.n_cells - state) * lambda : 0.0;
    double death = state * kappa;
    double total = birth + death;
    if (total <= 0.0) {
      time_in[state] += horizon - now;
      break;
    }
    double hold = exponential(rng, total);
    if (now + hold >= horizon) {
      time_in[state] += horizon - now;
      break;
    }
    time_in[state] += hold;
    now += hold;
    state += uniform01(rng) * total < birth ? 1 : -1;
    ++est.transitions;
  }
  est.occupancy.resize(time_in.size());
  for (std::size_t j = 0; j < time_in.size(); ++j) est.occupancy[j] = time_in[j] / horizon;
  return est;
}

}  // namespace uas
