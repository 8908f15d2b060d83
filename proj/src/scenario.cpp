#include "uas/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <fmt/format.h>

#include "uas/coverage.hpp"
#include "uas/random.hpp"

namespace uas {
namespace {

// Shortest round-trip representation, '.' decimal, no grouping.
std::string num(double v) { return fmt::format("{}", v); }

}  // namespace

void ScenarioConfig::validate() const {
  if (!(region_radius > 0.0) || !std::isfinite(region_radius)) {
    throw std::invalid_argument("region.radius_m must be positive");
  }
  if (n_gns < 1) throw std::invalid_argument("region.n_gns must be at least 1");
  if (trials < 1) throw std::invalid_argument("experiment.trials must be at least 1");
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("experiment.threshold must lie in (0, 1]");
  }
  environment.validate();
  radio.validate();
  traffic.validate();
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

std::vector<GroundNode> sample_gns(int n, double region_radius, std::mt19937_64& rng) {
  if (n < 1) throw std::invalid_argument("sample_gns needs at least one node");
  if (!(region_radius > 0.0)) throw std::invalid_argument("region radius must be positive");
  std::vector<GroundNode> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double rho = std::sqrt(uniform01(rng));
    double angle = 2.0 * std::numbers::pi * uniform01(rng);
    out.push_back({{region_radius * rho * std::cos(angle), region_radius * rho * std::sin(angle)},
                   static_cast<std::size_t>(i)});
  }
  return out;
}

std::vector<GroundNode> sample_gns(int n, double region_radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_gns(n, region_radius, rng);
}

void for_each_trial(int trials, const std::function<void(int)>& body) {
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max(trials, 1)));
  if (workers <= 1) {
    for (int t = 0; t < trials; ++t) body(t);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int t = next++; t < trials && !failed; t = next++) {
        try {
          body(t);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

CellCountSummary avg_cell_count(const ScenarioConfig& cfg) {
  return avg_cell_count(cfg, [&cfg](int trial) {
    auto rng = trial_rng(cfg.seed, static_cast<std::uint64_t>(trial));
    return sample_gns(cfg.n_gns, cfg.region_radius, rng);
  });
}

CellCountSummary avg_cell_count(const ScenarioConfig& cfg, const GnSampler& sampler) {
  cfg.validate();
  const CoverageSpec spec = coverage_spec(cfg.radio, cfg.environment);
  CellCountSummary summary;
  summary.per_trial.assign(static_cast<std::size_t>(cfg.trials), 0);
  std::vector<std::size_t> uncovered(static_cast<std::size_t>(cfg.trials), 0);
  for_each_trial(cfg.trials, [&](int t) {
    auto gns = sampler(t);
    CellLayout layout = pack(cfg.region_radius, spec, gns);
    summary.per_trial[static_cast<std::size_t>(t)] = layout.size();
    uncovered[static_cast<std::size_t>(t)] = uncovered_count(layout, gns);
  });
  double total = 0.0;
  for (std::size_t t = 0; t < summary.per_trial.size(); ++t) {
    total += static_cast<double>(summary.per_trial[t]);
    summary.uncovered += uncovered[t];
  }
  summary.mean = total / cfg.trials;
  summary.rounded = std::lround(summary.mean);
  return summary;
}

std::vector<CurveRow> availability_curve(int n_cells, const TrafficModel& traffic) {
  if (n_cells < 1) throw std::invalid_argument("n_cells must be at least 1");
  std::vector<CurveRow> rows;
  rows.reserve(static_cast<std::size_t>(n_cells));
  for (int u = 1; u <= n_cells; ++u) {
    AvailabilityResult res = analyze({n_cells, u, traffic});
    rows.push_back({u, static_cast<double>(u) / n_cells, res.availability, res.utilization});
  }
  return rows;
}

std::vector<Fig5Row> availability_table(int n_cells, std::span<const double> intensities) {
  std::vector<Fig5Row> rows;
  for (double delta : intensities) {
    for (const CurveRow& r : availability_curve(n_cells, TrafficModel::from_intensity(delta))) {
      rows.push_back({delta, r});
    }
  }
  return rows;
}

std::vector<CostRow> cost_vs_radius(const ScenarioConfig& cfg, std::span<const double> radii,
                                    std::span<const double> intensities,
                                    std::span<const double> thresholds) {
  cfg.validate();
  if (radii.empty() || intensities.empty() || thresholds.empty()) {
    throw std::invalid_argument("cost sweep lists must be non-empty");
  }
  const CoverageSpec spec = coverage_spec(cfg.radio, cfg.environment);

  // cells[r][t]: cell count of trial t at radius index r.
  std::vector<std::vector<std::size_t>> cells(radii.size());
  for (std::size_t r = 0; r < radii.size(); ++r) {
    if (!(radii[r] > 0.0)) throw std::invalid_argument("sweep radii must be positive");
    cells[r].assign(static_cast<std::size_t>(cfg.trials), 0);
    for_each_trial(cfg.trials, [&](int t) {
      auto rng = trial_rng(cfg.seed, static_cast<std::uint64_t>(t));
      auto gns = sample_gns(cfg.n_gns, radii[r], rng);
      cells[r][static_cast<std::size_t>(t)] = pack(radii[r], spec, gns).size();
    });
  }

  std::map<std::tuple<std::size_t, double, double>, int> u_opt_cache;
  auto u_opt = [&](std::size_t n, double delta, double rho) {
    auto key = std::make_tuple(n, delta, rho);
    auto it = u_opt_cache.find(key);
    if (it != u_opt_cache.end()) return it->second;
    int u = optimal_pap_count(static_cast<int>(n), TrafficModel::from_intensity(delta), rho);
    u_opt_cache.emplace(key, u);
    return u;
  };

  std::vector<CostRow> rows;
  for (double delta : intensities) {
    for (double rho : thresholds) {
      for (std::size_t r = 0; r < radii.size(); ++r) {
        double total = 0.0;
        for (std::size_t n : cells[r]) {
          // n >= 1 whenever at least one GN exists.
          total += static_cast<double>(u_opt(n, delta, rho)) / static_cast<double>(n);
        }
        rows.push_back({delta, rho, radii[r], total / cfg.trials});
      }
    }
  }
  return rows;
}

std::vector<CostRow> cost_vs_radius(const ScenarioConfig& cfg, std::span<const double> radii,
                                    std::span<const double> intensities) {
  const double rho[] = {cfg.threshold};
  return cost_vs_radius(cfg, radii, intensities, rho);
}

std::vector<CellCountRow> cell_count_grid(const ScenarioConfig& base,
                                          std::span<const NamedEnvironment> environments,
                                          std::span<const double> radii,
                                          std::span<const int> gn_counts) {
  std::vector<CellCountRow> rows;
  for (const auto& env : environments) {
    for (double radius : radii) {
      for (int n : gn_counts) {
        ScenarioConfig cfg = base;
        cfg.environment_name = env.name;
        cfg.environment = env.profile;
        cfg.region_radius = radius;
        cfg.n_gns = n;
        rows.push_back({env.name, radius, n, avg_cell_count(cfg).mean});
      }
    }
  }
  return rows;
}

std::vector<std::string> check_cell_count_trends(std::span<const CellCountRow> rows) {
  std::vector<std::string> issues;
  for (const auto& a : rows) {
    for (const auto& b : rows) {
      bool same_env = a.environment == b.environment;
      if (same_env && a.n_gns == b.n_gns && a.region_radius < b.region_radius &&
          a.avg_cells > b.avg_cells) {
        issues.push_back(fmt::format("{} N={}: avg cells drops from {} at R={} to {} at R={}",
                                     a.environment, a.n_gns, a.avg_cells, a.region_radius,
                                     b.avg_cells, b.region_radius));
      }
      if (same_env && a.region_radius == b.region_radius && a.n_gns < b.n_gns &&
          a.avg_cells > b.avg_cells) {
        issues.push_back(fmt::format("{} R={}: avg cells drops from {} at N={} to {} at N={}",
                                     a.environment, a.region_radius, a.avg_cells, a.n_gns,
                                     b.avg_cells, b.n_gns));
      }
      if (a.environment == "suburban" && b.environment == "urban" &&
          a.region_radius == b.region_radius && a.n_gns == b.n_gns &&
          b.avg_cells < a.avg_cells) {
        issues.push_back(fmt::format("R={} N={}: urban {} below suburban {}", a.region_radius,
                                     a.n_gns, b.avg_cells, a.avg_cells));
      }
    }
  }
  return issues;
}

void write_layout_csv(std::ostream& out, const CellLayout& layout) {
  out << "x,y,R_p,h_p\n";
  for (const Point& c : layout.centers) {
    out << num(c.x) << ',' << num(c.y) << ',' << num(layout.cell_radius) << ','
        << num(layout.hover_height) << '\n';
  }
}

void write_fig4_csv(std::ostream& out, std::span<const CellCountRow> rows) {
  out << "env,R,N,avg_cells\n";
  for (const auto& r : rows) {
    out << r.environment << ',' << num(r.region_radius) << ',' << r.n_gns << ','
        << num(r.avg_cells) << '\n';
  }
}

void write_fig5_csv(std::ostream& out, std::span<const Fig5Row> rows) {
  out << "delta,u,u_over_n,A,eta\n";
  for (const auto& r : rows) {
    out << num(r.delta) << ',' << r.row.paps << ',' << num(r.row.normalized_cost) << ','
        << num(r.row.availability) << ',' << num(r.row.utilization) << '\n';
  }
}

void write_fig6_csv(std::ostream& out, std::span<const CostRow> rows) {
  out << "delta,rho,R,avg_normalized_cost\n";
  for (const auto& r : rows) {
    out << num(r.delta) << ',' << num(r.threshold) << ',' << num(r.region_radius) << ','
        << num(r.avg_normalized_cost) << '\n';
  }
}

}  // namespace uas
