#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "uas/cell_packing.hpp"
#include "uas/channel_model.hpp"
#include "uas/reliability.hpp"

namespace uas {

inline constexpr int kDefaultTrials = 600;

struct ScenarioConfig {
  double region_radius = 600.0;
  int n_gns = 15;
  std::string environment_name = "urban";
  EnvironmentProfile environment = EnvironmentProfile::urban();
  RadioConfig radio = RadioConfig::reference();
  TrafficModel traffic;
  double threshold = 0.99;
  int trials = kDefaultTrials;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Independent generator for one Monte Carlo trial, derived from
/// std::seed_seq{seed_lo, seed_hi, trial}.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

/// n GNs uniform on the disk: radius R * sqrt(U), angle 2 * pi * V.
/// Points are drawn on the unit disk and scaled, so the same stream at two
/// radii gives homothetic placements, and a larger n extends a smaller one.
std::vector<GroundNode> sample_gns(int n, double region_radius, std::mt19937_64& rng);
std::vector<GroundNode> sample_gns(int n, double region_radius, std::uint64_t seed);

/// Placement used by trial `trial` of a scenario.
using GnSampler = std::function<std::vector<GroundNode>(int trial)>;

struct CellCountSummary {
  double mean = 0.0;
  long rounded = 0;
  std::vector<std::size_t> per_trial;
  std::size_t uncovered = 0;  // GNs left uncovered, summed over trials
};

CellCountSummary avg_cell_count(const ScenarioConfig& cfg);
CellCountSummary avg_cell_count(const ScenarioConfig& cfg, const GnSampler& sampler);

struct CurveRow {
  int paps = 0;
  double normalized_cost = 0.0;
  double availability = 0.0;
  double utilization = 0.0;
};

/// One row per fleet size u = 1..n.
std::vector<CurveRow> availability_curve(int n_cells, const TrafficModel& traffic);

struct CostRow {
  double delta = 0.0;
  double threshold = 0.0;
  double region_radius = 0.0;
  double avg_normalized_cost = 0.0;
};

/// Mean over trials of u_opt / n for each (delta, threshold, radius).
/// Service rate is held at 1 so the arrival rate equals delta.
std::vector<CostRow> cost_vs_radius(const ScenarioConfig& cfg, std::span<const double> radii,
                                    std::span<const double> intensities,
                                    std::span<const double> thresholds);
std::vector<CostRow> cost_vs_radius(const ScenarioConfig& cfg, std::span<const double> radii,
                                    std::span<const double> intensities);

struct CellCountRow {
  std::string environment;
  double region_radius = 0.0;
  int n_gns = 0;
  double avg_cells = 0.0;
};

struct NamedEnvironment {
  std::string name;
  EnvironmentProfile profile;
};

/// Average cell count over an (environment, R, N) grid. Every grid point
/// reuses the same per-trial streams.
std::vector<CellCountRow> cell_count_grid(const ScenarioConfig& base,
                                          std::span<const NamedEnvironment> environments,
                                          std::span<const double> radii,
                                          std::span<const int> gn_counts);

struct Fig5Row {
  double delta = 0.0;
  CurveRow row;
};

std::vector<Fig5Row> availability_table(int n_cells, std::span<const double> intensities);

/// Human-readable descriptions of trend violations in a cell-count grid
/// (decreasing in R or N, urban below suburban). Empty when all trends hold.
std::vector<std::string> check_cell_count_trends(std::span<const CellCountRow> rows);

/// Rows (x, y, R_p, h_p), one per retained cell.
void write_layout_csv(std::ostream& out, const CellLayout& layout);
void write_fig4_csv(std::ostream& out, std::span<const CellCountRow> rows);
void write_fig5_csv(std::ostream& out, std::span<const Fig5Row> rows);
void write_fig6_csv(std::ostream& out, std::span<const CostRow> rows);

/// Runs `body(trial)` for trial = 0..trials-1 on a small worker pool. Each
/// call must only touch its own output slot.
void for_each_trial(int trials, const std::function<void(int)>& body);

}  // namespace uas
