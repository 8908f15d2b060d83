#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "uas/coverage.hpp"

namespace uas {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point a, Point b);

struct GroundNode {
  Point pos;
  std::size_t id = 0;
};

/// Relative slack applied to every "GN inside circle" test.
inline constexpr double kCoverageRelTol = 1e-9;
/// Centers closer than this (m, per axis) are the same cell.
inline constexpr double kDedupTol = 1e-6;
/// Above this many GN-bearing candidates the pruning stays greedy.
inline constexpr std::size_t kExactPruneLimit = 20;

bool covers(Point center, double radius, Point p);

/// Result of the hierarchical packing.
struct CellLayout {
  std::vector<Point> centers;
  double cell_radius = 0.0;    // PAP coverage radius R_p
  double circle_radius = 0.0;  // radius of the packed circles, R / 2^levels
  double hover_height = 0.0;
  int levels = 0;
  double region_radius = 0.0;
  std::size_t candidate_count = 0;  // distinct GN-reachable candidates before pruning

  std::size_t size() const { return centers.size(); }
};

/// Six hexagon vertices at distance sqrt(3) * child_radius (angles 2*pi*j/6),
/// followed by the parent itself.
std::array<Point, 7> child_centers(Point parent, double child_radius);

/// ceil(log2(R / R_p)) for R > R_p, otherwise 0.
int levels_required(double region_radius, double cell_radius);

/// Number of halvings of R until the circle radius drops to R_p, counted by
/// iterating the packing loop rather than by the closed form.
int packing_depth(double region_radius, double cell_radius);

struct CandidateTree {
  std::vector<Point> centers;  // 7^levels entries, duplicates kept
  double circle_radius = 0.0;
  int levels = 0;
};

/// Full level-by-level expansion with no GN awareness.
CandidateTree expand_levels(double region_radius, double cell_radius);

/// Drops centers within kDedupTol of an earlier one. Keeps first-seen order.
std::vector<Point> dedupe_centers(std::span<const Point> centers, double tol = kDedupTol);

/// Keeps a subset of `candidates` that still covers every GN in which every
/// retained circle owns at least one GN no other retained circle covers.
std::vector<Point> prune(std::span<const Point> candidates, double circle_radius,
                         std::span<const GroundNode> gns);

/// Hierarchical 7-circle covering of the disk of radius `region_radius`
/// centered at the origin, pruned against the GN set.
/// Throws std::invalid_argument if a GN lies outside the region.
CellLayout pack(double region_radius, const CoverageSpec& spec,
                std::span<const GroundNode> gns);

/// Number of GNs not within circle_radius of any layout center.
std::size_t uncovered_count(const CellLayout& layout, std::span<const GroundNode> gns);

}  // namespace uas
