#include "uas/cell_packing.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace uas {
namespace {

const double kSqrt3 = std::sqrt(3.0);

void check_radii(double region_radius, double cell_radius) {
  if (!(region_radius > 0.0) || !std::isfinite(region_radius)) {
    throw std::invalid_argument("region radius must be positive and finite");
  }
  if (!(cell_radius > 0.0) || !std::isfinite(cell_radius)) {
    throw std::invalid_argument("cell radius must be positive and finite");
  }
}

// Exact minimum cover over at most kExactPruneLimit candidates. Each GN is
// represented by the bitmask of candidates covering it.
class MinCoverSearch {
 public:
  explicit MinCoverSearch(std::vector<std::uint32_t> gn_masks) : masks_(std::move(gn_masks)) {
    std::sort(masks_.begin(), masks_.end());
    masks_.erase(std::unique(masks_.begin(), masks_.end()), masks_.end());
  }

  // Returns a cover strictly smaller than `upper_bound` sets, if one exists.
  std::optional<std::uint32_t> run(int upper_bound) {
    best_size_ = upper_bound;
    found_ = false;
    search(0u, 0);
    if (!found_) return std::nullopt;
    return best_;
  }

 private:
  void search(std::uint32_t chosen, int size) {
    if (size >= best_size_) return;
    const std::uint32_t* branch = nullptr;
    int fewest = 33;
    for (const auto& m : masks_) {
      if ((m & chosen) != 0u) continue;
      int options = std::popcount(m);
      if (options < fewest) {
        fewest = options;
        branch = &m;
      }
    }
    if (branch == nullptr) {
      best_ = chosen;
      best_size_ = size;
      found_ = true;
      return;
    }
    if (size + 1 >= best_size_) return;
    std::uint32_t options = *branch;
    while (options != 0u) {
      std::uint32_t bit = options & (~options + 1u);
      search(chosen | bit, size + 1);
      options &= options - 1u;
    }
  }

  std::vector<std::uint32_t> masks_;
  std::uint32_t best_ = 0;
  int best_size_ = 0;
  bool found_ = false;
};

}  // namespace

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

bool covers(Point center, double radius, Point p) {
  return distance(center, p) <= radius * (1.0 + kCoverageRelTol);
}

std::array<Point, 7> child_centers(Point parent, double child_radius) {
  std::array<Point, 7> out;
  double offset = kSqrt3 * child_radius;
  for (int j = 0; j < 6; ++j) {
    double angle = 2.0 * std::numbers::pi * j / 6.0;
    out[j] = {parent.x + offset * std::cos(angle), parent.y + offset * std::sin(angle)};
  }
  out[6] = parent;
  return out;
}

int levels_required(double region_radius, double cell_radius) {
  check_radii(region_radius, cell_radius);
  if (region_radius <= cell_radius) return 0;
  return static_cast<int>(std::ceil(std::log2(region_radius / cell_radius)));
}

int packing_depth(double region_radius, double cell_radius) {
  check_radii(region_radius, cell_radius);
  if (region_radius <= cell_radius) return 0;
  int level = 0;
  double r = region_radius;
  do {
    ++level;
    r /= 2.0;
  } while (r > cell_radius);
  return level;
}

CandidateTree expand_levels(double region_radius, double cell_radius) {
  CandidateTree tree;
  tree.levels = packing_depth(region_radius, cell_radius);
  tree.centers = {Point{}};
  double r = region_radius;
  for (int l = 1; l <= tree.levels; ++l) {
    r /= 2.0;
    std::vector<Point> next;
    next.reserve(tree.centers.size() * 7);
    for (const Point& c : tree.centers) {
      auto kids = child_centers(c, r);
      next.insert(next.end(), kids.begin(), kids.end());
    }
    tree.centers = std::move(next);
  }
  tree.circle_radius = r;
  return tree;
}

std::vector<Point> dedupe_centers(std::span<const Point> centers, double tol) {
  // Bucket by a tol-sized grid; a duplicate can only sit in a neighboring bucket.
  std::map<std::pair<std::int64_t, std::int64_t>, std::vector<Point>> grid;
  std::vector<Point> out;
  out.reserve(centers.size());
  for (const Point& p : centers) {
    auto bx = static_cast<std::int64_t>(std::floor(p.x / tol));
    auto by = static_cast<std::int64_t>(std::floor(p.y / tol));
    bool duplicate = false;
    for (std::int64_t dx = -1; dx <= 1 && !duplicate; ++dx) {
      for (std::int64_t dy = -1; dy <= 1 && !duplicate; ++dy) {
        auto it = grid.find({bx + dx, by + dy});
        if (it == grid.end()) continue;
        for (const Point& q : it->second) {
          if (std::abs(q.x - p.x) <= tol && std::abs(q.y - p.y) <= tol) {
            duplicate = true;
            break;
          }
        }
      }
    }
    if (duplicate) continue;
    grid[{bx, by}].push_back(p);
    out.push_back(p);
  }
  return out;
}

std::vector<Point> prune(std::span<const Point> candidates, double circle_radius,
                         std::span<const GroundNode> gns) {
  const std::size_t n_cand = candidates.size();
  std::vector<std::vector<std::size_t>> covered(n_cand);
  std::vector<int> cover_count(gns.size(), 0);
  for (std::size_t k = 0; k < n_cand; ++k) {
    for (std::size_t g = 0; g < gns.size(); ++g) {
      if (covers(candidates[k], circle_radius, gns[g].pos)) {
        covered[k].push_back(g);
        ++cover_count[g];
      }
    }
  }

  std::vector<std::size_t> alive;
  for (std::size_t k = 0; k < n_cand; ++k) {
    if (!covered[k].empty()) alive.push_back(k);
  }
  const std::vector<std::size_t> useful = alive;

  // Greedy redundancy removal: fewest covered GNs first, then farthest from
  // the origin, then lowest index.
  auto removable = [&](std::size_t k) {
    return std::all_of(covered[k].begin(), covered[k].end(),
                       [&](std::size_t g) { return cover_count[g] >= 2; });
  };
  while (true) {
    std::optional<std::size_t> pick;
    for (std::size_t pos = 0; pos < alive.size(); ++pos) {
      std::size_t k = alive[pos];
      if (!removable(k)) continue;
      if (!pick) {
        pick = pos;
        continue;
      }
      std::size_t cur = alive[*pick];
      if (covered[k].size() != covered[cur].size()) {
        if (covered[k].size() < covered[cur].size()) pick = pos;
        continue;
      }
      double dk = std::hypot(candidates[k].x, candidates[k].y);
      double dc = std::hypot(candidates[cur].x, candidates[cur].y);
      if (dk > dc) pick = pos;
    }
    if (!pick) break;
    for (std::size_t g : covered[alive[*pick]]) --cover_count[g];
    alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(*pick));
  }

  if (!useful.empty() && useful.size() <= kExactPruneLimit) {
    std::vector<std::uint32_t> masks(gns.size(), 0u);
    for (std::size_t bit = 0; bit < useful.size(); ++bit) {
      for (std::size_t g : covered[useful[bit]]) masks[g] |= (1u << bit);
    }
    MinCoverSearch search(std::move(masks));
    if (auto better = search.run(static_cast<int>(alive.size()))) {
      alive.clear();
      for (std::size_t bit = 0; bit < useful.size(); ++bit) {
        if ((*better >> bit) & 1u) alive.push_back(useful[bit]);
      }
    }
  }

  std::vector<Point> out;
  out.reserve(alive.size());
  for (std::size_t k : alive) out.push_back(candidates[k]);
  return out;
}

CellLayout pack(double region_radius, const CoverageSpec& spec,
                std::span<const GroundNode> gns) {
  check_radii(region_radius, spec.radius);
  for (const auto& gn : gns) {
    if (std::hypot(gn.pos.x, gn.pos.y) > region_radius * (1.0 + kCoverageRelTol)) {
      throw std::invalid_argument("ground node " + std::to_string(gn.id) +
                                  " lies outside the region");
    }
  }

  CellLayout layout;
  layout.cell_radius = spec.radius;
  layout.hover_height = spec.hover_height;
  layout.region_radius = region_radius;

  if (region_radius <= spec.radius) {
    layout.centers = {Point{}};
    layout.circle_radius = region_radius;
    layout.candidate_count = 1;
    return layout;
  }

  const int depth = packing_depth(region_radius, spec.radius);
  layout.levels = depth;
  std::vector<double> radii(depth + 1, region_radius);
  for (int l = 1; l <= depth; ++l) radii[l] = radii[l - 1] / 2.0;
  layout.circle_radius = radii[depth];

  // reach[l]: farthest a level-depth descendant of a level-l center can
  // extend. Subtrees out of reach of every GN are not expanded.
  std::vector<double> reach(depth + 1, radii[depth]);
  for (int l = depth - 1; l >= 0; --l) reach[l] = reach[l + 1] + kSqrt3 * radii[l + 1];

  auto within_reach = [&](Point c, double r) {
    return std::any_of(gns.begin(), gns.end(),
                       [&](const GroundNode& gn) { return covers(c, r, gn.pos); });
  };

  std::vector<Point> level{Point{}};
  for (int l = 1; l <= depth; ++l) {
    std::vector<Point> next;
    next.reserve(level.size() * 7);
    for (const Point& parent : level) {
      for (const Point& c : child_centers(parent, radii[l])) {
        if (within_reach(c, reach[l])) next.push_back(c);
      }
    }
    level = dedupe_centers(next);
  }

  layout.candidate_count = level.size();
  layout.centers = prune(level, layout.circle_radius, gns);
  return layout;
}

std::size_t uncovered_count(const CellLayout& layout, std::span<const GroundNode> gns) {
  return static_cast<std::size_t>(std::count_if(gns.begin(), gns.end(), [&](const GroundNode& gn) {
    return std::none_of(layout.centers.begin(), layout.centers.end(),
                        [&](Point c) { return covers(c, layout.circle_radius, gn.pos); });
  }));
}

}  // namespace uas
