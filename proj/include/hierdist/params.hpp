#pragma once

#include <cstddef>
#include <vector>

#include "hierdist/core_graph.hpp"

namespace hierdist {

struct LevelParams {
  int level;          // 1-based
  double b;           // 2^((6/5)^level)
  std::size_t bhat;   // ceil(b * (log_{4/3}(n^2 W) + 1))
};

struct HierarchyParams {
  std::size_t n = 0;
  Weight max_weight = 0;  // already in scaled units
  int k = 2;
  Weight sentinel = 0;    // n^2 W, initial pivot distance
  std::vector<LevelParams> levels;  // levels[i-1] describes level i, i = 1..k

  const LevelParams& at(int level) const { return levels.at(static_cast<std::size_t>(level - 1)); }
};

// `max_weight` must be given in the same units the hierarchy stores.
HierarchyParams compute_params(std::size_t n, Weight max_weight);

// Smallest k with sum_{i<=k} (6/5)^i > log2 n, never below 2.
int hierarchy_depth(std::size_t n);

// 2 * 236145^(k-1), the composed stretch ceiling.
long double stretch_ceiling(int k);

}  // namespace hierdist
