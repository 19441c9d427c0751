#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hierdist/edge_generator.hpp"
#include "hierdist/oracle.hpp"
#include "hierdist/verification.hpp"

namespace hierdist {

struct LevelMetrics {
  int level = 0;
  double b = 0.0;
  std::size_t bhat = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::array<std::uint64_t, kEdgeKinds> edges_by_kind{};
  std::uint64_t pivot_changes = 0;
  std::uint64_t mpd_changes = 0;
  std::uint64_t trunc_calls = 0;
};

struct MetricsSnapshot {
  std::size_t n = 0;
  int k = 0;
  Stage stages = 0;
  double update_seconds = 0.0;
  std::uint64_t queries = 0;
  double max_stretch = 1.0;
  double mean_stretch = 1.0;
  std::size_t stretch_pairs = 0;
  std::size_t total_edges = 0;
  // m + k n log^5(nW) + sum_j |V(H_j)| b_j log^4(nW), the reference shape for edge counts
  double edge_bound = 0.0;
  std::vector<LevelMetrics> levels;
};

MetricsSnapshot collect_metrics(const DistanceOracle& oracle, std::uint64_t queries, const StretchStats& stretch);
std::string metrics_json(const MetricsSnapshot& m, int indent = 2);

}  // namespace hierdist
