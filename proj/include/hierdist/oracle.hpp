#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <vector>

#include "hierdist/core_graph.hpp"
#include "hierdist/edge_generator.hpp"
#include "hierdist/hierarchy_forest.hpp"
#include "hierdist/level_pivots.hpp"
#include "hierdist/params.hpp"

namespace hierdist {

struct OracleConfig {
  // Re-point a vertex at its nearest next-level vertex whenever the maintained
  // pivot distance is more than twice that distance.
  bool nearest_repair = true;
  Weight ball_constant = 5;
  // When nonzero, caps the ball budget of every level below the top. The top
  // level always keeps the full budget. Meant for exercising deep hierarchies
  // on small graphs; the level size bound does not apply under a cap.
  std::size_t bhat_cap = 0;
};

struct TraceStep {
  int level;
  VertexId pivot_u;
  VertexId pivot_v;
  Weight d;  // internal (doubled) units
};

struct QueryResult {
  std::optional<Weight> estimate;  // input units; empty when unreachable
  Weight internal_estimate = kInfinite;
  int levels_used = 0;
  std::vector<TraceStep> trace;

  bool reachable() const { return estimate.has_value(); }
};

/**
 * Incremental distance oracle over an insert-only graph on vertices [0, n).
 * Input weights lie in [1, W] and are doubled on ingestion.
 */
class DistanceOracle {
 public:
  DistanceOracle(std::size_t n, Weight max_weight, OracleConfig config = {});

  void insert_edge(VertexId u, VertexId v, Weight w);
  QueryResult query(VertexId u, VertexId v) const;
  QueryResult query_with_trace(VertexId u, VertexId v) const;

  std::size_t num_vertices() const { return params_.n; }
  Weight max_input_weight() const { return max_input_weight_; }
  const HierarchyParams& params() const { return params_; }
  int k() const { return params_.k; }
  Stage stage() const { return stage_; }
  const OracleConfig& config() const { return config_; }

  const LevelPivots& level(int i) const { return levels_.at(static_cast<std::size_t>(i - 1)); }
  // Forest F_i, which carries the chain quantities of level i+1 (i = 1..k-1).
  const HierarchyForest& forest(int i) const { return forests_.at(static_cast<std::size_t>(i - 1)); }
  ChainView chain(int level) const;
  const EdgeGenerator& generator() const { return generator_; }
  const UnionFind& components() const { return components_; }
  std::chrono::nanoseconds update_time() const { return update_time_; }

  void corrupt_edge_for_testing(int level, std::size_t edge_id, Weight w);

 private:
  QueryResult run_query(VertexId u, VertexId v, bool trace) const;
  void process_level(int i, std::vector<ImprovingEvent>& lower_events);

  std::size_t n_;
  Weight max_input_weight_;
  OracleConfig config_;
  HierarchyParams params_;
  Stage stage_ = 0;
  std::vector<LevelPivots> levels_;
  std::vector<HierarchyForest> forests_;
  EdgeGenerator generator_;
  UnionFind components_;
  std::chrono::nanoseconds update_time_{0};
};

}  // namespace hierdist
