#pragma once

#include <cstddef>
#include <vector>

#include "hierdist/core_graph.hpp"
#include "hierdist/dynamic_forest.hpp"

namespace hierdist {

struct ImprovingEntry {
  Stage stage;
  VertexId pivot;  // last improving pivot adopted at that stage
  Weight mpd;      // rounded running minimum at that stage
};

struct ImprovingEvent {
  VertexId v;
  VertexId old_pivot;
  VertexId new_pivot;
  Weight old_mpd;
  Weight new_mpd;
};

/**
 * Forest F_i over the occurrences (v, j) of vertices in V(H_1) .. V(H_{i+1}).
 * A node (x, j) hangs below (p_{j+1}(x), j+1), so every leaf (v, 1) reaches the
 * root of its pivot chain. Leaves are marked; the leaf edge carries an offset
 * derived from the current rounded minimum so that a leaf sits at negative
 * depth exactly when its chain cost would lower that minimum.
 */
class HierarchyForest {
 public:
  HierarchyForest(int level, std::size_t capacity);

  int level() const { return level_; }

  // Re-hangs (v, j) below (pivot, j+1). An unset pivot leaves (v, j) as a root.
  void set_pivot_edge(VertexId v, int j, VertexId pivot, Weight pivot_dist);

  // Lowers the rounded minimum of every leaf that improved; returns one event per vertex.
  std::vector<ImprovingEvent> refresh(Stage stage);

  Weight mpd(VertexId v) const { return mpd_.at(v); }
  VertexId last_improving_pivot(VertexId v) const { return lip_.at(v); }
  const std::vector<ImprovingEntry>& improving_history(VertexId v) const { return history_.at(v); }
  VertexId chain_pivot(VertexId v) const;
  Weight cumulative(VertexId v) const;  // kInfinite when the chain is incomplete

  std::uint64_t mpd_changes() const { return mpd_changes_; }
  const DynamicForest& forest() const { return forest_; }

  static Weight leaf_offset(Weight mpd);

 private:
  NodeId node(VertexId v, int j);

  int level_;
  DynamicForest forest_;
  std::vector<std::vector<NodeId>> nodes_;  // nodes_[j-1][v]
  std::vector<VertexId> node_vertex_;
  std::vector<int> node_level_;
  std::vector<Weight> leaf_pd_;
  std::vector<Weight> mpd_;
  std::vector<VertexId> lip_;
  std::vector<std::vector<ImprovingEntry>> history_;
  std::vector<NodeId> dirty_;
  std::uint64_t mpd_changes_ = 0;
};

}  // namespace hierdist
