#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hierdist/core_graph.hpp"
#include "hierdist/hierarchy_forest.hpp"
#include "hierdist/level_pivots.hpp"

namespace hierdist {

enum class EdgeKind : std::uint8_t { Input, Ball, PivotHistory, Connector, Projected };
inline constexpr std::size_t kEdgeKinds = 5;
std::string_view to_string(EdgeKind kind);

struct Provenance {
  VertexId vertex = kNoVertex;  // vertex whose change produced the record
  Stage stage = 0;
  int base_level = 0;           // for projections: level and id of the source base edge
  std::int64_t base_edge = -1;
};

struct EdgeRecord {
  int level;
  VertexId u;
  VertexId v;
  Weight weight;
  EdgeKind kind;
  Provenance from;
};

struct BaseRef {
  int level;
  std::uint32_t edge;  // edge id inside H_level
};

// Level-wise chain quantities: mpd and last improving pivot. Level 1 is the identity.
class ChainView {
 public:
  explicit ChainView(const HierarchyForest* forest) : forest_(forest) {}
  Weight mpd(VertexId v) const { return forest_ ? forest_->mpd(v) : 0; }
  VertexId pivot(VertexId v) const { return forest_ ? forest_->last_improving_pivot(v) : v; }
  const std::vector<ImprovingEntry>* history(VertexId v) const {
    return forest_ ? &forest_->improving_history(v) : nullptr;
  }

 private:
  const HierarchyForest* forest_;
};

/**
 * Produces the edges of H_{i+1} from the state of level i and holds them until
 * level i+1 is processed. Exact repeats (same level, endpoints and weight) are
 * inserted once. Tracks base edges per vertex so that projections can be redone
 * whenever an endpoint's last improving pivot moves.
 */
class EdgeGenerator {
 public:
  EdgeGenerator(int k, std::size_t capacity, Weight ball_constant = 5);

  void push(const EdgeRecord& rec);
  std::size_t pending_count(int level) const { return pending_.at(static_cast<std::size_t>(level)).size(); }

  // Inserts pending records of `level` into its graph; returns the number inserted.
  std::size_t apply_pending(int level, LevelPivots& graph_level, Stage stage);

  void emit_ball_edges(const LevelPivots& lp, VertexId u, Stage stage);
  void emit_ball_pair(const LevelPivots& lp, VertexId u, VertexId x, Stage stage);
  void emit_pivot_history_edges(const LevelPivots& lp, VertexId v, Stage stage);
  // Target level is `target`; `lower` gives level target-1 quantities, `upper` level target.
  void emit_connector_edges(int target, const ChainView& lower, const ChainView& upper, VertexId v,
                            const ImprovingEntry& entry, Stage stage);
  void emit_connectors_for_upper_event(int target, const ChainView& lower, const ChainView& upper,
                                       VertexId y, Stage stage);
  void note_lower_event(int level, VertexId v, VertexId pivot);
  void emit_projected_edge(int target, const ChainView& upper, const BaseRef& ref,
                           const std::vector<LevelPivots>& levels, Stage stage);
  void emit_projections_for_event(int target, const ChainView& upper, VertexId y,
                                  const std::vector<LevelPivots>& levels, Stage stage);

  std::span<const BaseRef> base_edges_of(VertexId v) const { return incident_.at(v); }
  std::span<const BaseRef> new_base_this_stage() const { return new_base_; }
  void end_stage() { new_base_.clear(); }

  std::uint64_t inserted(int level, EdgeKind kind) const;
  std::uint64_t emitted(int level, EdgeKind kind) const;
  Weight ball_constant() const { return ball_constant_; }

 private:
  struct Key {
    VertexId a;
    VertexId b;
    Weight w;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };
  struct Slot {
    std::uint32_t edge;
    bool base;
  };

  static bool is_base(EdgeKind kind) { return kind != EdgeKind::Projected; }
  void register_base(int level, std::uint32_t edge, VertexId u, VertexId v);

  int k_;
  Weight ball_constant_;
  std::vector<std::vector<EdgeRecord>> pending_;                  // by level, index 0 unused
  std::vector<std::unordered_map<Key, Slot, KeyHash>> present_;  // by level
  std::vector<std::vector<BaseRef>> incident_;
  std::vector<BaseRef> new_base_;
  std::vector<std::vector<std::vector<VertexId>>> rev_;  // rev_[level][x]: v whose history holds x
  std::vector<std::array<std::uint64_t, kEdgeKinds>> inserted_;
  std::vector<std::array<std::uint64_t, kEdgeKinds>> emitted_;
};

}  // namespace hierdist
