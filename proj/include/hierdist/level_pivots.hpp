#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "hierdist/core_graph.hpp"

namespace hierdist {

struct TruncResult {
  std::vector<std::pair<VertexId, Weight>> settled;  // in settle order
  bool aborted = false;
};

struct PivotHistoryEntry {
  Stage stage;
  VertexId pivot;
  Weight pivot_dist;  // value at the end of the adopting stage
};

using BallDict = std::vector<std::pair<VertexId, Weight>>;  // sorted by vertex id

/**
 * State of one level i: the graph H_i with its rounded view, and for every
 * vertex of H_i an approximate pivot in V(H_{i+1}), the pivot distance estimate
 * and the quarter-radius ball. The top level keeps unbounded balls and no pivots.
 */
class LevelPivots {
 public:
  LevelPivots(int level, bool top, std::size_t capacity, std::size_t bhat, Weight sentinel);

  int level() const { return level_; }
  bool is_top() const { return top_; }
  std::size_t bhat() const { return bhat_; }
  Weight sentinel() const { return sentinel_; }
  const IncrementalMultigraph& graph() const { return graph_; }
  const RoundedView& rounded() const { return rounded_; }
  bool contains(VertexId v) const { return graph_.has_vertex(v); }
  bool is_promoted(VertexId v) const { return promoted_.at(v) != 0; }

  VertexId pivot(VertexId v) const { return pivot_.at(v); }
  Weight pivot_dist(VertexId v) const { return pd_.at(v); }
  const BallDict& ball(VertexId v) const { return ball_.at(v); }
  std::span<const VertexId> ball_members(VertexId x) const { return members_.at(x); }
  const std::vector<PivotHistoryEntry>& pivot_history(VertexId v) const { return history_.at(v); }
  Weight ball_estimate(VertexId u, VertexId v) const;
  // Distance to the nearest next-level vertex in the rounded view, as tracked incrementally.
  Weight source_dist(VertexId v) const { return src_dist_.at(v); }

  void add_vertex(VertexId v);
  std::uint64_t insert_edge(VertexId u, VertexId v, Weight w);

  TruncResult trunc_dijkstra(VertexId v, Weight radius) const;
  void requeue_unvisited(std::span<const VertexId> touched);

  // Runs the pivot maintenance loop to its fixed point. `on_promote` fires for
  // every vertex that joins the next level.
  void update_approx_pivots(Stage stage, const std::function<void(VertexId)>& on_promote);

  // Appends history entries for pivot changes of this stage and returns those vertices.
  std::vector<VertexId> close_stage(Stage stage);
  // Vertices whose pivot or pivot distance changed this stage, sorted.
  std::vector<VertexId> changed_vertices() const;
  // Vertices whose ball was recomputed this stage, sorted.
  std::vector<VertexId> recomputed_vertices() const;
  std::span<const VertexId> promoted_this_stage() const { return promoted_now_; }
  void reset_stage();

  void set_nearest_repair(bool on) { repair_ = on; }

  std::uint64_t trunc_calls() const { return trunc_calls_; }
  std::uint64_t pivot_changes() const { return pivot_changes_; }

  IncrementalMultigraph& mutable_graph_for_testing() { return graph_; }

 private:
  void enqueue(VertexId v);
  void assign(VertexId x, VertexId p, Weight d);
  void set_ball(VertexId v, BallDict dict);
  void promote(VertexId v, const std::function<void(VertexId)>& on_promote);
  void relax_sources(std::vector<std::pair<Weight, VertexId>> seeds);
  bool apply_repairs();

  int level_;
  bool top_;
  std::size_t bhat_;
  Weight sentinel_;
  bool repair_ = true;

  IncrementalMultigraph graph_;
  RoundedView rounded_;
  std::vector<VertexId> pivot_;
  std::vector<Weight> pd_;
  std::vector<BallDict> ball_;
  std::vector<std::vector<VertexId>> members_;
  std::vector<std::vector<PivotHistoryEntry>> history_;
  std::vector<char> promoted_;

  std::vector<Weight> src_dist_;
  std::vector<VertexId> src_near_;
  std::vector<VertexId> repair_candidates_;

  std::deque<VertexId> queue_;
  std::vector<char> queued_;
  std::vector<VertexId> touched_;
  std::vector<VertexId> fresh_;

  std::vector<char> changed_flag_;
  std::vector<VertexId> changed_;
  std::vector<VertexId> start_pivot_;
  std::vector<char> recomputed_flag_;
  std::vector<VertexId> recomputed_;
  std::vector<VertexId> promoted_now_;

  mutable std::vector<Weight> scratch_dist_;
  mutable std::vector<char> scratch_done_;

  std::uint64_t trunc_calls_ = 0;
  std::uint64_t pivot_changes_ = 0;
};

}  // namespace hierdist
