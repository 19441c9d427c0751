#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hierdist {

using VertexId = std::uint32_t;
using Weight = std::int64_t;
using Stage = std::uint64_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
// Large enough to act as infinity, small enough that a few sums never overflow.
inline constexpr Weight kInfinite = std::numeric_limits<Weight>::max() / 8;

Weight ceil_pow2(Weight x);
Weight rounded_weight(Weight w);

struct Edge {
  VertexId u;
  VertexId v;
  Weight weight;
  std::uint64_t arrival;
};

/**
 * Insert-only weighted multigraph over a fixed id range [0, capacity).
 * Vertices must be added before edges can touch them. Each adjacency list is
 * kept sorted by (rounded weight, arrival), arrival being the edge count before insert.
 */
class IncrementalMultigraph {
 public:
  explicit IncrementalMultigraph(std::size_t capacity = 0);

  void add_vertex(VertexId v);
  bool has_vertex(VertexId v) const;
  std::size_t capacity() const { return present_.size(); }
  std::size_t num_vertices() const { return num_vertices_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const VertexId> vertices() const { return vertex_list_; }

  // Returns the arrival index of the new edge.
  std::uint64_t insert_edge(VertexId u, VertexId v, Weight w);

  const Edge& edge(std::size_t id) const { return edges_.at(id); }
  std::span<const Edge> edges() const { return edges_; }

  // Edge ids incident to v in (rounded weight, arrival) order. Self-loops appear once.
  std::span<const std::uint32_t> adjacency(VertexId v) const;
  std::vector<std::uint32_t> adj_prefix(VertexId v, std::size_t b) const;
  // True if some insertion at or after `since_arrival` landed inside the first b slots.
  bool prefix_changed_since(VertexId v, std::size_t b, std::uint64_t since_arrival) const;

  // Test hook: overwrite a stored weight without reordering anything.
  void overwrite_weight_for_testing(std::size_t id, Weight w);

 private:
  void check_vertex(VertexId v) const;
  std::size_t place(VertexId x, std::uint32_t id);

  std::vector<char> present_;
  std::vector<VertexId> vertex_list_;
  std::size_t num_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::uint32_t>> adj_;
  // per vertex: (arrival, position) of every insertion into its list
  std::vector<std::vector<std::pair<std::uint64_t, std::uint32_t>>> insert_log_;
};

struct RoundedArc {
  Weight weight;
  std::uint64_t arrival;
  VertexId to;
};

/**
 * Power-of-two rounded view of a level graph. Parallel edges collapse to one
 * arc per neighbor holding the lightest rounded weight (earliest arrival on ties),
 * so the first b arcs of a vertex reach b distinct neighbors.
 */
class RoundedView {
 public:
  explicit RoundedView(std::size_t capacity = 0);

  // Returns, for each endpoint, the arc position after insertion or npos when the
  // new edge did not improve the existing arc to that neighbor.
  std::pair<std::size_t, std::size_t> insert(VertexId u, VertexId v, Weight w,
                                             std::uint64_t arrival);

  std::span<const RoundedArc> arcs(VertexId v) const { return arcs_.at(v); }
  std::span<const RoundedArc> prefix(VertexId v, std::size_t b) const;

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

 private:
  std::size_t upsert(VertexId x, VertexId y, Weight rw, std::uint64_t arrival);

  std::vector<std::vector<RoundedArc>> arcs_;
  std::unordered_map<std::uint64_t, std::pair<Weight, std::uint64_t>> best_;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0);
  VertexId find(VertexId x);
  VertexId find(VertexId x) const;
  bool unite(VertexId a, VertexId b);
  bool connected(VertexId a, VertexId b) const { return find(a) == find(b); }

 private:
  std::vector<VertexId> parent_;
  std::vector<std::uint32_t> size_;
};

}  // namespace hierdist
