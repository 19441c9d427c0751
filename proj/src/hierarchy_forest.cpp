#include "hierdist/hierarchy_forest.hpp"

#include <algorithm>
#include <stdexcept>

namespace hierdist {

HierarchyForest::HierarchyForest(int level, std::size_t capacity)
    : level_(level),
      nodes_(static_cast<std::size_t>(level + 1), std::vector<NodeId>(capacity, kNoNode)),
      leaf_pd_(capacity, kInfinite),
      mpd_(capacity, kInfinite),
      lip_(capacity, kNoVertex),
      history_(capacity) {
  if (level < 1) throw std::invalid_argument("forest level must be at least 1");
}

Weight HierarchyForest::leaf_offset(Weight mpd) {
  if (mpd == 0) return 0;
  if (mpd >= kInfinite) return kInfinite / 2;
  return mpd / 2 + 1;
}

NodeId HierarchyForest::node(VertexId v, int j) {
  NodeId& slot = nodes_.at(static_cast<std::size_t>(j - 1)).at(v);
  if (slot == kNoNode) {
    slot = forest_.add_node();
    node_vertex_.push_back(v);
    node_level_.push_back(j);
    if (j == 1) forest_.mark(slot);
  }
  return slot;
}

void HierarchyForest::set_pivot_edge(VertexId v, int j, VertexId pivot, Weight pivot_dist) {
  if (j < 1 || j > level_) throw std::out_of_range("forest edge level out of range");
  const NodeId x = node(v, j);
  if (forest_.parent(x) != kNoNode) forest_.cut(x);
  if (j == 1) leaf_pd_[v] = pivot_dist;
  if (pivot != kNoVertex) {
    const NodeId p = node(pivot, j + 1);
    const Weight w = (j == 1) ? pivot_dist - leaf_offset(mpd_[v]) : pivot_dist;
    forest_.link(x, p, w);
  }
  dirty_.push_back(x);
}

VertexId HierarchyForest::chain_pivot(VertexId v) const {
  const NodeId leaf = nodes_[0].at(v);
  if (leaf == kNoNode) return kNoVertex;
  const NodeId r = forest_.root(leaf);
  return node_level_[r] == level_ + 1 ? node_vertex_[r] : kNoVertex;
}

Weight HierarchyForest::cumulative(VertexId v) const {
  if (chain_pivot(v) == kNoVertex) return kInfinite;
  return forest_.dist(nodes_[0][v]) + leaf_offset(mpd_[v]);
}

std::vector<ImprovingEvent> HierarchyForest::refresh(Stage stage) {
  std::vector<NodeId> roots;
  for (NodeId x : dirty_) {
    const NodeId r = forest_.root(x);
    if (node_level_[r] == level_ + 1) roots.push_back(r);
  }
  dirty_.clear();
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());

  std::vector<ImprovingEvent> events;
  for (NodeId r : roots) {
    while (true) {
      auto hit = forest_.find_nearest_marked(r);
      if (!hit || hit->dist >= 0) break;
      const VertexId v = node_vertex_[hit->node];
      const Weight cpd = hit->dist + leaf_offset(mpd_[v]);
      const Weight next = ceil_pow2(cpd);
      if (next >= mpd_[v]) throw std::logic_error("rounded minimum failed to decrease");
      events.push_back({v, lip_[v], node_vertex_[r], mpd_[v], next});
      mpd_[v] = next;
      lip_[v] = node_vertex_[r];
      history_[v].push_back({stage, lip_[v], next});
      ++mpd_changes_;
      const NodeId p = forest_.parent(hit->node);
      forest_.cut(hit->node);
      forest_.link(hit->node, p, leaf_pd_[v] - leaf_offset(next));
    }
  }
  std::sort(events.begin(), events.end(),
            [](const ImprovingEvent& a, const ImprovingEvent& b) { return a.v < b.v; });
  return events;
}

}  // namespace hierdist
