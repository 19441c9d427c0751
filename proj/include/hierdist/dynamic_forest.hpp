#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "hierdist/core_graph.hpp"

namespace hierdist {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

struct MarkedHit {
  NodeId node;
  Weight dist;
  bool operator==(const MarkedHit&) const = default;
};

/**
 * Rooted forest with signed edge weights and mark bits. Every node caches the
 * nearest marked node of its subtree; a change is pushed to ancestors only while
 * that cache changes, so cost is proportional to depth, which is small here.
 */
class DynamicForest {
 public:
  NodeId add_node();
  std::size_t size() const { return nodes_.size(); }

  void link(NodeId child, NodeId parent, Weight w);
  void cut(NodeId child);
  NodeId parent(NodeId x) const { return nodes_.at(x).parent; }
  Weight parent_weight(NodeId x) const { return nodes_.at(x).up; }

  NodeId root(NodeId x) const;
  Weight dist(NodeId x) const;  // sum of weights on the path to the root

  void mark(NodeId x);
  void unmark(NodeId x);
  bool marked(NodeId x) const { return nodes_.at(x).marked; }

  // Marked node in the subtree of r minimizing (distance from r, node id).
  std::optional<MarkedHit> find_nearest_marked(NodeId r) const;

 private:
  using Best = std::pair<Weight, NodeId>;  // (distance below this node, leaf id)
  static constexpr Best kNone{kInfinite, kNoNode};

  struct Node {
    NodeId parent = kNoNode;
    Weight up = 0;
    bool marked = false;
    Best best = kNone;
    std::set<Best> kids;
  };

  Best compute_best(const Node& x, NodeId id) const;
  void refresh_up(NodeId x);

  std::vector<Node> nodes_;
};

}  // namespace hierdist
