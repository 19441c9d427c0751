#include "hierdist/dynamic_forest.hpp"

#include <stdexcept>

namespace hierdist {

NodeId DynamicForest::add_node() {
  nodes_.emplace_back();
  return static_cast<NodeId>(nodes_.size() - 1);
}

DynamicForest::Best DynamicForest::compute_best(const Node& x, NodeId id) const {
  Best b = x.marked ? Best{0, id} : kNone;
  if (!x.kids.empty() && *x.kids.begin() < b) b = *x.kids.begin();
  return b;
}

void DynamicForest::refresh_up(NodeId x) {
  while (x != kNoNode) {
    Node& node = nodes_[x];
    const Best nb = compute_best(node, x);
    if (nb == node.best) return;
    const NodeId p = node.parent;
    if (p != kNoNode) {
      if (node.best != kNone) nodes_[p].kids.erase({node.best.first + node.up, node.best.second});
      if (nb != kNone) nodes_[p].kids.insert({nb.first + node.up, nb.second});
    }
    node.best = nb;
    x = p;
  }
}

void DynamicForest::link(NodeId child, NodeId parent, Weight w) {
  if (child >= nodes_.size() || parent >= nodes_.size()) throw std::out_of_range("unknown node");
  Node& c = nodes_[child];
  if (c.parent != kNoNode) throw std::invalid_argument("link: child is not a root");
  for (NodeId a = parent; a != kNoNode; a = nodes_[a].parent) {
    if (a == child) throw std::invalid_argument("link: would create a cycle");
  }
  c.parent = parent;
  c.up = w;
  if (c.best != kNone) nodes_[parent].kids.insert({c.best.first + w, c.best.second});
  refresh_up(parent);
}

void DynamicForest::cut(NodeId child) {
  Node& c = nodes_.at(child);
  if (c.parent == kNoNode) throw std::invalid_argument("cut: node is a root");
  const NodeId p = c.parent;
  if (c.best != kNone) nodes_[p].kids.erase({c.best.first + c.up, c.best.second});
  c.parent = kNoNode;
  c.up = 0;
  refresh_up(p);
}

NodeId DynamicForest::root(NodeId x) const {
  if (x >= nodes_.size()) throw std::out_of_range("unknown node");
  while (nodes_[x].parent != kNoNode) x = nodes_[x].parent;
  return x;
}

Weight DynamicForest::dist(NodeId x) const {
  if (x >= nodes_.size()) throw std::out_of_range("unknown node");
  Weight total = 0;
  while (nodes_[x].parent != kNoNode) {
    total += nodes_[x].up;
    x = nodes_[x].parent;
  }
  return total;
}

void DynamicForest::mark(NodeId x) {
  nodes_.at(x).marked = true;
  refresh_up(x);
}

void DynamicForest::unmark(NodeId x) {
  nodes_.at(x).marked = false;
  refresh_up(x);
}

std::optional<MarkedHit> DynamicForest::find_nearest_marked(NodeId r) const {
  const Best& b = nodes_.at(r).best;
  if (b == kNone) return std::nullopt;
  return MarkedHit{b.second, b.first};
}

}  // namespace hierdist
