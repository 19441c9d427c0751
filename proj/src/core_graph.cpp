#include "hierdist/core_graph.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace hierdist {

Weight ceil_pow2(Weight x) {
  if (x < 0) throw std::invalid_argument("ceil_pow2: negative argument");
  if (x == 0) return 0;
  if (x >= kInfinite) return kInfinite;
  return static_cast<Weight>(std::bit_ceil(static_cast<std::uint64_t>(x)));
}

Weight rounded_weight(Weight w) {
  if (w < 1) throw std::invalid_argument("rounded_weight: weight below 1");
  return ceil_pow2(w);
}

IncrementalMultigraph::IncrementalMultigraph(std::size_t capacity)
    : present_(capacity, 0), adj_(capacity), insert_log_(capacity) {}

void IncrementalMultigraph::add_vertex(VertexId v) {
  if (v >= present_.size()) throw std::out_of_range("vertex id beyond capacity");
  if (present_[v]) return;
  present_[v] = 1;
  vertex_list_.push_back(v);
  ++num_vertices_;
}

bool IncrementalMultigraph::has_vertex(VertexId v) const {
  return v < present_.size() && present_[v];
}

void IncrementalMultigraph::check_vertex(VertexId v) const {
  if (!has_vertex(v)) throw std::invalid_argument("unknown vertex");
}

std::size_t IncrementalMultigraph::place(VertexId x, std::uint32_t id) {
  auto& list = adj_[x];
  const Weight w = rounded_weight(edges_[id].weight);
  // the new edge has the largest arrival, so it goes after every equal rounded weight
  auto it = std::upper_bound(list.begin(), list.end(), w, [this](Weight value, std::uint32_t e) {
    return value < rounded_weight(edges_[e].weight);
  });
  auto pos = static_cast<std::size_t>(it - list.begin());
  list.insert(it, id);
  insert_log_[x].emplace_back(edges_[id].arrival, static_cast<std::uint32_t>(pos));
  return pos;
}

std::uint64_t IncrementalMultigraph::insert_edge(VertexId u, VertexId v, Weight w) {
  check_vertex(u);
  check_vertex(v);
  if (w < 2) throw std::invalid_argument("weight below domain");
  const std::uint64_t arrival = edges_.size();
  edges_.push_back(Edge{u, v, w, arrival});
  const auto id = static_cast<std::uint32_t>(arrival);
  place(u, id);
  if (v != u) place(v, id);
  return arrival;
}

std::span<const std::uint32_t> IncrementalMultigraph::adjacency(VertexId v) const {
  check_vertex(v);
  return adj_[v];
}

std::vector<std::uint32_t> IncrementalMultigraph::adj_prefix(VertexId v, std::size_t b) const {
  auto list = adjacency(v);
  return {list.begin(), list.begin() + static_cast<std::ptrdiff_t>(std::min(b, list.size()))};
}

bool IncrementalMultigraph::prefix_changed_since(VertexId v, std::size_t b,
                                                 std::uint64_t since_arrival) const {
  check_vertex(v);
  const auto& log = insert_log_[v];
  for (auto it = log.rbegin(); it != log.rend() && it->first >= since_arrival; ++it) {
    if (it->second < b) return true;
  }
  return false;
}

void IncrementalMultigraph::overwrite_weight_for_testing(std::size_t id, Weight w) {
  edges_.at(id).weight = w;
}

RoundedView::RoundedView(std::size_t capacity) : arcs_(capacity) {}

static std::uint64_t pair_key(VertexId a, VertexId b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

std::size_t RoundedView::upsert(VertexId x, VertexId y, Weight rw, std::uint64_t arrival) {
  auto& list = arcs_[x];
  auto less = [](const RoundedArc& a, std::pair<Weight, std::uint64_t> key) {
    return std::make_pair(a.weight, a.arrival) < key;
  };
  auto [it, fresh] = best_.try_emplace(pair_key(x, y), rw, arrival);
  if (!fresh) {
    if (it->second.first <= rw) return npos;
    auto old = std::lower_bound(list.begin(), list.end(), it->second, less);
    list.erase(old);
    it->second = {rw, arrival};
  }
  auto pos = std::lower_bound(list.begin(), list.end(), std::make_pair(rw, arrival), less);
  auto index = static_cast<std::size_t>(pos - list.begin());
  list.insert(pos, RoundedArc{rw, arrival, y});
  return index;
}

std::pair<std::size_t, std::size_t> RoundedView::insert(VertexId u, VertexId v, Weight w,
                                                        std::uint64_t arrival) {
  if (u >= arcs_.size() || v >= arcs_.size()) throw std::invalid_argument("unknown vertex");
  if (u == v) return {npos, npos};
  const Weight rw = rounded_weight(w);
  return {upsert(u, v, rw, arrival), upsert(v, u, rw, arrival)};
}

std::span<const RoundedArc> RoundedView::prefix(VertexId v, std::size_t b) const {
  const auto& list = arcs_.at(v);
  return std::span<const RoundedArc>(list).first(std::min(b, list.size()));
}

UnionFind::UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
  for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<VertexId>(i);
}

VertexId UnionFind::find(VertexId x) {
  VertexId root = x;
  while (parent_.at(root) != root) root = parent_[root];
  while (parent_[x] != root) {
    VertexId next = parent_[x];
    parent_[x] = root;
    x = next;
  }
  return root;
}

VertexId UnionFind::find(VertexId x) const {
  while (parent_.at(x) != x) x = parent_[x];
  return x;
}

bool UnionFind::unite(VertexId a, VertexId b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  return true;
}

}  // namespace hierdist
