#include "hierdist/level_pivots.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>

namespace hierdist {

namespace {

using HeapItem = std::pair<Weight, VertexId>;
using MinHeap = std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>>;

void sort_unique(std::vector<VertexId>& xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

}  // namespace

LevelPivots::LevelPivots(int level, bool top, std::size_t capacity, std::size_t bhat, Weight sentinel)
    : level_(level),
      top_(top),
      bhat_(bhat),
      sentinel_(sentinel),
      graph_(capacity),
      rounded_(capacity),
      pivot_(capacity, kNoVertex),
      pd_(capacity, kInfinite),
      ball_(capacity),
      members_(capacity),
      history_(capacity),
      promoted_(capacity, 0),
      src_dist_(capacity, kInfinite),
      src_near_(capacity, kNoVertex),
      queued_(capacity, 0),
      changed_flag_(capacity, 0),
      start_pivot_(capacity, kNoVertex),
      recomputed_flag_(capacity, 0),
      scratch_dist_(capacity, kInfinite),
      scratch_done_(capacity, 0) {
  if (bhat < 2) throw std::invalid_argument("bhat must be at least 2");
}

void LevelPivots::add_vertex(VertexId v) {
  if (graph_.has_vertex(v)) return;
  graph_.add_vertex(v);
  ball_[v] = {{v, 0}};
  members_[v] = {v};
  fresh_.push_back(v);
}

std::uint64_t LevelPivots::insert_edge(VertexId u, VertexId v, Weight w) {
  const std::uint64_t arrival = graph_.insert_edge(u, v, w);
  auto [pu, pv] = rounded_.insert(u, v, w, arrival);
  if (pu != RoundedView::npos && pu < bhat_) touched_.push_back(u);
  if (pv != RoundedView::npos && pv < bhat_) touched_.push_back(v);
  if (!top_ && u != v) {
    const Weight rw = rounded_weight(w);
    std::vector<VertexId> starts;
    if (src_dist_[u] + rw < src_dist_[v]) {
      src_dist_[v] = src_dist_[u] + rw;
      src_near_[v] = src_near_[u];
      starts.push_back(v);
    } else if (src_dist_[v] + rw < src_dist_[u]) {
      src_dist_[u] = src_dist_[v] + rw;
      src_near_[u] = src_near_[v];
      starts.push_back(u);
    }
    if (!starts.empty()) {
      repair_candidates_.push_back(starts.front());
      relax_sources({{src_dist_[starts.front()], starts.front()}});
    }
  }
  return arrival;
}

void LevelPivots::relax_sources(std::vector<std::pair<Weight, VertexId>> seeds) {
  MinHeap heap(std::greater<>{}, std::move(seeds));
  while (!heap.empty()) {
    auto [d, x] = heap.top();
    heap.pop();
    if (d != src_dist_[x]) continue;
    for (const RoundedArc& arc : rounded_.arcs(x)) {
      const Weight nd = d + arc.weight;
      if (nd < src_dist_[arc.to]) {
        src_dist_[arc.to] = nd;
        src_near_[arc.to] = src_near_[x];
        repair_candidates_.push_back(arc.to);
        heap.emplace(nd, arc.to);
      }
    }
  }
}

Weight LevelPivots::ball_estimate(VertexId u, VertexId v) const {
  if (!contains(u) || !contains(v)) throw std::invalid_argument("unknown vertex");
  if (u == v) return 0;
  auto lookup = [](const BallDict& dict, VertexId x) -> Weight {
    auto it = std::lower_bound(dict.begin(), dict.end(), std::make_pair(x, Weight{-1}));
    return (it != dict.end() && it->first == x) ? it->second : kInfinite;
  };
  return std::min(lookup(ball_[v], u), lookup(ball_[u], v));
}

TruncResult LevelPivots::trunc_dijkstra(VertexId v, Weight radius) const {
  if (!contains(v)) throw std::invalid_argument("unknown vertex");
  TruncResult res;
  // dense scratch, reset through the list of vertices it touched
  std::vector<VertexId> seen;
  auto reach = [&](VertexId x, Weight d) {
    if (scratch_dist_[x] == kInfinite) seen.push_back(x);
    scratch_dist_[x] = d;
  };
  MinHeap heap;
  reach(v, 0);
  heap.emplace(0, v);
  while (!heap.empty()) {
    auto [d, x] = heap.top();
    heap.pop();
    if (scratch_done_[x] || scratch_dist_[x] != d) continue;
    scratch_done_[x] = 1;
    res.settled.emplace_back(x, d);
    if (res.settled.size() >= bhat_) {
      res.aborted = true;
      break;
    }
    for (const RoundedArc& arc : rounded_.prefix(x, bhat_)) {
      const Weight nd = d + arc.weight;
      if (nd > radius || scratch_done_[arc.to] || nd >= scratch_dist_[arc.to]) continue;
      reach(arc.to, nd);
      heap.emplace(nd, arc.to);
    }
  }
  for (VertexId x : seen) {
    scratch_dist_[x] = kInfinite;
    scratch_done_[x] = 0;
  }
  return res;
}

void LevelPivots::enqueue(VertexId v) {
  if (queued_[v]) return;
  queued_[v] = 1;
  queue_.push_back(v);
}

void LevelPivots::requeue_unvisited(std::span<const VertexId> touched) {
  std::vector<VertexId> batch(fresh_.begin(), fresh_.end());
  for (VertexId x : touched) {
    auto ms = members_[x];
    batch.insert(batch.end(), ms.begin(), ms.end());
  }
  sort_unique(batch);
  for (VertexId v : batch) enqueue(v);
  fresh_.clear();
}

void LevelPivots::assign(VertexId x, VertexId p, Weight d) {
  if (!(d < pd_[x])) throw std::logic_error("pivot distance must strictly decrease");
  if (!changed_flag_[x]) {
    changed_flag_[x] = 1;
    changed_.push_back(x);
    start_pivot_[x] = pivot_[x];
  }
  if (p != pivot_[x]) ++pivot_changes_;
  pivot_[x] = p;
  pd_[x] = d;
  enqueue(x);
}

void LevelPivots::set_ball(VertexId v, BallDict dict) {
  std::sort(dict.begin(), dict.end());
  const BallDict& old = ball_[v];
  auto drop = [&](VertexId x) {
    auto& ms = members_[x];
    ms.erase(std::lower_bound(ms.begin(), ms.end(), v));
  };
  auto add = [&](VertexId x) {
    auto& ms = members_[x];
    ms.insert(std::lower_bound(ms.begin(), ms.end(), v), v);
  };
  std::size_t a = 0;
  std::size_t b = 0;
  while (a < old.size() || b < dict.size()) {
    if (b == dict.size() || (a < old.size() && old[a].first < dict[b].first)) {
      drop(old[a++].first);
    } else if (a == old.size() || dict[b].first < old[a].first) {
      add(dict[b++].first);
    } else {
      ++a;
      ++b;
    }
  }
  ball_[v] = std::move(dict);
  if (!recomputed_flag_[v]) {
    recomputed_flag_[v] = 1;
    recomputed_.push_back(v);
  }
}

void LevelPivots::promote(VertexId v, const std::function<void(VertexId)>& on_promote) {
  promoted_[v] = 1;
  promoted_now_.push_back(v);
  if (on_promote) on_promote(v);
  src_dist_[v] = 0;
  src_near_[v] = v;
  repair_candidates_.push_back(v);
  relax_sources({{0, v}});
}

bool LevelPivots::apply_repairs() {
  sort_unique(repair_candidates_);
  std::vector<VertexId> cands;
  cands.swap(repair_candidates_);
  bool any = false;
  for (VertexId v : cands) {
    if (pd_[v] > 2 * src_dist_[v]) {
      assign(v, src_near_[v], src_dist_[v]);
      any = true;
    }
  }
  return any;
}

void LevelPivots::update_approx_pivots(Stage /*stage*/, const std::function<void(VertexId)>& on_promote) {
  requeue_unvisited(touched_);
  touched_.clear();
  while (true) {
    if (!top_ && repair_) apply_repairs();
    if (queue_.empty()) break;
    while (!queue_.empty()) {
      const VertexId v = queue_.front();
      queue_.pop_front();
      queued_[v] = 0;
      const Weight radius = pd_[v] >= kInfinite ? kInfinite : pd_[v] / 4;
      TruncResult res = trunc_dijkstra(v, radius);
      ++trunc_calls_;
      if (!res.aborted) {
        set_ball(v, std::move(res.settled));
        continue;
      }
      if (top_) throw std::logic_error("ball overflow at the top level");
      VertexId via = kNoVertex;
      Weight via_dist = kInfinite;
      for (auto [u, d] : res.settled) {
        if (2 * pd_[u] < pd_[v] && d + pd_[u] < via_dist) {
          via = u;
          via_dist = d + pd_[u];
        }
      }
      if (via != kNoVertex) {
        assign(v, pivot_[via], via_dist);
      } else {
        promote(v, on_promote);
        for (auto [u, d] : res.settled) assign(u, v, d);
      }
      if (repair_) apply_repairs();
    }
  }
  if (!top_ && !repair_) repair_candidates_.clear();
}

std::vector<VertexId> LevelPivots::close_stage(Stage stage) {
  std::vector<VertexId> moved;
  for (VertexId x : changed_vertices()) {
    if (pivot_[x] != start_pivot_[x]) {
      history_[x].push_back({stage, pivot_[x], pd_[x]});
      moved.push_back(x);
    }
  }
  return moved;
}

std::vector<VertexId> LevelPivots::changed_vertices() const {
  std::vector<VertexId> out = changed_;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VertexId> LevelPivots::recomputed_vertices() const {
  std::vector<VertexId> out = recomputed_;
  std::sort(out.begin(), out.end());
  return out;
}

void LevelPivots::reset_stage() {
  for (VertexId x : changed_) changed_flag_[x] = 0;
  for (VertexId x : recomputed_) recomputed_flag_[x] = 0;
  changed_.clear();
  recomputed_.clear();
  promoted_now_.clear();
}

}  // namespace hierdist
