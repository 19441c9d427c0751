#include "hierdist/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace hierdist {

DistanceOracle::DistanceOracle(std::size_t n, Weight max_weight, OracleConfig config)
    : n_(n),
      max_input_weight_(max_weight),
      config_(config),
      params_(compute_params(n, 2 * max_weight)),
      generator_(params_.k, n, config.ball_constant),
      components_(n) {
  if (n == 0) throw std::invalid_argument("oracle needs at least one vertex");
  levels_.reserve(static_cast<std::size_t>(params_.k));
  for (int i = 1; i <= params_.k; ++i) {
    std::size_t bhat = params_.at(i).bhat;
    if (config.bhat_cap > 0 && i < params_.k) bhat = std::min(bhat, std::max<std::size_t>(config.bhat_cap, 2));
    levels_.emplace_back(i, i == params_.k, n, bhat, params_.sentinel);
    levels_.back().set_nearest_repair(config.nearest_repair);
  }
  for (int i = 1; i < params_.k; ++i) forests_.emplace_back(i, n);
  for (VertexId v = 0; v < n; ++v) levels_[0].add_vertex(v);
  // settle the initial singleton balls so that every level starts quiescent
  levels_[0].update_approx_pivots(0, nullptr);
  levels_[0].reset_stage();
}

ChainView DistanceOracle::chain(int level) const {
  if (level <= 1) return ChainView(nullptr);
  return ChainView(&forest(level - 1));
}

void DistanceOracle::insert_edge(VertexId u, VertexId v, Weight w) {
  if (u >= n_ || v >= n_) throw std::invalid_argument("unknown vertex");
  if (w < 1 || w > max_input_weight_) throw std::invalid_argument("weight outside [1, W]");
  const auto start = std::chrono::steady_clock::now();
  ++stage_;
  components_.unite(u, v);
  generator_.push({1, u, v, 2 * w, EdgeKind::Input, Provenance{kNoVertex, stage_, 0, -1}});
  std::vector<ImprovingEvent> lower_events;
  for (int i = 1; i <= params_.k; ++i) process_level(i, lower_events);
  for (auto& lp : levels_) lp.reset_stage();
  generator_.end_stage();
  update_time_ += std::chrono::steady_clock::now() - start;
}

void DistanceOracle::process_level(int i, std::vector<ImprovingEvent>& lower_events) {
  LevelPivots& lp = levels_[static_cast<std::size_t>(i - 1)];
  generator_.apply_pending(i, lp, stage_);
  if (i == params_.k) {
    lp.update_approx_pivots(stage_, nullptr);
    return;
  }
  LevelPivots& next = levels_[static_cast<std::size_t>(i)];
  lp.update_approx_pivots(stage_, [&next](VertexId x) { next.add_vertex(x); });

  const std::vector<VertexId> moved = lp.close_stage(stage_);
  const std::vector<VertexId> changed = lp.changed_vertices();
  for (int m = i; m < params_.k; ++m) {
    HierarchyForest& f = forests_[static_cast<std::size_t>(m - 1)];
    for (VertexId x : changed) f.set_pivot_edge(x, i, lp.pivot(x), lp.pivot_dist(x));
  }
  std::vector<ImprovingEvent> events = forests_[static_cast<std::size_t>(i - 1)].refresh(stage_);
  for (const ImprovingEvent& ev : events) generator_.note_lower_event(i + 1, ev.v, ev.new_pivot);

  const int target = i + 1;
  std::vector<VertexId> ball_sources = lp.recomputed_vertices();
  ball_sources.insert(ball_sources.end(), changed.begin(), changed.end());
  std::sort(ball_sources.begin(), ball_sources.end());
  ball_sources.erase(std::unique(ball_sources.begin(), ball_sources.end()), ball_sources.end());
  for (VertexId u : ball_sources) generator_.emit_ball_edges(lp, u, stage_);
  for (VertexId v : moved) {
    for (VertexId u : lp.ball_members(v)) generator_.emit_ball_pair(lp, u, v, stage_);
    generator_.emit_pivot_history_edges(lp, v, stage_);
  }

  const ChainView lower = chain(i);
  const ChainView upper = chain(target);
  if (i >= 2) {
    for (const ImprovingEvent& ev : lower_events) {
      generator_.emit_connector_edges(target, lower, upper, ev.v, lower.history(ev.v)->back(), stage_);
    }
  }
  for (const ImprovingEvent& ev : events) {
    generator_.emit_connectors_for_upper_event(target, lower, upper, ev.v, stage_);
    generator_.emit_projections_for_event(target, upper, ev.v, levels_, stage_);
  }
  for (const BaseRef& ref : generator_.new_base_this_stage()) {
    if (ref.level < target) generator_.emit_projected_edge(target, upper, ref, levels_, stage_);
  }
  lower_events = std::move(events);
}

QueryResult DistanceOracle::query(VertexId u, VertexId v) const { return run_query(u, v, false); }

QueryResult DistanceOracle::query_with_trace(VertexId u, VertexId v) const { return run_query(u, v, true); }

QueryResult DistanceOracle::run_query(VertexId u, VertexId v, bool trace) const {
  if (u >= n_ || v >= n_) throw std::invalid_argument("unknown vertex");
  QueryResult res;
  if (!components_.connected(u, v)) return res;
  VertexId a = u;
  VertexId b = v;
  Weight total = 0;
  for (int i = 1; i <= params_.k; ++i) {
    const LevelPivots& lp = level(i);
    const Weight est = lp.ball_estimate(a, b);
    if (i < params_.k) {
      const Weight limit = std::max(lp.pivot_dist(a), lp.pivot_dist(b));
      const bool climb = est >= kInfinite || 8 * est > limit;
      const VertexId pa = lp.pivot(a);
      const VertexId pb = lp.pivot(b);
      if (climb && pa != kNoVertex && pb != kNoVertex) {
        const Weight d = lp.pivot_dist(a) + lp.pivot_dist(b);
        if (trace) res.trace.push_back({i, a, b, d});
        total += d;
        a = pa;
        b = pb;
        continue;
      }
    }
    if (est >= kInfinite) throw std::logic_error("query reached a level without an estimate");
    if (trace) res.trace.push_back({i, a, b, est});
    total += est;
    res.levels_used = i;
    res.internal_estimate = total;
    res.estimate = (total + 1) / 2;
    return res;
  }
  throw std::logic_error("query loop exceeded the hierarchy depth");
}

void DistanceOracle::corrupt_edge_for_testing(int level, std::size_t edge_id, Weight w) {
  levels_.at(static_cast<std::size_t>(level - 1)).mutable_graph_for_testing().overwrite_weight_for_testing(edge_id, w);
}

}  // namespace hierdist
