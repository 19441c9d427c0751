#include "hierdist/edge_generator.hpp"

#include <algorithm>
#include <stdexcept>

namespace hierdist {

std::string_view to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::Input: return "input";
    case EdgeKind::Ball: return "ball";
    case EdgeKind::PivotHistory: return "pivot_history";
    case EdgeKind::Connector: return "connector";
    case EdgeKind::Projected: return "projected";
  }
  return "unknown";
}

std::size_t EdgeGenerator::KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t h = (static_cast<std::uint64_t>(k.a) << 32) ^ k.b;
  h ^= static_cast<std::uint64_t>(k.w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return std::hash<std::uint64_t>{}(h);
}

EdgeGenerator::EdgeGenerator(int k, std::size_t capacity, Weight ball_constant)
    : k_(k),
      ball_constant_(ball_constant),
      pending_(static_cast<std::size_t>(k + 1)),
      present_(static_cast<std::size_t>(k + 1)),
      incident_(capacity),
      rev_(static_cast<std::size_t>(k + 1), std::vector<std::vector<VertexId>>(capacity)),
      inserted_(static_cast<std::size_t>(k + 1)),
      emitted_(static_cast<std::size_t>(k + 1)) {
  for (auto& row : inserted_) row.fill(0);
  for (auto& row : emitted_) row.fill(0);
}

void EdgeGenerator::push(const EdgeRecord& rec) {
  if (rec.level < 1 || rec.level > k_) throw std::out_of_range("edge record level out of range");
  if (rec.u == rec.v) return;
  ++emitted_[static_cast<std::size_t>(rec.level)][static_cast<std::size_t>(rec.kind)];
  pending_[static_cast<std::size_t>(rec.level)].push_back(rec);
}

void EdgeGenerator::register_base(int level, std::uint32_t edge, VertexId u, VertexId v) {
  const BaseRef ref{level, edge};
  incident_[u].push_back(ref);
  if (v != u) incident_[v].push_back(ref);
  new_base_.push_back(ref);
}

std::size_t EdgeGenerator::apply_pending(int level, LevelPivots& graph_level, Stage /*stage*/) {
  auto& queue = pending_.at(static_cast<std::size_t>(level));
  auto& present = present_[static_cast<std::size_t>(level)];
  std::vector<EdgeRecord> retained;
  std::size_t count = 0;
  for (const EdgeRecord& rec : queue) {
    if (!graph_level.contains(rec.u) || !graph_level.contains(rec.v)) {
      retained.push_back(rec);
      continue;
    }
    const Key key{std::min(rec.u, rec.v), std::max(rec.u, rec.v), rec.weight};
    auto it = present.find(key);
    if (it != present.end()) {
      if (is_base(rec.kind) && !it->second.base) {
        it->second.base = true;
        register_base(level, it->second.edge, rec.u, rec.v);
      }
      continue;
    }
    const auto id = static_cast<std::uint32_t>(graph_level.insert_edge(rec.u, rec.v, rec.weight));
    present.emplace(key, Slot{id, is_base(rec.kind)});
    if (is_base(rec.kind)) register_base(level, id, rec.u, rec.v);
    ++inserted_[static_cast<std::size_t>(level)][static_cast<std::size_t>(rec.kind)];
    ++count;
  }
  queue.swap(retained);
  return count;
}

void EdgeGenerator::emit_ball_pair(const LevelPivots& lp, VertexId u, VertexId x, Stage stage) {
  const VertexId pu = lp.pivot(u);
  const VertexId px = lp.pivot(x);
  if (pu == kNoVertex || px == kNoVertex) return;
  push({lp.level() + 1, pu, px, ball_constant_ * ceil_pow2(lp.pivot_dist(u)), EdgeKind::Ball,
        Provenance{u, stage, 0, -1}});
}

void EdgeGenerator::emit_ball_edges(const LevelPivots& lp, VertexId u, Stage stage) {
  if (lp.pivot(u) == kNoVertex) return;
  for (const auto& [x, d] : lp.ball(u)) emit_ball_pair(lp, u, x, stage);
}

void EdgeGenerator::emit_pivot_history_edges(const LevelPivots& lp, VertexId v, Stage stage) {
  const auto& hist = lp.pivot_history(v);
  if (hist.size() < 2) return;
  const VertexId newest = hist.back().pivot;
  for (std::size_t j = 0; j + 1 < hist.size(); ++j) {
    push({lp.level() + 1, hist[j].pivot, newest, 8 * ceil_pow2(hist[j].pivot_dist),
          EdgeKind::PivotHistory, Provenance{v, stage, 0, -1}});
  }
}

void EdgeGenerator::emit_connector_edges(int target, const ChainView& /*lower*/, const ChainView& upper,
                                         VertexId v, const ImprovingEntry& entry, Stage stage) {
  const VertexId x = entry.pivot;
  const VertexId px = upper.pivot(x);
  const VertexId pv = upper.pivot(v);
  if (px == kNoVertex || pv == kNoVertex) return;
  push({target, px, pv, upper.mpd(x) + entry.mpd + upper.mpd(v), EdgeKind::Connector,
        Provenance{v, stage, 0, -1}});
}

void EdgeGenerator::note_lower_event(int level, VertexId v, VertexId pivot) {
  rev_.at(static_cast<std::size_t>(level)).at(pivot).push_back(v);
}

void EdgeGenerator::emit_connectors_for_upper_event(int target, const ChainView& lower,
                                                    const ChainView& upper, VertexId y, Stage stage) {
  const int low = target - 1;
  if (low < 2) return;  // level-1 history is the identity, only self-loops arise
  if (const auto* hist = lower.history(y)) {
    for (const ImprovingEntry& e : *hist) emit_connector_edges(target, lower, upper, y, e, stage);
  }
  auto holders = rev_[static_cast<std::size_t>(low)][y];
  std::sort(holders.begin(), holders.end());
  holders.erase(std::unique(holders.begin(), holders.end()), holders.end());
  for (VertexId v : holders) {
    for (const ImprovingEntry& e : *lower.history(v)) {
      if (e.pivot == y) emit_connector_edges(target, lower, upper, v, e, stage);
    }
  }
}

void EdgeGenerator::emit_projected_edge(int target, const ChainView& upper, const BaseRef& ref,
                                        const std::vector<LevelPivots>& levels, Stage stage) {
  const Edge& e = levels.at(static_cast<std::size_t>(ref.level - 1)).graph().edge(ref.edge);
  const VertexId px = upper.pivot(e.u);
  const VertexId py = upper.pivot(e.v);
  if (px == kNoVertex || py == kNoVertex) return;
  push({target, px, py, upper.mpd(e.u) + ceil_pow2(e.weight) + upper.mpd(e.v), EdgeKind::Projected,
        Provenance{kNoVertex, stage, ref.level, static_cast<std::int64_t>(ref.edge)}});
}

void EdgeGenerator::emit_projections_for_event(int target, const ChainView& upper, VertexId y,
                                               const std::vector<LevelPivots>& levels, Stage stage) {
  for (const BaseRef& ref : incident_.at(y)) {
    if (ref.level < target) emit_projected_edge(target, upper, ref, levels, stage);
  }
}

std::uint64_t EdgeGenerator::inserted(int level, EdgeKind kind) const {
  return inserted_.at(static_cast<std::size_t>(level))[static_cast<std::size_t>(kind)];
}

std::uint64_t EdgeGenerator::emitted(int level, EdgeKind kind) const {
  return emitted_.at(static_cast<std::size_t>(level))[static_cast<std::size_t>(kind)];
}

}  // namespace hierdist
