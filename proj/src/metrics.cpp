#include "hierdist/metrics.hpp"

#include <cmath>

#include "json.hpp"

namespace hierdist {

MetricsSnapshot collect_metrics(const DistanceOracle& oracle, std::uint64_t queries, const StretchStats& stretch) {
  MetricsSnapshot m;
  m.n = oracle.num_vertices();
  m.k = oracle.k();
  m.stages = oracle.stage();
  m.update_seconds = std::chrono::duration<double>(oracle.update_time()).count();
  m.queries = queries;
  m.max_stretch = stretch.max_stretch;
  m.mean_stretch = stretch.mean_stretch;
  m.stretch_pairs = stretch.pairs;
  const double lognw = std::log2(static_cast<double>(m.n) * static_cast<double>(2 * oracle.max_input_weight()));
  double bound = static_cast<double>(oracle.level(1).graph().num_edges()) +
                 static_cast<double>(m.k) * static_cast<double>(m.n) * std::pow(lognw, 5);
  for (int i = 1; i <= oracle.k(); ++i) {
    const LevelPivots& lp = oracle.level(i);
    LevelMetrics lm;
    lm.level = i;
    lm.b = oracle.params().at(i).b;
    lm.bhat = lp.bhat();
    lm.vertices = lp.graph().num_vertices();
    lm.edges = lp.graph().num_edges();
    for (std::size_t kind = 0; kind < kEdgeKinds; ++kind) {
      lm.edges_by_kind[kind] = oracle.generator().inserted(i, static_cast<EdgeKind>(kind));
    }
    lm.pivot_changes = lp.pivot_changes();
    lm.mpd_changes = i >= 2 ? oracle.forest(i - 1).mpd_changes() : 0;
    lm.trunc_calls = lp.trunc_calls();
    m.total_edges += lm.edges;
    bound += static_cast<double>(lm.vertices) * lm.b * std::pow(lognw, 4);
    m.levels.push_back(lm);
  }
  m.edge_bound = bound;
  return m;
}

std::string metrics_json(const MetricsSnapshot& m, int indent) {
  nlohmann::json j;
  j["n"] = m.n;
  j["k"] = m.k;
  j["stages"] = m.stages;
  j["update_seconds"] = m.update_seconds;
  j["queries"] = m.queries;
  j["stretch"] = {{"max", m.max_stretch}, {"mean", m.mean_stretch}, {"pairs", m.stretch_pairs}};
  j["total_edges"] = m.total_edges;
  j["edge_bound"] = m.edge_bound;
  j["levels"] = nlohmann::json::array();
  for (const auto& lm : m.levels) {
    nlohmann::json kinds;
    for (std::size_t kind = 0; kind < kEdgeKinds; ++kind) {
      kinds[std::string(to_string(static_cast<EdgeKind>(kind)))] = lm.edges_by_kind[kind];
    }
    j["levels"].push_back({{"level", lm.level},
                           {"b", lm.b},
                           {"bhat", lm.bhat},
                           {"vertices", lm.vertices},
                           {"edges", lm.edges},
                           {"edges_by_kind", kinds},
                           {"pivot_changes", lm.pivot_changes},
                           {"mpd_changes", lm.mpd_changes},
                           {"trunc_dijkstra_calls", lm.trunc_calls}});
  }
  return j.dump(indent);
}

}  // namespace hierdist
