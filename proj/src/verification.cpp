#include "hierdist/verification.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <sstream>
#include <stdexcept>

#include "hierdist/params.hpp"

namespace hierdist {

namespace {

using HeapItem = std::pair<Weight, VertexId>;
using MinHeap = std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>>;

template <typename... Parts>
std::string cat(const Parts&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

void fail(InvariantResult& r, const std::string& witness) {
  if (r.passed) r.witness = witness;
  r.passed = false;
}

std::vector<std::pair<VertexId, VertexId>> all_pairs(std::size_t n) {
  std::vector<std::pair<VertexId, VertexId>> out;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u; v < n; ++v) out.emplace_back(u, v);
  }
  return out;
}

}  // namespace

std::vector<Weight> dijkstra(const IncrementalMultigraph& g, std::span<const VertexId> sources, bool rounded,
                             Weight limit) {
  std::vector<Weight> dist(g.capacity(), kInfinite);
  MinHeap heap;
  for (VertexId s : sources) {
    if (!g.has_vertex(s)) continue;
    dist[s] = 0;
    heap.emplace(0, s);
  }
  while (!heap.empty()) {
    auto [d, x] = heap.top();
    heap.pop();
    if (d != dist[x]) continue;
    for (std::uint32_t id : g.adjacency(x)) {
      const Edge& e = g.edge(id);
      const VertexId y = e.u == x ? e.v : e.u;
      const Weight nd = d + (rounded ? ceil_pow2(e.weight) : e.weight);
      if (nd <= limit && nd < dist[y]) {
        dist[y] = nd;
        heap.emplace(nd, y);
      }
    }
  }
  return dist;
}

std::optional<Weight> brute_force_dist(const IncrementalMultigraph& g, VertexId u, VertexId v) {
  if (!g.has_vertex(u) || !g.has_vertex(v)) throw std::invalid_argument("unknown vertex");
  const VertexId src[] = {u};
  const Weight d = dijkstra(g, src)[v];
  if (d >= kInfinite) return std::nullopt;
  return d;
}

LevelSnapshot materialize_level(const DistanceOracle& oracle, int level) {
  const IncrementalMultigraph& h = oracle.level(level).graph();
  LevelSnapshot snap{IncrementalMultigraph(h.capacity()), IncrementalMultigraph(h.capacity())};
  for (VertexId v : h.vertices()) {
    snap.graph.add_vertex(v);
    snap.rounded.add_vertex(v);
  }
  for (const Edge& e : h.edges()) {
    snap.graph.insert_edge(e.u, e.v, e.weight);
    snap.rounded.insert_edge(e.u, e.v, ceil_pow2(e.weight));
  }
  return snap;
}

IncrementalApsp::IncrementalApsp(std::size_t n) : n_(n), d_(n * n, kInfinite) {
  for (std::size_t i = 0; i < n; ++i) d_[i * n + i] = 0;
}

void IncrementalApsp::insert_edge(VertexId u, VertexId v, Weight w) {
  if (u >= n_ || v >= n_) throw std::invalid_argument("unknown vertex");
  if (w >= d_[u * n_ + v]) return;
  std::vector<Weight> du(d_.begin() + static_cast<std::ptrdiff_t>(u * n_),
                         d_.begin() + static_cast<std::ptrdiff_t>((u + 1) * n_));
  std::vector<Weight> dv(d_.begin() + static_cast<std::ptrdiff_t>(v * n_),
                         d_.begin() + static_cast<std::ptrdiff_t>((v + 1) * n_));
  for (std::size_t x = 0; x < n_; ++x) {
    const Weight xu = du[x];
    const Weight xv = dv[x];
    if (xu >= kInfinite && xv >= kInfinite) continue;
    Weight* row = &d_[x * n_];
    for (std::size_t y = 0; y < n_; ++y) {
      const Weight via = std::min(xu + w + dv[y], xv + w + du[y]);
      if (via < row[y]) row[y] = via;
    }
  }
}

bool InvariantReport::passed() const {
  return std::all_of(results.begin(), results.end(), [](const InvariantResult& r) { return r.passed; });
}

const InvariantResult* InvariantReport::find(const std::string& name) const {
  for (const auto& r : results) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

std::string InvariantReport::to_text() const {
  std::ostringstream os;
  for (const auto& r : results) {
    os << "CHECK " << (r.passed ? "PASS " : "FAIL ") << r.name << " checked=" << r.checked;
    if (!r.passed) os << " witness: " << r.witness;
    os << '\n';
  }
  return os.str();
}

InvariantResult check_edge_lower_bound(const DistanceOracle& oracle, const IncrementalApsp* apsp) {
  InvariantResult r{"lower_bound", true, 0, {}};
  const IncrementalMultigraph& g = oracle.level(1).graph();
  std::map<VertexId, std::vector<Weight>> cache;
  auto dist_g = [&](VertexId a, VertexId b) -> Weight {
    if (apsp) return apsp->dist(a, b);
    auto it = cache.find(a);
    if (it == cache.end()) {
      const VertexId src[] = {a};
      it = cache.emplace(a, dijkstra(g, src)).first;
    }
    return it->second[b];
  };
  for (int i = 2; i <= oracle.k(); ++i) {
    for (const Edge& e : oracle.level(i).graph().edges()) {
      ++r.checked;
      const Weight d = dist_g(e.u, e.v);
      if (e.weight < d) {
        fail(r, cat("level ", i, " edge (", e.u, ",", e.v, ") weight ", e.weight, " < dist_G ",
                    d >= kInfinite ? std::string("inf") : std::to_string(d)));
      }
    }
  }
  return r;
}

InvariantResult check_sandwich(const DistanceOracle& oracle) {
  InvariantResult r{"sandwich", true, 0, {}};
  for (int i = 1; i < oracle.k(); ++i) {
    const LevelPivots& lp = oracle.level(i);
    const IncrementalMultigraph& h = lp.graph();
    const auto reps = oracle.level(i + 1).graph().vertices();
    const std::vector<Weight> near = dijkstra(h, reps);
    std::map<VertexId, std::vector<Weight>> from_pivot;
    for (VertexId v : h.vertices()) {
      ++r.checked;
      const VertexId p = lp.pivot(v);
      const Weight pd = lp.pivot_dist(v);
      Weight dp = kInfinite;
      if (p != kNoVertex) {
        if (!oracle.level(i + 1).contains(p)) {
          fail(r, cat("level ", i, " vertex ", v, " pivot ", p, " is not a next-level vertex"));
          continue;
        }
        auto it = from_pivot.find(p);
        if (it == from_pivot.end()) {
          const VertexId src[] = {p};
          it = from_pivot.emplace(p, dijkstra(h, src)).first;
        }
        dp = it->second[v];
      }
      const bool ok = near[v] <= dp && dp <= pd && (near[v] >= kInfinite || pd <= 4 * near[v]);
      if (!ok) {
        fail(r, cat("level ", i, " vertex ", v, ": nearest ", near[v], ", to pivot ", dp, ", estimate ", pd));
      }
    }
  }
  return r;
}

InvariantResult check_level_sizes(const DistanceOracle& oracle) {
  InvariantResult r{"level_size", true, 0, {}};
  for (int i = 1; i < oracle.k(); ++i) {
    ++r.checked;
    const double upper = static_cast<double>(oracle.level(i).graph().num_vertices());
    const double lower = static_cast<double>(oracle.level(i + 1).graph().num_vertices());
    const double b = oracle.params().at(i).b;
    if (lower * b > upper) {
      fail(r, cat("|V(H_", i + 1, ")| = ", lower, " exceeds |V(H_", i, ")|/b = ", upper / b));
    }
  }
  return r;
}

InvariantResult check_ball_dicts(const DistanceOracle& oracle, std::size_t stride) {
  InvariantResult r{"ball_dict", true, 0, {}};
  stride = std::max<std::size_t>(stride, 1);
  for (int i = 1; i <= oracle.k(); ++i) {
    const LevelPivots& lp = oracle.level(i);
    const auto verts = lp.graph().vertices();
    for (std::size_t idx = 0; idx < verts.size(); idx += stride) {
      const VertexId v = verts[idx];
      ++r.checked;
      const Weight pd = lp.pivot_dist(v);
      const Weight radius = pd >= kInfinite ? kInfinite : pd / 4;
      const VertexId src[] = {v};
      const std::vector<Weight> d = dijkstra(lp.graph(), src, true, radius);
      BallDict expect;
      for (VertexId u : verts) {
        if (d[u] < kInfinite) expect.emplace_back(u, d[u]);
      }
      std::sort(expect.begin(), expect.end());
      if (expect != lp.ball(v)) {
        fail(r, cat("level ", i, " vertex ", v, ": stored ball has ", lp.ball(v).size(), " entries, exact ball ",
                    expect.size()));
      } else if (expect.size() >= lp.bhat()) {
        fail(r, cat("level ", i, " vertex ", v, ": ball of ", expect.size(), " reaches bhat ", lp.bhat()));
      }
    }
  }
  return r;
}

InvariantResult check_level_domination(const DistanceOracle& oracle, double ceiling, double* max_ratio,
                                       std::size_t stride) {
  InvariantResult r{"level_domination", true, 0, {}};
  stride = std::max<std::size_t>(stride, 1);
  const IncrementalMultigraph& g = oracle.level(1).graph();
  for (int i = 1; i < oracle.k(); ++i) {
    const IncrementalMultigraph& low = oracle.level(i).graph();
    const IncrementalMultigraph& high = oracle.level(i + 1).graph();
    const auto reps = high.vertices();
    for (std::size_t idx = 0; idx < reps.size(); idx += stride) {
      const VertexId s = reps[idx];
      const VertexId src[] = {s};
      const auto dg = dijkstra(g, src);
      const auto dl = dijkstra(low, src);
      const auto dh = dijkstra(high, src);
      for (VertexId t : reps) {
        if (t == s) continue;
        ++r.checked;
        if (dh[t] < dg[t]) fail(r, cat("level ", i + 1, " pair (", s, ",", t, "): ", dh[t], " < dist_G ", dg[t]));
        if (dl[t] >= kInfinite) continue;
        if (dh[t] >= kInfinite) {
          fail(r, cat("level ", i + 1, " pair (", s, ",", t, ") disconnected but connected below"));
          continue;
        }
        const double ratio = static_cast<double>(dh[t]) / static_cast<double>(dl[t]);
        if (max_ratio) *max_ratio = std::max(*max_ratio, ratio);
        if (ratio > ceiling) {
          fail(r, cat("level ", i + 1, " pair (", s, ",", t, "): ratio ", ratio, " above ", ceiling));
        }
      }
    }
  }
  return r;
}

std::vector<InvariantResult> check_queries(const DistanceOracle& oracle,
                                           std::span<const std::pair<VertexId, VertexId>> pairs,
                                           double* max_stretch, bool per_level_bound) {
  InvariantResult sound{"soundness", true, 0, {}};
  InvariantResult ceil{"stretch_ceiling", true, 0, {}};
  InvariantResult depth{"loop_depth", true, 0, {}};
  InvariantResult exit{"exit_estimate", true, 0, {}};
  const IncrementalMultigraph& g = oracle.level(1).graph();
  const long double ceiling = stretch_ceiling(oracle.k());
  std::map<VertexId, std::vector<Weight>> from_g;
  std::map<std::pair<int, VertexId>, std::vector<Weight>> from_level;
  for (auto [u, v] : pairs) {
    auto it = from_g.find(u);
    if (it == from_g.end()) {
      const VertexId src[] = {u};
      it = from_g.emplace(u, dijkstra(g, src)).first;
    }
    const Weight exact2 = it->second[v];
    const QueryResult q = oracle.query_with_trace(u, v);
    ++sound.checked;
    ++ceil.checked;
    ++depth.checked;
    if (q.levels_used > oracle.k()) fail(depth, cat("query (", u, ",", v, ") used ", q.levels_used, " levels"));
    if (exact2 >= kInfinite) {
      if (q.reachable()) fail(sound, cat("query (", u, ",", v, ") answered ", *q.estimate, " for a disconnected pair"));
      continue;
    }
    if (!q.reachable()) {
      fail(sound, cat("query (", u, ",", v, ") unreachable but dist ", exact2 / 2));
      continue;
    }
    const Weight exact = exact2 / 2;
    if (*q.estimate < exact) fail(sound, cat("query (", u, ",", v, ") = ", *q.estimate, " < exact ", exact));
    if (exact > 0) {
      const long double ratio = static_cast<long double>(*q.estimate) / static_cast<long double>(exact);
      if (max_stretch) *max_stretch = std::max(*max_stretch, static_cast<double>(ratio));
      if (ratio > ceiling) fail(ceil, cat("query (", u, ",", v, ") stretch ", static_cast<double>(ratio)));
    } else if (*q.estimate != 0) {
      fail(ceil, cat("query (", u, ",", u, ") = ", *q.estimate));
    }
    if (per_level_bound && !q.trace.empty()) {
      const TraceStep& last = q.trace.back();
      auto key = std::make_pair(last.level, last.pivot_u);
      auto jt = from_level.find(key);
      if (jt == from_level.end()) {
        const VertexId src[] = {last.pivot_u};
        jt = from_level.emplace(key, dijkstra(oracle.level(last.level).graph(), src)).first;
      }
      ++exit.checked;
      const Weight dl = jt->second[last.pivot_v];
      if (dl >= kInfinite || last.d > 2 * dl || last.d < dl) {
        fail(exit, cat("query (", u, ",", v, ") exits at level ", last.level, " with ", last.d, " vs level dist ", dl));
      }
    }
  }
  std::vector<InvariantResult> out{sound, ceil, depth};
  if (per_level_bound) out.push_back(exit);
  return out;
}

InvariantReport run_invariant_suite(const DistanceOracle& oracle, CheckDepth depth, std::uint64_t seed) {
  InvariantReport report;
  const std::size_t n = oracle.num_vertices();
  const bool full = depth == CheckDepth::Full;
  const std::size_t stride = full ? 1 : std::max<std::size_t>(1, n / 64);
  report.results.push_back(check_edge_lower_bound(oracle));
  report.results.push_back(check_sandwich(oracle));
  report.results.push_back(check_level_sizes(oracle));
  report.results.push_back(check_ball_dicts(oracle, stride));
  report.results.push_back(check_level_domination(oracle, 7258.0, &report.max_level_ratio, stride));
  std::vector<std::pair<VertexId, VertexId>> pairs;
  if (full) {
    pairs = all_pairs(n);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
    const VertexId sources = static_cast<VertexId>(std::min<std::size_t>(n, 16));
    for (std::size_t j = 0; j < 4 * n; ++j) {
      // few distinct sources keep the reference Dijkstra runs cheap
      const VertexId u = static_cast<VertexId>(pick(rng) % sources);
      pairs.emplace_back(u, pick(rng));
    }
  }
  for (auto& res : check_queries(oracle, pairs, &report.max_stretch, full)) report.results.push_back(res);
  return report;
}

StretchStats measure_stretch(const DistanceOracle& oracle, std::size_t sample_pairs, std::uint64_t seed) {
  StretchStats stats;
  const std::size_t n = oracle.num_vertices();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
  const IncrementalMultigraph& g = oracle.level(1).graph();
  std::map<VertexId, std::vector<Weight>> from_g;
  double sum = 0.0;
  for (std::size_t j = 0; j < sample_pairs; ++j) {
    const VertexId u = pick(rng);
    const VertexId v = pick(rng);
    auto it = from_g.find(u);
    if (it == from_g.end()) {
      const VertexId src[] = {u};
      it = from_g.emplace(u, dijkstra(g, src)).first;
    }
    const Weight exact2 = it->second[v];
    if (u == v || exact2 >= kInfinite) continue;
    const QueryResult q = oracle.query(u, v);
    const double ratio = static_cast<double>(*q.estimate) / static_cast<double>(exact2 / 2);
    stats.max_stretch = stats.pairs == 0 ? ratio : std::max(stats.max_stretch, ratio);
    sum += ratio;
    ++stats.pairs;
  }
  if (stats.pairs > 0) stats.mean_stretch = sum / static_cast<double>(stats.pairs);
  return stats;
}

ShadowHistory::ShadowHistory(const DistanceOracle& oracle)
    : samples_(static_cast<std::size_t>(oracle.k() + 1),
               std::vector<std::vector<Sample>>(oracle.num_vertices())),
      expected_(static_cast<std::size_t>(oracle.k() + 1), std::vector<Expected>(oracle.num_vertices())) {
  record(oracle);
}

void ShadowHistory::record(const DistanceOracle& oracle) {
  const std::size_t n = oracle.num_vertices();
  for (int level = 2; level <= oracle.k(); ++level) {
    for (VertexId v = 0; v < n; ++v) {
      Weight cpd = 0;
      VertexId a = v;
      for (int j = 1; j < level; ++j) {
        const LevelPivots& lp = oracle.level(j);
        const VertexId p = lp.contains(a) ? lp.pivot(a) : kNoVertex;
        if (p == kNoVertex) {
          a = kNoVertex;
          break;
        }
        cpd += lp.pivot_dist(a);
        a = p;
      }
      auto& hist = samples_[static_cast<std::size_t>(level)][v];
      hist.push_back(a == kNoVertex ? Sample{kInfinite, kNoVertex} : Sample{cpd, a});
      Expected& e = expected_[static_cast<std::size_t>(level)][v];
      e.lowest = std::min(e.lowest, hist.back().cpd);
      e.mpd = e.lowest >= kInfinite ? kInfinite : ceil_pow2(e.lowest);
      // the threshold only falls, so the earliest qualifying stage only moves forward
      while (e.mpd < kInfinite && hist[e.first].cpd > e.mpd) ++e.first;
    }
  }
  ++stages_;
}

std::vector<std::string> ShadowHistory::compare(const DistanceOracle& oracle) const {
  std::vector<std::string> issues;
  auto id = [](VertexId x) { return x == kNoVertex ? std::int64_t{-1} : static_cast<std::int64_t>(x); };
  for (int level = 2; level <= oracle.k(); ++level) {
    const HierarchyForest& f = oracle.forest(level - 1);
    for (VertexId v = 0; v < oracle.num_vertices(); ++v) {
      const auto& hist = samples_[static_cast<std::size_t>(level)][v];
      const Expected& e = expected_[static_cast<std::size_t>(level)][v];
      const VertexId lip = e.mpd < kInfinite ? hist[e.first].pivot : kNoVertex;
      const Weight cpd_now = hist.back().cpd;
      if (f.mpd(v) != e.mpd || f.last_improving_pivot(v) != lip || f.cumulative(v) != cpd_now) {
        issues.push_back(cat("level ", level, " vertex ", v, ": live mpd ", f.mpd(v), " pivot ",
                             id(f.last_improving_pivot(v)), " cumulative ", f.cumulative(v), "; shadow mpd ", e.mpd,
                             " pivot ", id(lip), " cumulative ", cpd_now));
      }
    }
  }
  return issues;
}

}  // namespace hierdist
