#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hierdist/core_graph.hpp"
#include "hierdist/oracle.hpp"

namespace hierdist {

// Exact single-pair distance; empty when v is not reachable from u.
std::optional<Weight> brute_force_dist(const IncrementalMultigraph& g, VertexId u, VertexId v);

// Dense distance vector indexed by vertex id (kInfinite when unreachable or absent).
// Vertices farther than `limit` are left at kInfinite.
std::vector<Weight> dijkstra(const IncrementalMultigraph& g, std::span<const VertexId> sources,
                             bool rounded = false, Weight limit = kInfinite);

struct LevelSnapshot {
  IncrementalMultigraph graph;    // H_i
  IncrementalMultigraph rounded;  // H_i with every weight rounded up to a power of two
};

LevelSnapshot materialize_level(const DistanceOracle& oracle, int level);

// All-pairs distances kept current under insertions, O(n^2) per edge. Units are whatever
// the caller inserts; the invariant checks expect the doubled internal units.
class IncrementalApsp {
 public:
  explicit IncrementalApsp(std::size_t n);
  void insert_edge(VertexId u, VertexId v, Weight w);
  Weight dist(VertexId u, VertexId v) const { return d_[u * n_ + v]; }
  std::size_t size() const { return n_; }

 private:
  std::size_t n_;
  std::vector<Weight> d_;
};

enum class CheckDepth { Cheap, Full };

struct InvariantResult {
  std::string name;
  bool passed = true;
  std::uint64_t checked = 0;
  std::string witness;  // first counterexample
};

struct InvariantReport {
  std::vector<InvariantResult> results;
  double max_level_ratio = 0.0;  // largest dist_{H_{i+1}} / dist_{H_i} seen
  double max_stretch = 1.0;

  bool passed() const;
  const InvariantResult* find(const std::string& name) const;
  std::string to_text() const;
};

// Individual checks, each returning one report entry.
InvariantResult check_edge_lower_bound(const DistanceOracle& oracle, const IncrementalApsp* apsp = nullptr);
InvariantResult check_sandwich(const DistanceOracle& oracle);
InvariantResult check_level_sizes(const DistanceOracle& oracle);
// `stride` > 1 checks every stride-th vertex of each level only.
InvariantResult check_ball_dicts(const DistanceOracle& oracle, std::size_t stride = 1);
InvariantResult check_level_domination(const DistanceOracle& oracle, double ceiling, double* max_ratio,
                                       std::size_t stride = 1);
// Soundness, stretch ceiling, loop depth and (optionally) the per-level exit bound.
std::vector<InvariantResult> check_queries(const DistanceOracle& oracle,
                                           std::span<const std::pair<VertexId, VertexId>> pairs,
                                           double* max_stretch, bool per_level_bound);

InvariantReport run_invariant_suite(const DistanceOracle& oracle, CheckDepth depth, std::uint64_t seed = 1);

struct StretchStats {
  double max_stretch = 1.0;
  double mean_stretch = 1.0;
  std::size_t pairs = 0;
};

StretchStats measure_stretch(const DistanceOracle& oracle, std::size_t sample_pairs, std::uint64_t seed);

/**
 * Stage-by-stage record of every vertex's pivot chain, used to recompute the
 * rounded running minimum and the last improving pivot from first principles.
 */
class ShadowHistory {
 public:
  explicit ShadowHistory(const DistanceOracle& oracle);

  void record(const DistanceOracle& oracle);
  // Mismatches between the live chain state and the recomputation, empty when consistent.
  std::vector<std::string> compare(const DistanceOracle& oracle) const;
  std::size_t stages() const { return stages_; }

 private:
  struct Sample {
    Weight cpd;
    VertexId pivot;
  };
  struct Expected {
    Weight lowest = kInfinite;
    Weight mpd = kInfinite;
    std::size_t first = 0;  // earliest sample with cpd <= mpd
  };
  // samples_[level][v]: one entry per recorded stage, levels 2..k
  std::vector<std::vector<std::vector<Sample>>> samples_;
  std::vector<std::vector<Expected>> expected_;
  std::size_t stages_ = 0;
};

}  // namespace hierdist
