#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hierdist/stream.hpp"
#include "hierdist/verification.hpp"

namespace hierdist {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitInvariantFailure = 3;

struct RunOptions {
  bool strict = false;
  CheckDepth depth = CheckDepth::Cheap;
  std::optional<std::string> metrics_path;
  std::uint64_t seed = 1;
  std::size_t stretch_samples = 256;
};

int run_stream(std::istream& in, const RunOptions& options, std::ostream& out, std::ostream& err);
int run_stream_file(const std::string& path, const RunOptions& options, std::ostream& out, std::ostream& err);

struct BenchOptions {
  std::vector<std::size_t> sizes;  // edge counts m
  int repetitions = 1;
  std::uint64_t seed = 1;
  Weight max_weight = 1024;
  std::size_t edges_per_vertex = 8;
  std::size_t query_samples = 1000;
};

// Writes one CSV row per (size, repetition) after a header row.
void run_bench(const BenchOptions& options, std::ostream& csv);

int cli_main(int argc, char** argv);

}  // namespace hierdist
