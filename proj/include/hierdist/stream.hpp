#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hierdist/core_graph.hpp"

namespace hierdist {

struct InsertRecord {
  VertexId u;
  VertexId v;
  Weight w;
  bool operator==(const InsertRecord&) const = default;
};

struct QueryRecord {
  VertexId u;
  VertexId v;
  bool operator==(const QueryRecord&) const = default;
};

struct CheckRecord {
  bool operator==(const CheckRecord&) const = default;
};

using StreamRecord = std::variant<InsertRecord, QueryRecord, CheckRecord>;

struct UpdateStream {
  std::size_t n = 0;
  Weight max_weight = 1;
  std::vector<StreamRecord> records;
  bool operator==(const UpdateStream&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Header is "graph <n> <W>" (the bare "<n> <W>" form is accepted too). A file
// without any records, header included, parses as an empty stream with n = 0.
UpdateStream parse_stream(std::istream& in);
UpdateStream parse_stream_text(const std::string& text);
std::string serialize_stream(const UpdateStream& stream);

enum class GeneratorKind { RandomIncremental, Path, Grid, Preferential };
GeneratorKind parse_generator_kind(const std::string& name);

struct GenerateOptions {
  GeneratorKind kind = GeneratorKind::RandomIncremental;
  std::size_t n = 0;
  std::size_t m = 0;
  Weight max_weight = 1;
  std::uint64_t seed = 1;
  double query_rate = 0.0;  // expected queries emitted after each insert
};

// Deterministic for a given option set. Throws std::invalid_argument on infeasible input.
UpdateStream generate_stream(const GenerateOptions& options);

}  // namespace hierdist
