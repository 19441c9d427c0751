#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hierdist/cli.hpp"
#include "json.hpp"

using namespace hierdist;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_text(const std::string& text, RunOptions opts = {}) {
  std::istringstream in(text);
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_stream(in, opts, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("two-vertex stream") {
  const Run r = run_text("2 10\ninsert 0 1 4\nquery 0 1\n");
  CHECK(r.code == kExitOk);
  CHECK(r.out == "QUERY 0 1 4\n");
}

TEST_CASE("query before any insert") {
  const Run r = run_text("graph 2 10\nquery 0 1\n");
  CHECK(r.code == kExitOk);
  CHECK(r.out == "UNREACHABLE\n");
}

TEST_CASE("parse errors exit with 2 and name the line") {
  const Run r = run_text("graph 2 10\ninsert 0 1 4\ninsert 0 9 4\n");
  CHECK(r.code == kExitParseError);
  CHECK(r.err.find("line 3") != std::string::npos);
  CHECK(r.out.empty());
}

TEST_CASE("check records and metrics") {
  const std::string path = "cli_test_metrics.json";
  RunOptions opts;
  opts.metrics_path = path;
  opts.depth = CheckDepth::Full;
  const Run r = run_text("graph 4 10\ninsert 0 1 3\ninsert 1 2 3\nquery 0 2\ncheck\n", opts);
  CHECK(r.code == kExitOk);
  CHECK(r.out.rfind("QUERY 0 2 8\nCHECK stage=2 PASS\n", 0) == 0);
  std::ifstream f(path);
  const auto j = nlohmann::json::parse(f);
  CHECK(j["stages"] == 2);
  CHECK(j["queries"] == 1);
  CHECK(j["levels"].size() == j["k"].get<std::size_t>());
  CHECK(j["levels"][0]["edges_by_kind"]["input"] == 2);
  std::remove(path.c_str());
}

TEST_CASE("empty stream writes empty metrics") {
  const std::string path = "cli_test_empty.json";
  RunOptions opts;
  opts.metrics_path = path;
  const Run r = run_text("", opts);
  CHECK(r.code == kExitOk);
  CHECK(r.out.empty());
  std::ifstream f(path);
  const auto j = nlohmann::json::parse(f);
  CHECK(j["stages"] == 0);
  std::remove(path.c_str());
}

TEST_CASE("command-line entry point") {
  const std::string path = "cli_test_stream.txt";
  std::ofstream(path) << "graph 2 10\ninsert 0 1 4\ncheck\n";
  auto call = [](std::vector<std::string> args) {
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return cli_main(static_cast<int>(argv.size()), argv.data());
  };
  CHECK(call({"hierdist", "run", path, "--strict"}) == kExitOk);
  CHECK(call({"hierdist", "run", "missing_file.txt"}) == kExitParseError);
  CHECK(call({"hierdist", "run", path, "--check-depth", "deep"}) == kExitParseError);
  CHECK(call({"hierdist", "frobnicate"}) == kExitParseError);
  std::remove(path.c_str());
}

TEST_CASE("bench output shape") {
  BenchOptions b;
  b.sizes = {64, 128};
  b.query_samples = 20;
  std::ostringstream csv;
  run_bench(b, csv);
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header.rfind("m,n,rep,k,", 0) == 0);
  std::string row;
  int rows = 0;
  while (std::getline(lines, row)) {
    ++rows;
    CHECK(std::count(row.begin(), row.end(), ',') == std::count(header.begin(), header.end(), ','));
  }
  CHECK(rows == 2);
}
