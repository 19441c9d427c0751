#include "hierdist/cli.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "hierdist/metrics.hpp"
#include "hierdist/oracle.hpp"

namespace hierdist {

namespace {

std::shared_ptr<spdlog::logger> logger() {
  static std::shared_ptr<spdlog::logger> log = [] {
    auto l = spdlog::stderr_color_mt("hierdist");
    l->set_level(spdlog::level::warn);
    if (const char* env = std::getenv("ORACLE_LOG")) l->set_level(spdlog::level::from_str(env));
    return l;
  }();
  return log;
}

void write_metrics(const RunOptions& options, const std::string& json) {
  if (!options.metrics_path) return;
  std::ofstream f(*options.metrics_path);
  if (!f) {
    logger()->error("cannot write metrics to {}", *options.metrics_path);
    return;
  }
  f << json << '\n';
}

}  // namespace

int run_stream(std::istream& in, const RunOptions& options, std::ostream& out, std::ostream& err) {
  UpdateStream stream;
  try {
    stream = parse_stream(in);
  } catch (const ParseError& e) {
    err << "parse error at " << e.what() << '\n';
    return kExitParseError;
  }
  if (stream.n == 0) {
    write_metrics(options, metrics_json(MetricsSnapshot{}));
    return kExitOk;
  }
  logger()->info("stream: n={} W={} records={}", stream.n, stream.max_weight, stream.records.size());

  DistanceOracle oracle(stream.n, stream.max_weight);
  std::uint64_t queries = 0;
  bool failed = false;
  for (const auto& rec : stream.records) {
    if (const auto* ins = std::get_if<InsertRecord>(&rec)) {
      oracle.insert_edge(ins->u, ins->v, ins->w);
      logger()->debug("stage {}: insert {} {} {}", oracle.stage(), ins->u, ins->v, ins->w);
    } else if (const auto* q = std::get_if<QueryRecord>(&rec)) {
      ++queries;
      const QueryResult res = oracle.query(q->u, q->v);
      if (res.reachable()) {
        out << "QUERY " << q->u << ' ' << q->v << ' ' << *res.estimate << '\n';
      } else {
        out << "UNREACHABLE\n";
      }
    } else {
      const InvariantReport report = run_invariant_suite(oracle, options.depth, options.seed);
      out << "CHECK stage=" << oracle.stage() << ' ' << (report.passed() ? "PASS" : "FAIL") << '\n';
      out << report.to_text();
      if (!report.passed()) {
        failed = true;
        logger()->warn("invariant failure at stage {}", oracle.stage());
      }
    }
  }
  const StretchStats stretch = measure_stretch(oracle, options.stretch_samples, options.seed);
  write_metrics(options, metrics_json(collect_metrics(oracle, queries, stretch)));
  return (failed && options.strict) ? kExitInvariantFailure : kExitOk;
}

int run_stream_file(const std::string& path, const RunOptions& options, std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "parse error at line 0: cannot open " << path << '\n';
    return kExitParseError;
  }
  return run_stream(in, options, out, err);
}

void run_bench(const BenchOptions& options, std::ostream& csv) {
  csv << "m,n,rep,k,top_level_vertices,total_edges,total_update_s,amortized_update_us,"
         "query_p50_ns,query_p90_ns,query_p99_ns\n";
  for (std::size_t m : options.sizes) {
    const std::size_t n = std::max<std::size_t>(16, m / std::max<std::size_t>(1, options.edges_per_vertex));
    for (int rep = 0; rep < options.repetitions; ++rep) {
      GenerateOptions g;
      g.n = n;
      g.m = m;
      g.max_weight = options.max_weight;
      g.seed = options.seed + static_cast<std::uint64_t>(rep);
      const UpdateStream s = generate_stream(g);
      DistanceOracle oracle(n, options.max_weight);
      for (const auto& rec : s.records) {
        const auto& ins = std::get<InsertRecord>(rec);
        oracle.insert_edge(ins.u, ins.v, ins.w);
      }
      std::mt19937_64 rng(g.seed);
      std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
      std::vector<double> lat;
      volatile std::uint64_t sink = 0;
      for (std::size_t j = 0; j < options.query_samples; ++j) {
        const VertexId u = pick(rng);
        const VertexId v = pick(rng);
        const auto t0 = std::chrono::steady_clock::now();
        const QueryResult r = oracle.query(u, v);
        const auto t1 = std::chrono::steady_clock::now();
        sink = sink + static_cast<std::uint64_t>(r.levels_used);
        lat.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count());
      }
      std::sort(lat.begin(), lat.end());
      auto pct = [&](double p) {
        if (lat.empty()) return 0.0;
        return lat[std::min(lat.size() - 1, static_cast<std::size_t>(p * static_cast<double>(lat.size())))];
      };
      std::size_t edges = 0;
      for (int i = 1; i <= oracle.k(); ++i) edges += oracle.level(i).graph().num_edges();
      const double secs = std::chrono::duration<double>(oracle.update_time()).count();
      csv << m << ',' << n << ',' << rep << ',' << oracle.k() << ','
          << oracle.level(oracle.k()).graph().num_vertices() << ',' << edges << ',' << secs << ','
          << secs * 1e6 / static_cast<double>(std::max<std::size_t>(m, 1)) << ',' << pct(0.5) << ','
          << pct(0.9) << ',' << pct(0.99) << '\n';
      csv.flush();
    }
  }
}

int cli_main(int argc, char** argv) {
  CLI::App app{"Incremental distance oracle over a vertex-sparsifier hierarchy"};
  app.require_subcommand(1);

  RunOptions run;
  std::string stream_path;
  std::string depth = "cheap";
  std::uint64_t seed = 1;
  auto* run_cmd = app.add_subcommand("run", "Apply a stream file and answer its queries");
  run_cmd->add_option("stream", stream_path, "Stream file")->required();
  run_cmd->add_flag("--strict", run.strict, "Exit with code 3 when a check fails");
  run_cmd->add_option("--check-depth", depth, "cheap or full")->check(CLI::IsMember({"cheap", "full"}));
  run_cmd->add_option("--metrics", run.metrics_path, "Write final metrics JSON here");
  run_cmd->add_option("--seed", seed, "Seed for sampled checks");

  GenerateOptions gen;
  std::string kind = "random-incremental";
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic stream");
  gen_cmd->add_option("--kind", kind, "random-incremental, path, grid or preferential");
  gen_cmd->add_option("--n", gen.n, "Vertex count")->required();
  gen_cmd->add_option("--m", gen.m, "Insert count");
  gen_cmd->add_option("--W", gen.max_weight, "Maximum weight");
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_option("--query-rate", gen.query_rate, "Queries emitted per insert");
  gen_cmd->add_option("-o,--output", gen_out, "Output file (default stdout)");

  BenchOptions bench;
  std::string bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "Time random streams of several sizes, CSV output");
  bench_cmd->add_option("--sizes", bench.sizes, "Edge counts")->delimiter(',')->required();
  bench_cmd->add_option("--repetitions", bench.repetitions, "Runs per size");
  bench_cmd->add_option("--seed", bench.seed, "Base seed");
  bench_cmd->add_option("--W", bench.max_weight, "Maximum weight");
  bench_cmd->add_option("--edges-per-vertex", bench.edges_per_vertex, "m / n ratio");
  bench_cmd->add_option("-o,--output", bench_out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParseError;
  }

  try {
    if (*run_cmd) {
      run.depth = depth == "full" ? CheckDepth::Full : CheckDepth::Cheap;
      run.seed = seed;
      return run_stream_file(stream_path, run, std::cout, std::cerr);
    }
    if (*gen_cmd) {
      gen.kind = parse_generator_kind(kind);
      const std::string text = serialize_stream(generate_stream(gen));
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream(gen_out) << text;
      }
      return kExitOk;
    }
    if (*bench_cmd) {
      if (bench_out.empty()) {
        run_bench(bench, std::cout);
      } else {
        std::ofstream f(bench_out);
        run_bench(bench, f);
      }
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParseError;
  }
  return kExitOk;
}

}  // namespace hierdist
