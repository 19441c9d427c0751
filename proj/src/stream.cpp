#include "hierdist/stream.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <random>
#include <sstream>

namespace hierdist {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::uint64_t to_uint(const std::string& tok, std::size_t line, const char* what) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw ParseError(line, std::string("expected a nonnegative integer for ") + what + ", got '" + tok + "'");
  }
  try {
    return std::stoull(tok);
  } catch (const std::exception&) {
    throw ParseError(line, std::string(what) + " out of range");
  }
}

}  // namespace

UpdateStream parse_stream(std::istream& in) {
  UpdateStream s;
  bool have_header = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto tok = split(line);
    if (tok.empty()) continue;
    if (!have_header) {
      std::size_t at = 0;
      if (tok[0] == "graph") at = 1;
      if (tok.size() != at + 2) throw ParseError(lineno, "expected header 'graph <n> <W>'");
      s.n = to_uint(tok[at], lineno, "n");
      const auto w = to_uint(tok[at + 1], lineno, "W");
      if (s.n == 0) throw ParseError(lineno, "n must be positive");
      if (w == 0 || w > (std::uint64_t{1} << 40)) throw ParseError(lineno, "W must lie in [1, 2^40]");
      s.max_weight = static_cast<Weight>(w);
      have_header = true;
      continue;
    }
    auto vertex = [&](const std::string& t) {
      const auto x = to_uint(t, lineno, "vertex");
      if (x >= s.n) throw ParseError(lineno, "vertex " + t + " outside [0, n)");
      return static_cast<VertexId>(x);
    };
    if (tok[0] == "insert") {
      if (tok.size() != 4) throw ParseError(lineno, "expected 'insert <u> <v> <w>'");
      const auto w = to_uint(tok[3], lineno, "weight");
      if (w < 1 || w > static_cast<std::uint64_t>(s.max_weight)) throw ParseError(lineno, "weight outside [1, W]");
      s.records.push_back(InsertRecord{vertex(tok[1]), vertex(tok[2]), static_cast<Weight>(w)});
    } else if (tok[0] == "query") {
      if (tok.size() != 3) throw ParseError(lineno, "expected 'query <u> <v>'");
      s.records.push_back(QueryRecord{vertex(tok[1]), vertex(tok[2])});
    } else if (tok[0] == "check") {
      if (tok.size() != 1) throw ParseError(lineno, "'check' takes no arguments");
      s.records.push_back(CheckRecord{});
    } else {
      throw ParseError(lineno, "unknown record '" + tok[0] + "'");
    }
  }
  return s;
}

UpdateStream parse_stream_text(const std::string& text) {
  std::istringstream is(text);
  return parse_stream(is);
}

std::string serialize_stream(const UpdateStream& s) {
  std::ostringstream os;
  if (s.n == 0 && s.records.empty()) return {};
  os << "graph " << s.n << ' ' << s.max_weight << '\n';
  for (const auto& rec : s.records) {
    if (const auto* ins = std::get_if<InsertRecord>(&rec)) {
      os << "insert " << ins->u << ' ' << ins->v << ' ' << ins->w << '\n';
    } else if (const auto* q = std::get_if<QueryRecord>(&rec)) {
      os << "query " << q->u << ' ' << q->v << '\n';
    } else {
      os << "check\n";
    }
  }
  return os.str();
}

GeneratorKind parse_generator_kind(const std::string& name) {
  if (name == "random-incremental" || name == "random") return GeneratorKind::RandomIncremental;
  if (name == "path") return GeneratorKind::Path;
  if (name == "grid") return GeneratorKind::Grid;
  if (name == "preferential") return GeneratorKind::Preferential;
  throw std::invalid_argument("unknown generator kind '" + name + "'");
}

UpdateStream generate_stream(const GenerateOptions& o) {
  if (o.n == 0) throw std::invalid_argument("generator needs n >= 1");
  if (o.max_weight < 1) throw std::invalid_argument("generator needs W >= 1");
  if (o.query_rate < 0.0) throw std::invalid_argument("query rate must be nonnegative");
  const std::size_t pair_count = o.n * (o.n - 1) / 2;
  if (o.m > 4 * pair_count && o.kind != GeneratorKind::Path && o.kind != GeneratorKind::Grid) {
    throw std::invalid_argument("m exceeds four times the number of vertex pairs");
  }

  UpdateStream s;
  s.n = o.n;
  s.max_weight = o.max_weight;
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<VertexId> any_vertex(0, static_cast<VertexId>(o.n - 1));
  std::uniform_int_distribution<Weight> any_weight(1, o.max_weight);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  std::vector<InsertRecord> inserts;
  switch (o.kind) {
    case GeneratorKind::RandomIncremental:
      for (std::size_t j = 0; j < o.m; ++j) {
        const VertexId u = any_vertex(rng);
        VertexId v = any_vertex(rng);
        while (v == u) v = any_vertex(rng);
        inserts.push_back({u, v, any_weight(rng)});
      }
      break;
    case GeneratorKind::Path:
      for (VertexId i = 0; i + 1 < o.n; ++i) inserts.push_back({i, i + 1, 1});
      break;
    case GeneratorKind::Grid: {
      const auto rows = static_cast<std::size_t>(std::sqrt(static_cast<double>(o.n)));
      const std::size_t cols = o.n / rows;
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
          const auto id = static_cast<VertexId>(r * cols + c);
          if (c + 1 < cols) inserts.push_back({id, id + 1, any_weight(rng)});
          if (r + 1 < rows) inserts.push_back({id, static_cast<VertexId>(id + cols), any_weight(rng)});
        }
      }
      std::shuffle(inserts.begin(), inserts.end(), rng);
      break;
    }
    case GeneratorKind::Preferential: {
      // endpoints of earlier edges, so a uniform pick is degree-proportional
      std::vector<VertexId> ends;
      for (VertexId t = 1; t < o.n && inserts.size() < o.m; ++t) {
        VertexId target = 0;
        if (!ends.empty() && coin(rng) < 0.75) {
          target = ends[std::uniform_int_distribution<std::size_t>(0, ends.size() - 1)(rng)];
          if (target >= t) target = 0;
        } else {
          target = std::uniform_int_distribution<VertexId>(0, t - 1)(rng);
        }
        inserts.push_back({t, target, any_weight(rng)});
        ends.push_back(t);
        ends.push_back(target);
      }
      while (inserts.size() < o.m) {
        const VertexId u = any_vertex(rng);
        VertexId v = ends.empty() ? any_vertex(rng) : ends[std::uniform_int_distribution<std::size_t>(0, ends.size() - 1)(rng)];
        if (v == u) continue;
        inserts.push_back({u, v, any_weight(rng)});
        ends.push_back(u);
        ends.push_back(v);
      }
      break;
    }
  }

  const auto whole = static_cast<std::size_t>(o.query_rate);
  const double extra = o.query_rate - static_cast<double>(whole);
  for (const auto& ins : inserts) {
    s.records.push_back(ins);
    std::size_t count = whole;
    if (extra > 0.0 && coin(rng) < extra) ++count;
    for (std::size_t j = 0; j < count; ++j) s.records.push_back(QueryRecord{any_vertex(rng), any_vertex(rng)});
  }
  return s;
}

}  // namespace hierdist
