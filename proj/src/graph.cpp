#include "mkcs/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "mkcs/rng.hpp"

namespace mkcs {

bool Graph::has_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

Graph make_graph(int n, std::vector<std::pair<int, int>> edges) {
  if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
  for (auto& [i, j] : edges) {
    if (i == j) throw std::invalid_argument("self-loop");
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= n) throw std::invalid_argument("vertex out of range");
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("duplicate edge");
  return Graph{n, std::move(edges)};
}

Graph er_generate(int n, double p, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must be in [0,1]");
  std::mt19937_64 gen(seed);
  Graph g;
  g.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (uniform01(gen) < p) g.edges.emplace_back(i, j);
  return g;
}

Graph clique_counterexample(int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  Graph g;
  g.n = k + 1;
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j) g.edges.emplace_back(i, j);
  return g;
}

Graph pendant_counterexample(int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  Graph g;
  g.n = k + 2;
  for (int i = 0; i < k + 1; ++i)
    for (int j = i + 1; j < k + 1; ++j) g.edges.emplace_back(i, j);
  g.edges.emplace_back(k, k + 1);  // (k+1, k+2) in 1-based labels
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

namespace {

[[noreturn]] void parse_fail(GraphParseErrorKind kind, int line_no,
                             const std::string& msg) {
  std::ostringstream os;
  os << "graph parse error at line " << line_no << ": " << msg;
  throw GraphParseError(kind, os.str());
}

}  // namespace

Graph read_graph(std::istream& in) {
  std::string line;
  int line_no = 0;
  int n = -1, declared_m = -1;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "p") {
      std::string fmt;
      if (!(ls >> fmt >> n >> declared_m) || fmt != "edge" || n < 1)
        parse_fail(GraphParseErrorKind::malformed_line, line_no,
                   "expected 'p edge <n> <m>'");
    } else if (tag == "e") {
      int i, j;
      if (!(ls >> i >> j))
        parse_fail(GraphParseErrorKind::malformed_line, line_no,
                   "expected 'e <i> <j>'");
      if (n < 0)
        parse_fail(GraphParseErrorKind::malformed_line, line_no,
                   "edge before 'p' header");
      if (i == j)
        parse_fail(GraphParseErrorKind::self_loop, line_no,
                   "self-loop on vertex " + std::to_string(i));
      if (i < 1 || i > n || j < 1 || j > n)
        parse_fail(GraphParseErrorKind::vertex_out_of_range, line_no,
                   "vertex outside 1.." + std::to_string(n));
      if (i > j) std::swap(i, j);
      edges.emplace_back(i - 1, j - 1);
    } else {
      parse_fail(GraphParseErrorKind::malformed_line, line_no,
                 "unknown line tag '" + tag + "'");
    }
  }
  if (n < 0)
    throw GraphParseError(GraphParseErrorKind::malformed_line,
                          "graph parse error: missing 'p edge' header");
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end())
    throw GraphParseError(
        GraphParseErrorKind::duplicate_edge,
        "graph parse error: duplicate edge (" + std::to_string(dup->first + 1) +
            "," + std::to_string(dup->second + 1) + ")");
  return Graph{n, std::move(edges)};
}

Graph read_graph_string(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in);
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  return read_graph(in);
}

void write_graph(const Graph& g, std::ostream& out) {
  out << "p edge " << g.n << " " << g.edges.size() << "\n";
  for (auto [i, j] : g.edges) out << "e " << i + 1 << " " << j + 1 << "\n";
}

std::string write_graph_string(const Graph& g) {
  std::ostringstream os;
  write_graph(g, os);
  return os.str();
}

void write_graph_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  write_graph(g, out);
}

}  // namespace mkcs
