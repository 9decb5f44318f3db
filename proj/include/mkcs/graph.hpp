#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mkcs {

/// Undirected simple graph. Vertices are 0..n-1 internally; the DIMACS
/// reader/writer pair translates to the 1-based external convention.
/// Edges are stored as (i, j) with i < j, sorted, without duplicates.
/// Immutable in practice: nothing in the library mutates a built graph,
/// so values can be shared freely across threads.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  int edge_count() const { return static_cast<int>(edges.size()); }
  bool has_edge(int i, int j) const;
};

/// Builds a graph from an arbitrary edge list: normalizes orientation,
/// sorts, and rejects self-loops, duplicates, and out-of-range endpoints.
Graph make_graph(int n, std::vector<std::pair<int, int>> edges);

/// Erdős–Rényi G(n, p): every candidate edge (i, j), i < j, taken in
/// lexicographic order, is included independently when the next uniform
/// draw from mt19937_64(seed) falls below p. Pure function of its
/// arguments, identical on every platform.
Graph er_generate(int n, double p, std::uint64_t seed);

/// Complete graph on k+1 vertices. With k colors, any coloring of all
/// k+1 vertices must repeat a color on some edge, so alpha_k = k.
Graph clique_counterexample(int k);

/// Clique on vertices 1..k+1 plus a pendant vertex k+2 attached to k+1
/// (1-based description; storage is 0-based). alpha_k = k+1.
Graph pendant_counterexample(int k);

/// Error kinds for the DIMACS edge-list reader.
enum class GraphParseErrorKind {
  malformed_line,
  vertex_out_of_range,
  duplicate_edge,
  self_loop,
};

class GraphParseError : public std::runtime_error {
 public:
  GraphParseError(GraphParseErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  GraphParseErrorKind kind() const { return kind_; }

 private:
  GraphParseErrorKind kind_;
};

/// DIMACS-style edge list:
///   c <comment>
///   p edge <n> <m>
///   e <i> <j>        (1-based endpoints)
/// read_graph(write_graph(g)) == g for every valid graph.
Graph read_graph(std::istream& in);
Graph read_graph_string(const std::string& text);
Graph read_graph_file(const std::string& path);
void write_graph(const Graph& g, std::ostream& out);
std::string write_graph_string(const Graph& g);
void write_graph_file(const Graph& g, const std::string& path);

}  // namespace mkcs
