#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace diffusion {

// Vertices are numbered 1..n throughout the library.
using Vertex = int;

struct Neighbour {
  Vertex vertex;
  int mult;

  bool operator==(const Neighbour&) const = default;
};

// Thrown by the text parsers; line() is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Undirected multigraph on vertices 1..n, stored as sorted adjacency lists
// with per-pair multiplicity. No self-loops.
//
// Trees produced by make_regular_tree also carry the depth of every vertex.
// Depth metadata does not take part in equality or serialization.
class Graph {
 public:
  explicit Graph(int n);

  int vertex_count() const noexcept { return static_cast<int>(adj_.size()); }

  // Adds `mult` parallel edges between u and v (accumulating).
  void add_edge(Vertex u, Vertex v, int mult = 1);

  int multiplicity(Vertex u, Vertex v) const;
  bool adjacent(Vertex u, Vertex v) const { return multiplicity(u, v) > 0; }

  // Neighbours of v in increasing vertex order.
  std::span<const Neighbour> neighbours(Vertex v) const;

  // Degree counting multiplicity.
  int degree(Vertex v) const;
  int max_degree() const;
  int max_multiplicity() const;

  // Number of edges counting multiplicity.
  std::size_t edge_count() const;

  bool is_simple() const;
  bool is_connected() const;

  bool has_depths() const noexcept { return !depth_.empty(); }
  int depth(Vertex v) const;
  const std::vector<int>& depths() const noexcept { return depth_; }
  void set_depths(std::vector<int> depths);

  bool operator==(const Graph& other) const { return adj_ == other.adj_; }

 private:
  void check_vertex(Vertex v) const;

  std::vector<std::vector<Neighbour>> adj_;
  std::vector<int> depth_;
};

Graph make_path(int n);
Graph make_cycle(int n);
Graph make_star(int n);
Graph make_complete(int n);

// Truncation of the infinite d-regular tree at the given radius. The root is
// vertex 1 and has d children; every other internal vertex has d-1 children.
// Vertices are numbered in breadth-first order, children left to right.
Graph make_regular_tree(int d, int radius);

// Number of vertices make_regular_tree(d, radius) produces.
std::int64_t regular_tree_size(int d, int radius);

// Two disjoint copies of G (v and v+n) joined by d - deg(v) parallel edges
// between the copies of each v, where d is the maximum degree of G. The
// result is d-regular counting multiplicity.
Graph double_cover_regularize(const Graph& g);

// Edge list format:
//   first line: n
//   following lines: "u v" with 1 <= u,v <= n, u != v
// Repeated lines accumulate multiplicity; lines starting with '#' are
// comments and blank lines are ignored.
Graph parse_graph(std::string_view text);

// Emits pairs u < v in lexicographic order, one line per unit of
// multiplicity. parse_graph(serialize_graph(g)) == g.
std::string serialize_graph(const Graph& g);

}  // namespace diffusion
