#include "diffusion/graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "text_util.hpp"

namespace diffusion {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

Graph::Graph(int n) {
  if (n < 1) {
    throw std::invalid_argument("graph needs at least one vertex");
  }
  adj_.resize(static_cast<std::size_t>(n));
}

void Graph::check_vertex(Vertex v) const {
  if (v < 1 || v > vertex_count()) {
    throw std::out_of_range("vertex " + std::to_string(v) + " outside 1.." +
                            std::to_string(vertex_count()));
  }
}

namespace {

void bump(std::vector<Neighbour>& list, Vertex to, int mult) {
  auto it = std::lower_bound(list.begin(), list.end(), to,
                             [](const Neighbour& nb, Vertex v) { return nb.vertex < v; });
  if (it != list.end() && it->vertex == to) {
    it->mult += mult;
  } else {
    list.insert(it, Neighbour{to, mult});
  }
}

}  // namespace

void Graph::add_edge(Vertex u, Vertex v, int mult) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) {
    throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
  }
  if (mult < 0) {
    throw std::invalid_argument("negative multiplicity");
  }
  if (mult == 0) {
    return;
  }
  bump(adj_[u - 1], v, mult);
  bump(adj_[v - 1], u, mult);
}

int Graph::multiplicity(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  const auto& list = adj_[u - 1];
  auto it = std::lower_bound(list.begin(), list.end(), v,
                             [](const Neighbour& nb, Vertex w) { return nb.vertex < w; });
  return (it != list.end() && it->vertex == v) ? it->mult : 0;
}

std::span<const Neighbour> Graph::neighbours(Vertex v) const {
  check_vertex(v);
  return adj_[v - 1];
}

int Graph::degree(Vertex v) const {
  int d = 0;
  for (const auto& nb : neighbours(v)) {
    d += nb.mult;
  }
  return d;
}

int Graph::max_degree() const {
  int best = 0;
  for (Vertex v = 1; v <= vertex_count(); ++v) {
    best = std::max(best, degree(v));
  }
  return best;
}

int Graph::max_multiplicity() const {
  int best = 0;
  for (const auto& list : adj_) {
    for (const auto& nb : list) {
      best = std::max(best, nb.mult);
    }
  }
  return best;
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& list : adj_) {
    for (const auto& nb : list) {
      twice += static_cast<std::size_t>(nb.mult);
    }
  }
  return twice / 2;
}

bool Graph::is_simple() const { return max_multiplicity() <= 1; }

bool Graph::is_connected() const {
  const int n = vertex_count();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> stack{1};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (const auto& nb : adj_[v - 1]) {
      if (!seen[nb.vertex - 1]) {
        seen[nb.vertex - 1] = 1;
        ++reached;
        stack.push_back(nb.vertex);
      }
    }
  }
  return reached == n;
}

int Graph::depth(Vertex v) const {
  check_vertex(v);
  if (depth_.empty()) {
    throw std::logic_error("graph carries no depth metadata");
  }
  return depth_[v - 1];
}

void Graph::set_depths(std::vector<int> depths) {
  if (!depths.empty() && depths.size() != adj_.size()) {
    throw std::invalid_argument("depth vector length does not match vertex count");
  }
  depth_ = std::move(depths);
}

Graph make_path(int n) {
  if (n < 1) {
    throw std::invalid_argument("path needs n >= 1");
  }
  Graph g(n);
  for (Vertex v = 1; v < n; ++v) {
    g.add_edge(v, v + 1);
  }
  return g;
}

Graph make_cycle(int n) {
  if (n < 3) {
    throw std::invalid_argument("cycle needs n >= 3");
  }
  Graph g = make_path(n);
  g.add_edge(n, 1);
  return g;
}

Graph make_star(int n) {
  if (n < 2) {
    throw std::invalid_argument("star needs n >= 2");
  }
  Graph g(n);
  for (Vertex v = 2; v <= n; ++v) {
    g.add_edge(1, v);
  }
  return g;
}

Graph make_complete(int n) {
  Graph g(n);
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = u + 1; v <= n; ++v) {
      g.add_edge(u, v);
    }
  }
  return g;
}

std::int64_t regular_tree_size(int d, int radius) {
  if (d < 1 || radius < 0) {
    throw std::invalid_argument("regular tree needs d >= 1 and radius >= 0");
  }
  std::int64_t total = 1;
  std::int64_t layer = 1;
  for (int depth = 1; depth <= radius; ++depth) {
    layer *= (depth == 1) ? d : d - 1;
    total += layer;
    if (layer == 0) {
      break;
    }
  }
  return total;
}

Graph make_regular_tree(int d, int radius) {
  const std::int64_t size = regular_tree_size(d, radius);
  if (size > 50'000'000) {
    throw std::invalid_argument("regular tree too large to materialize");
  }
  Graph g(static_cast<int>(size));
  std::vector<int> depth(static_cast<std::size_t>(size), 0);
  Vertex next = 2;
  // Vertices are created in BFS order, so a parent always precedes its children.
  for (Vertex parent = 1; parent < next; ++parent) {
    const int pd = depth[parent - 1];
    if (pd == radius) {
      continue;
    }
    const int children = (parent == 1) ? d : d - 1;
    for (int c = 0; c < children; ++c) {
      g.add_edge(parent, next);
      depth[next - 1] = pd + 1;
      ++next;
    }
  }
  g.set_depths(std::move(depth));
  return g;
}

Graph double_cover_regularize(const Graph& g) {
  if (!g.is_simple()) {
    throw std::invalid_argument("double_cover_regularize expects a simple graph");
  }
  const int n = g.vertex_count();
  const int d = g.max_degree();
  Graph out(2 * n);
  for (Vertex u = 1; u <= n; ++u) {
    for (const auto& nb : g.neighbours(u)) {
      if (u < nb.vertex) {
        out.add_edge(u, nb.vertex, nb.mult);
        out.add_edge(u + n, nb.vertex + n, nb.mult);
      }
    }
    out.add_edge(u, u + n, d - g.degree(u));
  }
  return out;
}

Graph parse_graph(std::string_view text) {
  std::optional<Graph> g;
  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') {
      continue;
    }
    const auto fields = detail::split_ws(line);
    if (!g) {
      if (fields.size() != 1) {
        throw ParseError(line_no, "expected vertex count");
      }
      const auto n = detail::parse_int<int>(fields[0]);
      if (!n || *n < 1) {
        throw ParseError(line_no, "vertex count must be a positive integer");
      }
      g.emplace(*n);
      continue;
    }
    if (fields.size() != 2) {
      throw ParseError(line_no, "expected \"u v\"");
    }
    const auto u = detail::parse_int<int>(fields[0]);
    const auto v = detail::parse_int<int>(fields[1]);
    if (!u || !v) {
      throw ParseError(line_no, "malformed vertex index");
    }
    const int n = g->vertex_count();
    if (*u < 1 || *u > n || *v < 1 || *v > n) {
      throw ParseError(line_no, "vertex index out of range 1.." + std::to_string(n));
    }
    if (*u == *v) {
      throw ParseError(line_no, "self-loop at vertex " + std::to_string(*u));
    }
    g->add_edge(*u, *v);
  }
  if (!g) {
    throw ParseError(line_no, "missing vertex count");
  }
  return std::move(*g);
}

std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  out << g.vertex_count() << '\n';
  for (Vertex u = 1; u <= g.vertex_count(); ++u) {
    for (const auto& nb : g.neighbours(u)) {
      if (u < nb.vertex) {
        for (int i = 0; i < nb.mult; ++i) {
          out << u << ' ' << nb.vertex << '\n';
        }
      }
    }
  }
  return out.str();
}

}  // namespace diffusion
