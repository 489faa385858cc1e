#include "diffusion/constructions.hpp"

#include <sstream>
#include <stdexcept>

#include "text_util.hpp"

namespace diffusion {

Witness star_witness(int n) {
  if (n < 2) {
    throw std::invalid_argument("star witness needs n >= 2");
  }
  ChipState w = ChipState::constant(n, n - 3);
  w.set(1, n - 2);
  return Witness{make_star(n), std::move(w), 1, 1, n - 3};
}

Witness cubic_tree_witness() {
  // Breadth-first order: root; its three children; their six children;
  // twelve leaves.
  ChipState w({2,                          //
               3, 2, 2,                    //
               3, 3, 3, 2, 2, 3,           //
               2, 2, 2, 2, 3, 3, 2, 2, 2, 2, 3, 3});
  return Witness{make_regular_tree(3, 3), std::move(w), 3, 1, 2};
}

Witness layered_witness(int d, int T) {
  if (d < 4 || T < 1) {
    throw std::invalid_argument("layered witness needs d >= 4 and T >= 1");
  }
  Graph g = make_regular_tree(d, T);
  const Label top = static_cast<Label>(T) * d;
  std::vector<Label> labels(static_cast<std::size_t>(g.vertex_count()));
  for (Vertex v = 1; v <= g.vertex_count(); ++v) {
    const int depth = g.depth(v);
    labels[static_cast<std::size_t>(v - 1)] =
        depth == 0 ? top - 1 : top - 2 * static_cast<Label>(T) - (depth - 1);
  }
  return Witness{std::move(g), ChipState(std::move(labels)), static_cast<std::size_t>(T), 1,
                 top - 3 * static_cast<Label>(T) + 1};
}

Witness path_zero_witness() {
  return Witness{make_path(3), ChipState({0, 1, 0}), 1, 2, 0};
}

Label multigraph_threshold(int m, int n) {
  if (m < 1 || n < 2) {
    throw std::invalid_argument("multigraph_threshold needs m >= 1 and n >= 2");
  }
  return static_cast<Label>(m) * (n - 1) - 1;
}

WitnessCheck verify_witness(const Witness& witness) {
  const Graph& g = witness.graph;
  if (witness.initial.size() != g.vertex_count()) {
    return {false, "label count does not match vertex count"};
  }
  if (witness.negative_vertex < 1 || witness.negative_vertex > g.vertex_count()) {
    return {false, "negative vertex out of range"};
  }
  if (witness.initial.min_label() != witness.min_initial_label) {
    return {false, "recorded minimum initial label is " +
                       std::to_string(witness.min_initial_label) + " but the labels give " +
                       std::to_string(witness.initial.min_label())};
  }
  const bool all_start_nonneg = witness.min_initial_label >= 0;
  ChipState w = witness.initial;
  for (std::size_t t = 0;; ++t) {
    const Label x = w.at(witness.negative_vertex);
    if (t == witness.negative_time) {
      if (x >= 0) {
        return {false, "vertex " + std::to_string(witness.negative_vertex) + " holds " +
                           std::to_string(x) + " at t=" + std::to_string(t)};
      }
      return {true, "vertex " + std::to_string(witness.negative_vertex) + " holds " +
                        std::to_string(x) + " at t=" + std::to_string(t)};
    }
    if (x < 0) {
      return {false, "vertex " + std::to_string(witness.negative_vertex) +
                         " is already negative at t=" + std::to_string(t)};
    }
    if (all_start_nonneg && w.min_label() < 0) {
      return {false, "some label is negative at t=" + std::to_string(t)};
    }
    w = step(g, w);
  }
}

std::string serialize_witness(const Witness& witness) {
  std::ostringstream out;
  out << serialize_graph(witness.graph);
  out << "labels: " << format_state(witness.initial) << '\n';
  out << "expect: t=" << witness.negative_time << " v=" << witness.negative_vertex << '\n';
  return out.str();
}

Witness parse_witness(std::string_view text) {
  std::string graph_text;
  std::optional<ChipState> labels;
  std::optional<std::size_t> time;
  std::optional<Vertex> vertex;
  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    const auto trimmed = detail::trim(line);
    if (trimmed.starts_with("labels:")) {
      try {
        labels = parse_state(trimmed.substr(7));
      } catch (const ParseError& e) {
        throw ParseError(line_no, e.what());
      }
    } else if (trimmed.starts_with("expect:")) {
      for (auto field : detail::split_ws(trimmed.substr(7))) {
        if (field.starts_with("t=")) {
          time = detail::parse_int<std::size_t>(field.substr(2));
        } else if (field.starts_with("v=")) {
          vertex = detail::parse_int<Vertex>(field.substr(2));
        }
      }
      if (!time || !vertex) {
        throw ParseError(line_no, "expected \"expect: t=<T> v=<vertex>\"");
      }
    } else if (!labels) {
      graph_text.append(line);
      graph_text.push_back('\n');
    }
  }
  if (!labels || !time) {
    throw ParseError(line_no, "witness needs a labels: and an expect: line");
  }
  Graph g = parse_graph(graph_text);
  if (labels->size() != g.vertex_count()) {
    throw ParseError(line_no, "label count does not match vertex count");
  }
  const Label lowest = labels->min_label();
  return Witness{std::move(g), std::move(*labels), *time, *vertex, lowest};
}

}  // namespace diffusion
