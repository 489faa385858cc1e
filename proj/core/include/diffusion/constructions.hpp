#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "diffusion/engine.hpp"
#include "diffusion/graph.hpp"

namespace diffusion {

// A starting position whose evolution drives some label negative.
struct Witness {
  Graph graph;
  ChipState initial;
  std::size_t negative_time;
  Vertex negative_vertex;
  Label min_initial_label;
};

// Star on n vertices, centre (vertex 1) holding n-2 and every leaf n-3. The
// centre reaches -1 after one step.
Witness star_witness(int n);

// The 22-vertex cubic tree (make_regular_tree(3, 3)) whose labels are all
// 2 or 3 and whose root reaches -1 at t = 3.
Witness cubic_tree_witness();

// make_regular_tree(d, T) with labels by depth: the root holds Td-1 and
// depth i >= 1 holds Td-2T-(i-1). The root reaches -1 at t = T, and the
// smallest initial label is Td-3T+1.
Witness layered_witness(int d, int T);

// Path 1-2-3 with a single chip on the middle vertex.
Witness path_zero_witness();

// Lower bound on every initial label that keeps a multigraph with maximum
// multiplicity m on n vertices non-negative: m(n-1)-1.
Label multigraph_threshold(int m, int n);

struct WitnessCheck {
  bool ok;
  std::string detail;
};

// Re-simulates the witness. Requires the negative vertex to be negative at
// negative_time and non-negative before it; when the initial labels are all
// non-negative, every vertex must stay non-negative before negative_time.
WitnessCheck verify_witness(const Witness& witness);

// Graph block, then "labels: <csv>" and "expect: t=<T> v=<vertex>".
std::string serialize_witness(const Witness& witness);
Witness parse_witness(std::string_view text);

}  // namespace diffusion
