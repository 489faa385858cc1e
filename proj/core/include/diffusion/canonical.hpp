#pragma once

#include <cstdint>
#include <vector>

#include "diffusion/graph.hpp"

namespace diffusion {

inline constexpr int kMaxCanonicalVertices = 7;

// Canonical code of a simple graph with at most kMaxCanonicalVertices
// vertices: the minimum, over all vertex orders that list vertices by
// non-increasing degree, of the upper-triangle adjacency bitstring read in
// pair order (1,2), (1,3), ..., (n-1,n) with the first pair most
// significant. Two graphs are isomorphic iff their codes (and sizes) agree.
std::uint32_t canonical_code(const Graph& g);

// Graph on n vertices whose adjacency bitstring is `code`.
Graph graph_from_code(int n, std::uint32_t code);

// All connected simple graphs on n vertices (1 <= n <= 7). With dedup, one
// representative per isomorphism class, in canonical labelling, ordered by
// canonical code; otherwise every labelled graph in edge-mask order.
std::vector<Graph> enumerate_connected_graphs(int n, bool dedup = true);

}  // namespace diffusion
