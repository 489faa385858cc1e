#include "diffusion/canonical.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <stdexcept>

namespace diffusion {

namespace {

using AdjRows = std::array<std::uint8_t, kMaxCanonicalVertices>;

int pair_count(int n) { return n * (n - 1) / 2; }

AdjRows rows_from_code(int n, std::uint32_t code) {
  AdjRows rows{};
  const int m = pair_count(n);
  int p = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++p) {
      if ((code >> (m - 1 - p)) & 1U) {
        rows[i] |= static_cast<std::uint8_t>(1U << j);
        rows[j] |= static_cast<std::uint8_t>(1U << i);
      }
    }
  }
  return rows;
}

std::uint32_t code_under(int n, const AdjRows& rows, const std::array<int, kMaxCanonicalVertices>& order) {
  std::uint32_t code = 0;
  for (int i = 0; i < n; ++i) {
    const std::uint8_t row = rows[order[i]];
    for (int j = i + 1; j < n; ++j) {
      code = (code << 1) | ((row >> order[j]) & 1U);
    }
  }
  return code;
}

std::uint32_t canonical_from_rows(int n, const AdjRows& rows) {
  std::array<int, kMaxCanonicalVertices> degree{};
  for (int i = 0; i < n; ++i) {
    degree[i] = __builtin_popcount(rows[i]);
  }
  std::array<int, kMaxCanonicalVertices> order{};
  std::iota(order.begin(), order.begin() + n, 0);
  std::stable_sort(order.begin(), order.begin() + n,
                   [&degree](int a, int b) { return degree[a] > degree[b]; });

  // Blocks of equal degree; every block is permuted independently.
  std::vector<std::pair<int, int>> blocks;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && degree[order[j]] == degree[order[i]]) {
      ++j;
    }
    blocks.emplace_back(i, j);
    std::sort(order.begin() + i, order.begin() + j);
    i = j;
  }

  std::uint32_t best = UINT32_MAX;
  while (true) {
    best = std::min(best, code_under(n, rows, order));
    // Odometer over the per-block permutations.
    std::size_t b = 0;
    for (; b < blocks.size(); ++b) {
      auto first = order.begin() + blocks[b].first;
      auto last = order.begin() + blocks[b].second;
      if (std::next_permutation(first, last)) {
        break;
      }
    }
    if (b == blocks.size()) {
      return best;
    }
  }
}

bool connected_rows(int n, const AdjRows& rows) {
  std::uint32_t seen = 1;
  std::uint32_t frontier = 1;
  while (frontier) {
    std::uint32_t next = 0;
    for (int i = 0; i < n; ++i) {
      if ((frontier >> i) & 1U) {
        next |= rows[i];
      }
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (1U << n) - 1;
}

}  // namespace

std::uint32_t canonical_code(const Graph& g) {
  const int n = g.vertex_count();
  if (n > kMaxCanonicalVertices) {
    throw std::invalid_argument("canonical_code supports at most 7 vertices");
  }
  if (!g.is_simple()) {
    throw std::invalid_argument("canonical_code expects a simple graph");
  }
  AdjRows rows{};
  for (Vertex u = 1; u <= n; ++u) {
    for (const auto& nb : g.neighbours(u)) {
      rows[u - 1] |= static_cast<std::uint8_t>(1U << (nb.vertex - 1));
    }
  }
  return canonical_from_rows(n, rows);
}

Graph graph_from_code(int n, std::uint32_t code) {
  if (n < 1 || n > kMaxCanonicalVertices) {
    throw std::invalid_argument("graph_from_code supports 1..7 vertices");
  }
  Graph g(n);
  const AdjRows rows = rows_from_code(n, code);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if ((rows[i] >> j) & 1U) {
        g.add_edge(i + 1, j + 1);
      }
    }
  }
  return g;
}

std::vector<Graph> enumerate_connected_graphs(int n, bool dedup) {
  if (n < 1 || n > kMaxCanonicalVertices) {
    throw std::invalid_argument("enumerate_connected_graphs supports 1 <= n <= 7");
  }
  const int m = pair_count(n);
  const std::uint32_t limit = 1U << m;
  std::vector<Graph> out;
  std::set<std::uint32_t> classes;
  for (std::uint32_t code = 0; code < limit; ++code) {
    const AdjRows rows = rows_from_code(n, code);
    if (dedup) {
      // Each class has a representative whose degrees are non-increasing.
      bool sorted = true;
      for (int i = 0; i + 1 < n && sorted; ++i) {
        sorted = __builtin_popcount(rows[i]) >= __builtin_popcount(rows[i + 1]);
      }
      if (!sorted) {
        continue;
      }
    }
    if (!connected_rows(n, rows)) {
      continue;
    }
    if (dedup) {
      classes.insert(canonical_from_rows(n, rows));
    } else {
      out.push_back(graph_from_code(n, code));
    }
  }
  if (dedup) {
    for (std::uint32_t code : classes) {
      out.push_back(graph_from_code(n, code));
    }
  }
  return out;
}

}  // namespace diffusion
