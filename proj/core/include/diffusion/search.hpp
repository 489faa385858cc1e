#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "diffusion/constructions.hpp"
#include "diffusion/engine.hpp"
#include "diffusion/graph.hpp"

namespace diffusion {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

enum class GraphFamily { AllConnected, PathsCycles, Subcubic, CubicTrees, RegularTrees, Custom };

// How initial labels are assigned: independently per vertex, or one label
// per depth layer (trees with depth metadata only).
enum class LabelScheme { Full, Layered };

std::string to_string(GraphFamily family);
std::string to_string(LabelScheme scheme);

struct SearchConfig {
  Label label_min = 0;
  Label label_max = 0;
  int max_vertices = 5;
  std::size_t horizon = kDefaultGuard;
  GraphFamily family = GraphFamily::Custom;
  bool dedup = true;
  LabelScheme scheme = LabelScheme::Full;
  // Labelings per graph examined exhaustively; larger spaces are sampled
  // with this many draws.
  std::uint64_t budget = 1'000'000;
  std::uint64_t seed = kDefaultSeed;
  bool collect_all = false;
  unsigned workers = 1;
  std::string scope;  // free-form scoping note echoed in the report

  // Throws std::invalid_argument on an unusable configuration.
  void validate() const;
};

struct FoundWitness {
  std::size_t graph_index;
  std::uint64_t instance_index;
  Witness witness;
};

struct SearchReport {
  std::string campaign;
  SearchConfig config;
  std::vector<FoundWitness> witnesses;
  std::uint64_t graphs_examined = 0;
  std::uint64_t instances_examined = 0;
  std::uint64_t timed_out = 0;
  std::uint64_t sampled_graphs = 0;
  // Every examined instance either produced a witness or reached its period
  // with all labels non-negative.
  bool conclusive = true;

  bool exhaustive() const noexcept { return sampled_graphs == 0; }
  bool found() const noexcept { return !witnesses.empty(); }
};

// Graph list for a family, by size and then canonical form:
//   AllConnected / Subcubic: enumerated connected graphs, n = 1..max_vertices
//   PathsCycles: paths n = 1..max_vertices, then cycles n = 3..max_vertices
std::vector<Graph> family_graphs(GraphFamily family, int max_vertices, bool dedup = true);

// Runs every labelling (or a seeded sample) of every graph to its period and
// collects witnesses. Results are identical for any worker count.
SearchReport find_negativity_witness(const std::vector<Graph>& graphs, const SearchConfig& config,
                                     std::string campaign = "custom");

// Scan of all connected n-vertex graphs with labels in
// [label_min, label_max].
SearchReport tightness_scan(int n, Label label_min, Label label_max, SearchConfig base = {});

struct G3Options {
  Label start_label = 3;
  Label window = 0;  // labels in [start_label, start_label + window]
  int max_radius = 2;
  int max_subcubic_vertices = 7;
  std::uint64_t budget = 1'000'000;
  std::size_t horizon = kDefaultGuard;
  std::uint64_t seed = kDefaultSeed;
  bool collect_all = false;
  unsigned workers = 1;
};

// Max-degree-3 campaign: cubic trees of radius 0..max_radius, then connected
// subcubic graphs on up to max_subcubic_vertices vertices.
SearchReport g3_campaign(const G3Options& options);

struct GdkOptions {
  int d = 4;
  Label window = 0;
  Label start_label = 1;
  int max_radius = 2;
  LabelScheme scheme = LabelScheme::Layered;
  std::uint64_t budget = 1'000'000;
  std::size_t horizon = kDefaultGuard;
  std::uint64_t seed = kDefaultSeed;
  bool collect_all = false;
  unsigned workers = 1;
};

// d-regular trees of radius 1..max_radius with labels in
// [start_label, start_label + window].
SearchReport gdk_scan(const GdkOptions& options);

std::string format_report(const SearchReport& report);

}  // namespace diffusion
