#include "diffusion/search.hpp"

#include <algorithm>
#include <exception>
#include <sstream>
#include <thread>

#include "diffusion/canonical.hpp"
#include "diffusion/random.hpp"

namespace diffusion {

std::string to_string(GraphFamily family) {
  switch (family) {
    case GraphFamily::AllConnected:
      return "all-connected";
    case GraphFamily::PathsCycles:
      return "paths-cycles";
    case GraphFamily::Subcubic:
      return "subcubic";
    case GraphFamily::CubicTrees:
      return "cubic-trees";
    case GraphFamily::RegularTrees:
      return "regular-trees";
    case GraphFamily::Custom:
      return "custom";
  }
  return "custom";
}

std::string to_string(LabelScheme scheme) {
  return scheme == LabelScheme::Full ? "full" : "layered";
}

void SearchConfig::validate() const {
  if (label_min > label_max) {
    throw std::invalid_argument("label_min exceeds label_max");
  }
  if (horizon < 1) {
    throw std::invalid_argument("horizon must be at least 1");
  }
  if (budget < 1) {
    throw std::invalid_argument("budget must be at least 1");
  }
  if (workers < 1) {
    throw std::invalid_argument("workers must be at least 1");
  }
}

std::vector<Graph> family_graphs(GraphFamily family, int max_vertices, bool dedup) {
  std::vector<Graph> out;
  switch (family) {
    case GraphFamily::AllConnected:
    case GraphFamily::Subcubic:
      for (int n = 1; n <= max_vertices; ++n) {
        for (auto& g : enumerate_connected_graphs(n, dedup)) {
          if (family == GraphFamily::AllConnected || g.max_degree() <= 3) {
            out.push_back(std::move(g));
          }
        }
      }
      break;
    case GraphFamily::PathsCycles:
      for (int n = 1; n <= max_vertices; ++n) {
        out.push_back(make_path(n));
      }
      for (int n = 3; n <= max_vertices; ++n) {
        out.push_back(make_cycle(n));
      }
      break;
    default:
      throw std::invalid_argument("family " + to_string(family) + " has no fixed graph list");
  }
  return out;
}

namespace {

struct GraphResult {
  std::vector<FoundWitness> witnesses;
  std::uint64_t instances = 0;
  std::uint64_t timed_out = 0;
  bool sampled = false;
};

// Labelling space of one graph: each vertex takes the value of its class.
struct LabelSpace {
  std::vector<int> class_of;  // per vertex, 0-based
  int classes = 0;
  std::uint64_t values = 0;
  std::uint64_t size = 0;  // saturates at UINT64_MAX
};

LabelSpace label_space(const Graph& g, const SearchConfig& config) {
  LabelSpace s;
  const int n = g.vertex_count();
  s.class_of.resize(static_cast<std::size_t>(n));
  if (config.scheme == LabelScheme::Layered) {
    if (!g.has_depths()) {
      throw std::invalid_argument("layered labelling needs a tree with depth metadata");
    }
    for (Vertex v = 1; v <= n; ++v) {
      s.class_of[static_cast<std::size_t>(v - 1)] = g.depth(v);
    }
    s.classes = *std::max_element(g.depths().begin(), g.depths().end()) + 1;
  } else {
    for (int v = 0; v < n; ++v) {
      s.class_of[static_cast<std::size_t>(v)] = v;
    }
    s.classes = n;
  }
  s.values = static_cast<std::uint64_t>(config.label_max - config.label_min) + 1;
  s.size = 1;
  for (int i = 0; i < s.classes; ++i) {
    if (s.size > UINT64_MAX / s.values) {
      s.size = UINT64_MAX;
      break;
    }
    s.size *= s.values;
  }
  return s;
}

GraphResult search_graph(const Graph& g, std::size_t graph_index, const SearchConfig& config) {
  GraphResult result;
  const LabelSpace space = label_space(g, config);
  const bool exhaustive = space.size <= config.budget;
  result.sampled = !exhaustive;
  const std::uint64_t count = exhaustive ? space.size : config.budget;

  Rng rng(derive_seed(config.seed, graph_index));
  std::vector<std::uint64_t> digits(static_cast<std::size_t>(space.classes), 0);
  std::vector<Label> labels(space.class_of.size());

  for (std::uint64_t idx = 0; idx < count; ++idx) {
    if (exhaustive) {
      if (idx > 0) {
        // Lexicographic order, last class fastest.
        for (std::size_t i = digits.size(); i-- > 0;) {
          if (++digits[i] < space.values) {
            break;
          }
          digits[i] = 0;
        }
      }
    } else {
      for (auto& d : digits) {
        d = rng.below(space.values);
      }
    }
    for (std::size_t v = 0; v < labels.size(); ++v) {
      labels[v] = config.label_min + static_cast<Label>(digits[static_cast<std::size_t>(space.class_of[v])]);
    }
    ++result.instances;

    const ChipState w0(labels);
    const PeriodOutcome outcome = detect_period(g, w0, config.horizon);
    Label lowest;
    if (const auto* report = std::get_if<PeriodReport>(&outcome)) {
      lowest = report->min_label_seen;
    } else {
      lowest = std::get<TimedOut>(outcome).min_label_seen;
    }
    if (lowest >= 0) {
      if (std::holds_alternative<TimedOut>(outcome)) {
        ++result.timed_out;
      }
      continue;
    }
    const auto first = first_negative(g, w0, config.horizon + 2);
    if (!first) {
      throw std::logic_error("negative label seen but not reproduced by simulation");
    }
    Witness witness{g, w0, first->time, first->vertex, w0.min_label()};
    if (const auto check = verify_witness(witness); !check.ok) {
      throw std::logic_error("search produced a witness that does not verify: " + check.detail);
    }
    result.witnesses.push_back(FoundWitness{graph_index, idx, std::move(witness)});
    if (!config.collect_all) {
      break;
    }
  }
  return result;
}

}  // namespace

SearchReport find_negativity_witness(const std::vector<Graph>& graphs, const SearchConfig& config,
                                     std::string campaign) {
  config.validate();
  std::vector<GraphResult> results(graphs.size());
  const unsigned workers =
      std::max(1U, std::min<unsigned>(config.workers, static_cast<unsigned>(graphs.size())));

  if (workers == 1) {
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      results[i] = search_graph(graphs[i], i, config);
    }
  } else {
    // Static partition: worker k takes graphs k, k + workers, ...
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned k = 0; k < workers; ++k) {
      pool.emplace_back([&, k] {
        try {
          for (std::size_t i = k; i < graphs.size(); i += workers) {
            results[i] = search_graph(graphs[i], i, config);
          }
        } catch (...) {
          errors[k] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) {
      t.join();
    }
    for (const auto& e : errors) {
      if (e) {
        std::rethrow_exception(e);
      }
    }
  }

  SearchReport report;
  report.campaign = std::move(campaign);
  report.config = config;
  report.graphs_examined = graphs.size();
  for (auto& r : results) {
    report.instances_examined += r.instances;
    report.timed_out += r.timed_out;
    report.sampled_graphs += r.sampled ? 1 : 0;
    for (auto& w : r.witnesses) {
      report.witnesses.push_back(std::move(w));
    }
  }
  report.conclusive = report.timed_out == 0;
  return report;
}

SearchReport tightness_scan(int n, Label label_min, Label label_max, SearchConfig base) {
  if (n < 1 || n > 7) {
    throw std::invalid_argument("tightness scan supports 1 <= n <= 7");
  }
  base.label_min = label_min;
  base.label_max = label_max;
  base.max_vertices = n;
  base.family = GraphFamily::AllConnected;
  base.scheme = LabelScheme::Full;
  const auto graphs = enumerate_connected_graphs(n, base.dedup);
  return find_negativity_witness(graphs, base, "tightness");
}

SearchReport g3_campaign(const G3Options& options) {
  if (options.window < 0) {
    throw std::invalid_argument("window must be non-negative");
  }
  SearchConfig config;
  config.label_min = options.start_label;
  config.label_max = options.start_label + options.window;
  config.max_vertices = options.max_subcubic_vertices;
  config.horizon = options.horizon;
  config.family = GraphFamily::Subcubic;
  config.budget = options.budget;
  config.seed = options.seed;
  config.collect_all = options.collect_all;
  config.workers = options.workers;
  config.scope = "cubic trees radius 0.." + std::to_string(options.max_radius) +
                 " and connected subcubic graphs n<=" +
                 std::to_string(options.max_subcubic_vertices) +
                 "; absence of witnesses is evidence only";

  std::vector<Graph> graphs;
  for (int r = 0; r <= options.max_radius; ++r) {
    graphs.push_back(make_regular_tree(3, r));
  }
  for (auto& g : family_graphs(GraphFamily::Subcubic, options.max_subcubic_vertices)) {
    graphs.push_back(std::move(g));
  }
  return find_negativity_witness(graphs, config, "g3");
}

SearchReport gdk_scan(const GdkOptions& options) {
  if (options.d < 2 || options.window < 0) {
    throw std::invalid_argument("gdk scan needs d >= 2 and a non-negative window");
  }
  SearchConfig config;
  config.label_min = options.start_label;
  config.label_max = options.start_label + options.window;
  config.horizon = options.horizon;
  config.family = GraphFamily::RegularTrees;
  config.scheme = options.scheme;
  config.budget = options.budget;
  config.seed = options.seed;
  config.collect_all = options.collect_all;
  config.workers = options.workers;
  config.max_vertices = static_cast<int>(regular_tree_size(options.d, options.max_radius));
  config.scope = std::to_string(options.d) + "-regular trees radius 1.." +
                 std::to_string(options.max_radius) + "; absence of witnesses is evidence only";

  std::vector<Graph> graphs;
  for (int r = 1; r <= options.max_radius; ++r) {
    graphs.push_back(make_regular_tree(options.d, r));
  }
  return find_negativity_witness(graphs, config, "gdk");
}

std::string format_report(const SearchReport& report) {
  const SearchConfig& c = report.config;
  std::ostringstream out;
  out << "campaign: " << report.campaign << '\n';
  out << "family: " << to_string(c.family) << '\n';
  out << "labels: [" << c.label_min << "," << c.label_max << "]\n";
  out << "scheme: " << to_string(c.scheme) << '\n';
  out << "max_vertices: " << c.max_vertices << '\n';
  out << "dedup: " << (c.dedup ? "true" : "false") << '\n';
  out << "horizon: " << c.horizon << '\n';
  out << "budget: " << c.budget << '\n';
  out << "collect_all: " << (c.collect_all ? "true" : "false") << '\n';
  out << "seed: " << c.seed << '\n';
  if (!c.scope.empty()) {
    out << "scope: " << c.scope << '\n';
  }
  out << "graphs: " << report.graphs_examined << '\n';
  out << "instances: " << report.instances_examined << '\n';
  out << "timed_out: " << report.timed_out << '\n';
  out << "mode: " << (report.exhaustive() ? "exhaustive" : "sampled") << " (" << report.sampled_graphs
      << " of " << report.graphs_examined << " graphs sampled)\n";
  out << "conclusive: " << (report.conclusive ? "true" : "false") << '\n';
  out << "witnesses: " << report.witnesses.size() << '\n';
  for (std::size_t i = 0; i < report.witnesses.size(); ++i) {
    const auto& fw = report.witnesses[i];
    out << "--- witness " << (i + 1) << " graph=" << (fw.graph_index + 1)
        << " instance=" << fw.instance_index << " min_label=" << fw.witness.min_initial_label
        << '\n';
    out << serialize_witness(fw.witness);
  }
  return out.str();
}

}  // namespace diffusion
