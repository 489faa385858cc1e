#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "diffusion/constructions.hpp"
#include "diffusion/coupling.hpp"
#include "diffusion/encoding.hpp"
#include "diffusion/engine.hpp"
#include "diffusion/graph.hpp"
#include "diffusion/random.hpp"
#include "diffusion/search.hpp"

using namespace diffusion;

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kTimedOut = 3;
constexpr int kVerifyFailed = 4;
constexpr int kBadPlan = 5;
constexpr int kWitnessFound = 10;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw UsageError("cannot read " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw UsageError("cannot write " + path);
  }
  out << text;
}

ChipState load_labels(const std::string& csv, const std::string& file, int n) {
  if (!csv.empty() && !file.empty()) {
    throw UsageError("give either --labels or --labels-file, not both");
  }
  if (csv.empty() && file.empty()) {
    throw UsageError("one of --labels or --labels-file is required");
  }
  std::string text = csv;
  if (!file.empty()) {
    text = read_file(file);
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) {
      text.pop_back();
    }
  }
  ChipState w = parse_state(text);
  if (n >= 0 && w.size() != n) {
    throw UsageError("expected " + std::to_string(n) + " labels, got " + std::to_string(w.size()));
  }
  return w;
}

struct SimulateArgs {
  std::string graph;
  std::string labels;
  std::string labels_file;
  std::size_t steps = 0;
  bool to_period = false;
  std::size_t guard = kDefaultGuard;
};

int run_simulate(const SimulateArgs& a) {
  const Graph g = parse_graph(read_file(a.graph));
  const ChipState w0 = load_labels(a.labels, a.labels_file, g.vertex_count());
  if (!a.to_period) {
    std::cout << format_trajectory(simulate(g, w0, a.steps));
    return kOk;
  }
  const PeriodOutcome outcome = detect_period(g, w0, a.guard);
  if (const auto* timed_out = std::get_if<TimedOut>(&outcome)) {
    std::cout << format_trajectory(simulate(g, w0, a.guard));
    std::cout << "TIMEOUT guard=" << timed_out->guard << '\n';
    std::cout << "min_label=" << timed_out->min_label_seen << '\n';
    return kTimedOut;
  }
  const auto& report = std::get<PeriodReport>(outcome);
  std::cout << format_trajectory(simulate(g, w0, report.preperiod + static_cast<std::size_t>(report.period)));
  std::cout << "T=" << report.preperiod << " k=" << report.period << '\n';
  std::cout << "min_label=" << report.min_label_seen << '\n';
  return kOk;
}

struct ConstructArgs {
  std::string family;
  int n = 4;
  int d = 4;
  int T = 1;
  std::string output;
};

int run_construct(const ConstructArgs& a) {
  Witness w = [&] {
    if (a.family == "star") return star_witness(a.n);
    if (a.family == "cubic-tree") return cubic_tree_witness();
    if (a.family == "layered") return layered_witness(a.d, a.T);
    return path_zero_witness();
  }();
  write_output(a.output, serialize_witness(w));
  const WitnessCheck check = verify_witness(w);
  if (!check.ok) {
    std::cerr << "verification failed: " << check.detail << '\n';
    return kVerifyFailed;
  }
  std::cout << "VERIFIED t=" << w.negative_time << " v=" << w.negative_vertex << '\n';
  return kOk;
}

struct CertifyArgs {
  int n = 2;
  std::string plans;
  bool random = false;
  std::size_t steps = 10;
  std::uint64_t seed = kDefaultSeed;
  std::string output;
};

int run_certify(const CertifyArgs& a) {
  if (a.n < 2) {
    throw UsageError("--n must be at least 2");
  }
  if (a.random == !a.plans.empty()) {
    throw UsageError("give exactly one of --plans or --random");
  }
  Certificate cert;
  try {
    if (a.random) {
      Rng rng(a.seed);
      cert = certify_nonnegativity(
          a.n, a.steps, [&rng](const ChipState& w, std::size_t) { return random_plan(w, rng); });
    } else {
      cert = certify_nonnegativity(a.n, parse_plans(a.n, read_file(a.plans)));
    }
  } catch (const PlanError& e) {
    std::cerr << e.what() << '\n';
    return kBadPlan;
  }
  write_output(a.output, format_certificate(cert));
  return cert.ok() ? kOk : kNegative;
}

struct SearchArgs {
  std::string campaign;
  int n = 4;
  std::optional<Label> min;
  std::optional<Label> max;
  Label start = 0;
  Label window = 0;
  int radius = 2;
  int max_vertices = 7;
  int d = 4;
  std::string scheme = "layered";
  std::uint64_t budget = 1'000'000;
  std::size_t horizon = kDefaultGuard;
  std::uint64_t seed = kDefaultSeed;
  bool collect_all = false;
  bool no_dedup = false;
  unsigned workers = 1;
  std::string output;
};

int run_search(const SearchArgs& a, const CLI::App& sub) {
  SearchReport report;
  if (a.campaign == "tightness") {
    SearchConfig base;
    base.budget = a.budget;
    base.horizon = a.horizon;
    base.seed = a.seed;
    base.collect_all = a.collect_all;
    base.dedup = !a.no_dedup;
    base.workers = a.workers;
    report = tightness_scan(a.n, a.min.value_or(a.n - 2), a.max.value_or(a.n + 1), base);
  } else if (a.campaign == "g3") {
    G3Options o;
    if (sub.count("--start") > 0) o.start_label = a.start;
    o.window = a.window;
    o.max_radius = a.radius;
    o.max_subcubic_vertices = a.max_vertices;
    o.budget = a.budget;
    o.horizon = a.horizon;
    o.seed = a.seed;
    o.collect_all = a.collect_all;
    o.workers = a.workers;
    report = g3_campaign(o);
  } else {
    GdkOptions o;
    o.d = a.d;
    if (sub.count("--start") > 0) o.start_label = a.start;
    o.window = a.window;
    o.max_radius = a.radius;
    o.scheme = a.scheme == "full" ? LabelScheme::Full : LabelScheme::Layered;
    o.budget = a.budget;
    o.horizon = a.horizon;
    o.seed = a.seed;
    o.collect_all = a.collect_all;
    o.workers = a.workers;
    report = gdk_scan(o);
  }
  write_output(a.output, format_report(report));
  if (report.found()) {
    std::cerr << "witness found (" << report.witnesses.size() << ")\n";
    return kWitnessFound;
  }
  return report.conclusive ? kOk : kTimedOut;
}

struct CoupleArgs {
  std::string graph;
  std::string labels;
  std::string labels_file;
  std::string plans;
  std::size_t steps = 10;
  Vertex remove = 1;
};

int run_couple(const CoupleArgs& a) {
  if (a.graph.empty() == a.plans.empty()) {
    throw UsageError("give exactly one of --graph or --plans");
  }
  std::vector<TransferPlan> plans;
  ChipState w0;
  if (!a.graph.empty()) {
    const Graph g = parse_graph(read_file(a.graph));
    w0 = load_labels(a.labels, a.labels_file, g.vertex_count());
    ChipState w = w0;
    for (std::size_t t = 0; t < a.steps; ++t) {
      plans.push_back(plan_from_graph(g, w));
      w = weak_step(w, plans.back());
    }
  } else {
    w0 = load_labels(a.labels, a.labels_file, -1);
    plans = parse_plans(w0.size(), read_file(a.plans));
  }
  if (a.remove < 1 || a.remove > w0.size()) {
    throw UsageError("--remove must name a vertex of 1.." + std::to_string(w0.size()));
  }
  try {
    std::cout << format_coupling(couple_evolution(w0, plans, a.remove));
  } catch (const PlanError& e) {
    std::cerr << e.what() << '\n';
    return kBadPlan;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diffusion game simulator, certifier and witness search"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "run the diffusion rule on a graph");
  simulate_cmd->add_option("--graph", sim.graph, "graph file")->required();
  simulate_cmd->add_option("--labels", sim.labels, "comma-separated initial labels");
  simulate_cmd->add_option("--labels-file", sim.labels_file, "file with comma-separated labels");
  auto* steps_opt = simulate_cmd->add_option("--steps", sim.steps, "number of steps");
  auto* period_flag = simulate_cmd->add_flag("--to-period", sim.to_period, "run until periodic");
  steps_opt->excludes(period_flag);
  simulate_cmd->add_option("--guard", sim.guard, "step guard for --to-period");

  ConstructArgs con;
  auto* construct_cmd = app.add_subcommand("construct", "build and verify a known witness");
  construct_cmd->add_option("family", con.family, "star | cubic-tree | layered | path-zero")
      ->required()
      ->check(CLI::IsMember({"star", "cubic-tree", "layered", "path-zero"}));
  construct_cmd->add_option("--n", con.n, "star size");
  construct_cmd->add_option("--d", con.d, "tree degree (layered)");
  construct_cmd->add_option("--T", con.T, "failure time (layered)");
  construct_cmd->add_option("-o,--output", con.output, "witness file (default stdout)");

  CertifyArgs cert;
  auto* certify_cmd = app.add_subcommand("certify", "run the encoding certificate on a weak game");
  certify_cmd->add_option("--n", cert.n, "vertex count")->required();
  certify_cmd->add_option("--plans", cert.plans, "plan file, one step per line");
  certify_cmd->add_flag("--random", cert.random, "draw random legal plans");
  certify_cmd->add_option("--steps", cert.steps, "steps for --random");
  certify_cmd->add_option("--seed", cert.seed, "seed for --random");
  certify_cmd->add_option("-o,--output", cert.output, "certificate file (default stdout)");

  SearchArgs srch;
  auto* search_cmd = app.add_subcommand("search", "bounded witness search");
  search_cmd->add_option("campaign", srch.campaign, "tightness | g3 | gdk")
      ->required()
      ->check(CLI::IsMember({"tightness", "g3", "gdk"}));
  search_cmd->add_option("--n", srch.n, "vertex count (tightness)");
  search_cmd->add_option("--min", srch.min, "smallest label (tightness, default n-2)");
  search_cmd->add_option("--max", srch.max, "largest label (tightness, default n+1)");
  search_cmd->add_option("--start", srch.start, "smallest label (g3 default 3, gdk default 1)");
  search_cmd->add_option("--window", srch.window, "label window width");
  search_cmd->add_option("--radius", srch.radius, "largest tree radius");
  search_cmd->add_option("--max-vertices", srch.max_vertices, "subcubic graph size cap (g3)");
  search_cmd->add_option("--d", srch.d, "tree degree (gdk)");
  search_cmd->add_option("--scheme", srch.scheme, "labelling scheme (gdk)")
      ->check(CLI::IsMember({"full", "layered"}));
  search_cmd->add_option("--budget", srch.budget, "labellings per graph before sampling");
  search_cmd->add_option("--horizon", srch.horizon, "step guard per instance");
  search_cmd->add_option("--seed", srch.seed, "sampling seed");
  search_cmd->add_flag("--collect-all", srch.collect_all, "keep searching after a witness");
  search_cmd->add_flag("--no-dedup", srch.no_dedup, "skip isomorphism dedup (tightness)");
  search_cmd->add_option("--workers", srch.workers, "worker threads");
  search_cmd->add_option("-o,--output", srch.output, "report file (default stdout)");

  CoupleArgs cpl;
  auto* couple_cmd = app.add_subcommand("couple", "trace the chip-removal coupling");
  couple_cmd->add_option("--graph", cpl.graph, "graph file (plans follow the diffusion rule)");
  couple_cmd->add_option("--plans", cpl.plans, "plan file for the weak game");
  couple_cmd->add_option("--labels", cpl.labels, "comma-separated initial labels");
  couple_cmd->add_option("--labels-file", cpl.labels_file, "file with comma-separated labels");
  couple_cmd->add_option("--steps", cpl.steps, "steps when using --graph");
  couple_cmd->add_option("--remove", cpl.remove, "vertex losing one chip");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*simulate_cmd) {
      if (sim.steps == 0 && !sim.to_period && simulate_cmd->count("--steps") == 0) {
        throw UsageError("give --steps or --to-period");
      }
      return run_simulate(sim);
    }
    if (*construct_cmd) return run_construct(con);
    if (*certify_cmd) return run_certify(cert);
    if (*search_cmd) return run_search(srch, *search_cmd);
    if (*couple_cmd) return run_couple(cpl);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
