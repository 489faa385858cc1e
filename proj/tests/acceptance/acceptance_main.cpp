// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
#include <sys/wait.h>

#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "diffusion/canonical.hpp"
#include "diffusion/constructions.hpp"
#include "diffusion/coupling.hpp"
#include "diffusion/encoding.hpp"
#include "diffusion/engine.hpp"
#include "diffusion/search.hpp"
#include "oracles.hpp"

using namespace diffusion;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) {
      detail = why;
    }
    pass = false;
  }
};

// Every detected period, for the dichotomy criterion.
std::map<int, std::uint64_t> g_periods;
std::uint64_t g_period_runs = 0;

void record_period(const PeriodOutcome& out) {
  if (const auto* r = std::get_if<PeriodReport>(&out)) {
    ++g_periods[r->period];
    ++g_period_runs;
  }
}

int run_cli(const std::string& args, std::string* out = nullptr) {
  const std::string cmd = std::string(DIFFUSION_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    return -1;
  }
  std::string text;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) {
    text.append(buf, got);
  }
  const int status = pclose(pipe);
  if (out != nullptr) {
    *out = text;
  }
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome star_tightness() {
  Outcome o;
  for (int n = 2; n <= 12; ++n) {
    const Witness w = star_witness(n);
    const Trajectory t = simulate(w.graph, w.initial, 1);
    if (t.states[0].at(1) < 0 || t.states[1].at(1) != -1 || w.negative_time != 1 ||
        !verify_witness(w).ok) {
      o.fail("star n=" + std::to_string(n));
    }
  }
  o.detail = o.pass ? "n=2..12 centre -1 at t=1" : o.detail;
  return o;
}

Outcome exhaustive_window() {
  Outcome o;
  std::uint64_t instances = 0;
  for (int n = 2; n <= 5; ++n) {
    for (const Graph& g : enumerate_connected_graphs(n)) {
      oracle::for_each_labeling(n, n - 2, n + 1, [&](const std::vector<Label>& labels) {
        ++instances;
        const PeriodOutcome out = detect_period(g, ChipState(labels), kDefaultGuard);
        record_period(out);
        const auto* r = std::get_if<PeriodReport>(&out);
        if (r == nullptr) {
          o.fail("timeout n=" + std::to_string(n));
        } else if (r->min_label_seen < 0) {
          o.fail("negative label n=" + std::to_string(n) + " labels=" +
                 format_state(ChipState(labels)));
        }
      });
    }
  }
  if (o.pass) {
    o.detail = std::to_string(instances) + " instances, zero violations";
  }
  return o;
}

Outcome boundary_window() {
  Outcome o;
  for (int n = 3; n <= 5; ++n) {
    std::string report;
    const int code = run_cli("search tightness --n " + std::to_string(n) + " --min " +
                                 std::to_string(n - 3) + " --max " + std::to_string(n + 1),
                             &report);
    const bool has_star = report.find(serialize_graph(make_star(n))) != std::string::npos;
    if (code != 10) {
      o.fail("n=" + std::to_string(n) + " exit " + std::to_string(code));
    } else if (!has_star) {
      o.fail("n=" + std::to_string(n) + " star not among witnesses");
    }
  }
  if (o.pass) {
    o.detail = "n=3..5 exit 10, star witness reported";
  }
  return o;
}

Outcome paths_cycles() {
  Outcome o;
  std::uint64_t instances = 0;
  for (const Graph& g : family_graphs(GraphFamily::PathsCycles, 7)) {
    oracle::for_each_labeling(g.vertex_count(), 1, 4, [&](const std::vector<Label>& labels) {
      ++instances;
      const PeriodOutcome out = detect_period(g, ChipState(labels), kDefaultGuard);
      record_period(out);
      const auto* r = std::get_if<PeriodReport>(&out);
      if (r == nullptr) {
        o.fail("inconclusive instance");
      } else if (r->min_label_seen < 0) {
        o.fail("negative label on " + std::to_string(g.vertex_count()) + " vertices");
      }
    });
  }
  const Witness z = path_zero_witness();
  if (z.min_initial_label != 0 || !verify_witness(z).ok) {
    o.fail("path-zero witness does not go negative");
  }
  if (o.pass) {
    o.detail = std::to_string(instances) + " instances safe; path (0,1,0) goes negative";
  }
  return o;
}

Outcome cubic_figure() {
  Outcome o;
  const Witness w = cubic_tree_witness();
  const Trajectory t = simulate(w.graph, w.initial, 3);
  const std::vector<Label> root{t.states[0].at(1), t.states[1].at(1), t.states[2].at(1),
                                t.states[3].at(1)};
  if (root != std::vector<Label>{2, 3, 2, -1}) {
    o.fail("root trajectory");
  }
  const std::vector<Label> t1{3, 2, 3, 3, 1, 1, 2, 2, 2, 2};
  for (std::size_t i = 0; i < t1.size(); ++i) {
    if (t.states[1].at(static_cast<Vertex>(i + 1)) != t1[i]) {
      o.fail("t=1 vertex " + std::to_string(i + 1));
    }
  }
  const std::vector<Label> t2{2, 1, 1, 1};
  for (std::size_t i = 0; i < t2.size(); ++i) {
    if (t.states[2].at(static_cast<Vertex>(i + 1)) != t2[i]) {
      o.fail("t=2 vertex " + std::to_string(i + 1));
    }
  }
  if (o.pass) {
    o.detail = "root 2,3,2,-1; t=1 and t=2 labels match";
  }
  return o;
}

Outcome layered_family() {
  Outcome o;
  for (int d = 4; d <= 8; ++d) {
    for (int T = 1; T <= 5; ++T) {
      const Witness w = layered_witness(d, T);
      const Trajectory t = simulate(w.graph, w.initial, static_cast<std::size_t>(T));
      bool ok = verify_witness(w).ok && t.states.back().at(1) == -1 &&
                w.min_initial_label == T * d - 3 * T + 1 && w.initial.min_label() == w.min_initial_label;
      for (int s = 0; s < T; ++s) {
        ok = ok && t.states[static_cast<std::size_t>(s)].at(1) >= 0;
      }
      if (!ok) {
        o.fail("d=" + std::to_string(d) + " T=" + std::to_string(T));
      }
    }
  }
  if (o.pass) {
    o.detail = "d=4..8 x T=1..5";
  }
  return o;
}

Outcome encoding_pipeline() {
  Outcome o;
  Rng rng(derive_seed(kDefaultSeed, 7));
  std::uint64_t shifts = 0;
  for (int run = 0; run < 10000 && o.pass; ++run) {
    const int n = 2 + static_cast<int>(rng.below(7));
    Certificate cert;
    try {
      cert = certify_nonnegativity(
          n, 100, [&rng](const ChipState& w, std::size_t) { return random_plan(w, rng); });
    } catch (const std::exception& e) {
      o.fail(std::string("run ") + std::to_string(run) + ": " + e.what());
      break;
    }
    if (!cert.ok()) {
      o.fail("negative label in run " + std::to_string(run));
    }
    for (const auto& s : cert.steps) {
      shifts += s.shifts;
      if (s.labels.min_label() < 0 || static_cast<std::int64_t>(s.shifts) > s.abs_sum_before ||
          !oracle::good_by_definition(s.encoding, s.labels.labels())) {
        o.fail("bad step in run " + std::to_string(run));
      }
      for (Vertex u = 1; u <= n; ++u) {
        for (Vertex v = 1; v <= n; ++v) {
          if (std::abs(s.encoding.weight(u, v)) > n) {
            o.fail("weight out of range in run " + std::to_string(run));
          }
        }
      }
    }
  }
  if (o.pass) {
    o.detail = "10000 runs x 100 steps, " + std::to_string(shifts) + " triangle shifts";
  }
  return o;
}

Outcome make_good_equivalence() {
  Outcome o;
  std::uint64_t checked = 0;
  for (int n = 2; n <= 4; ++n) {
    oracle::for_each_weight_matrix(n, [&](const std::vector<int>& entries) {
      for (Label total = 0; total < n; ++total) {
        DigraphEncoding enc(n, total);
        std::size_t p = 0;
        for (Vertex u = 1; u <= n; ++u) {
          for (Vertex v = u + 1; v <= n; ++v, ++p) {
            enc.set_weight(u, v, entries[p]);
          }
        }
        if (!enc.defects().empty()) {
          continue;
        }
        ++checked;
        const ChipState w = decode(enc);
        const Repair r = make_good_traced(enc, w);
        if (!(decode(r.encoding) == w) || !is_good(r.encoding, w) ||
            !oracle::good_by_definition(r.encoding, w.labels())) {
          o.fail("n=" + std::to_string(n));
        }
      }
    });
  }
  if (o.pass) {
    o.detail = std::to_string(checked) + " encodings with n<=4";
  }
  return o;
}

Graph random_connected_graph(Rng& rng, int n) {
  Graph g(n);
  for (Vertex v = 2; v <= n; ++v) {
    g.add_edge(v, 1 + static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(v - 1))));
  }
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = u + 1; v <= n; ++v) {
      if (!g.adjacent(u, v) && rng.coin()) {
        g.add_edge(u, v);
      }
    }
  }
  return g;
}

Outcome coupling_domination() {
  Outcome o;
  Rng rng(derive_seed(kDefaultSeed, 9));
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(6));
    const Graph g = random_connected_graph(rng, n);
    std::vector<Label> labels(static_cast<std::size_t>(n));
    for (auto& x : labels) {
      x = rng.between(0, 2 * n);
    }
    std::vector<TransferPlan> plans;
    ChipState w(labels);
    for (int t = 0; t < 50; ++t) {
      plans.push_back(random_plan(w, rng, &g));
      w = weak_step(w, plans.back());
    }
    const Vertex k = 1 + static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
    try {
      const CoupledEvolution e = couple_evolution(ChipState(labels), plans, k);
      for (std::size_t t = 0; t < e.original.size(); ++t) {
        const auto& c = e.coupled[t];
        if (!dominates(e.original[t], c.state, c.permutation) ||
            c.state.total() + 1 != e.original[t].total()) {
          o.fail("trial " + std::to_string(trial) + " t=" + std::to_string(t));
        }
      }
    } catch (const std::exception& ex) {
      o.fail("trial " + std::to_string(trial) + ": " + ex.what());
    }
  }
  if (o.pass) {
    o.detail = "1000 trials x 51 states";
  }
  return o;
}

Outcome period_dichotomy() {
  Rng rng(derive_seed(kDefaultSeed, 10));
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(10));
    const Graph g = random_connected_graph(rng, n);
    std::vector<Label> labels(static_cast<std::size_t>(n));
    for (auto& x : labels) {
      x = rng.between(0, 2 * n);
    }
    record_period(detect_period(g, ChipState(labels), kDefaultGuard));
  }
  Outcome o;
  std::ostringstream seen;
  for (const auto& [k, count] : g_periods) {
    seen << " k=" << k << ":" << count;
    if (k != 1 && k != 2) {
      o.fail("period " + std::to_string(k) + " observed");
    }
  }
  if (g_period_runs == 0) {
    o.fail("no periods recorded");
  }
  if (o.pass) {
    o.detail = std::to_string(g_period_runs) + " runs," + seen.str();
  }
  return o;
}

Outcome determinism() {
  Outcome o;
  const std::vector<std::string> commands{
      "search tightness --n 4 --min 1 --collect-all",
      "search g3 --start 2 --window 1 --radius 3 --budget 3000 --max-vertices 5 --seed 5",
      "search gdk --d 5 --start 2 --window 6 --radius 2 --scheme full --budget 2000 --collect-all",
      "certify --n 6 --random --steps 200 --seed 11",
      "construct cubic-tree",
  };
  for (const auto& cmd : commands) {
    std::string a;
    std::string b;
    const int ca = run_cli(cmd, &a);
    const int cb = run_cli(cmd, &b);
    if (ca != cb || a != b || a.empty()) {
      o.fail("differs: " + cmd);
    }
  }
  std::string serial;
  std::string parallel;
  run_cli("search tightness --n 5 --min 1 --collect-all", &serial);
  run_cli("search tightness --n 5 --min 1 --collect-all --workers 4", &parallel);
  if (serial != parallel || serial.empty()) {
    o.fail("parallel report differs from serial");
  }
  if (o.pass) {
    o.detail = std::to_string(commands.size() + 1) + " suites byte-identical on rerun";
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"C1 star tightness", star_tightness},
      {"C2 exhaustive non-negativity window", exhaustive_window},
      {"C3 boundary window witnesses", boundary_window},
      {"C4 paths and cycles", paths_cycles},
      {"C5 cubic tree figure", cubic_figure},
      {"C6 layered family", layered_family},
      {"C7 encoding pipeline", encoding_pipeline},
      {"C8 make_good equivalence", make_good_equivalence},
      {"C9 coupling domination", coupling_domination},
      {"C10 period dichotomy", period_dichotomy},
      {"C11 determinism", determinism},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome out;
    try {
      out = fn();
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    std::cout << (out.pass ? "[PASS] " : "[FAIL] ") << name << ": " << out.detail << std::endl;
    failures += out.pass ? 0 : 1;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
