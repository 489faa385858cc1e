#include "diffusion/coupling.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <sstream>

namespace diffusion {

Permutation Permutation::identity(int n) {
  std::vector<Vertex> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), 1);
  return Permutation(std::move(image));
}

Permutation Permutation::transposition(int n, Vertex a, Vertex b) {
  Permutation p = identity(n);
  std::swap(p.image_.at(static_cast<std::size_t>(a - 1)), p.image_.at(static_cast<std::size_t>(b - 1)));
  return p;
}

Permutation Permutation::compose(const Permutation& inner) const {
  if (inner.size() != size()) {
    throw std::invalid_argument("composing permutations of different sizes");
  }
  std::vector<Vertex> image(image_.size());
  for (Vertex u = 1; u <= size(); ++u) {
    image[static_cast<std::size_t>(u - 1)] = (*this)(inner(u));
  }
  return Permutation(std::move(image));
}

Permutation Permutation::inverse() const {
  std::vector<Vertex> image(image_.size());
  for (Vertex u = 1; u <= size(); ++u) {
    image[static_cast<std::size_t>((*this)(u) - 1)] = u;
  }
  return Permutation(std::move(image));
}

std::string Permutation::cycles() const {
  std::string out;
  std::vector<char> seen(image_.size(), 0);
  for (Vertex start = 1; start <= size(); ++start) {
    if (seen[start - 1] || (*this)(start) == start) {
      continue;
    }
    out += '(';
    Vertex v = start;
    bool first = true;
    while (!seen[v - 1]) {
      seen[v - 1] = 1;
      if (!first) {
        out += ' ';
      }
      out += std::to_string(v);
      first = false;
      v = (*this)(v);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

namespace {

void require_antisymmetric(const TransferPlan& plan) {
  for (const auto& [pair, value] : plan.entries()) {
    if (value < -1 || value > 1 || plan.get(pair.second, pair.first) != -value) {
      throw std::invalid_argument("acyclic_reduce needs an antisymmetric {-1,0,1} plan");
    }
  }
}

// Shortest directed cycle of +1 transfers through `start`, as a vertex list.
std::optional<std::vector<Vertex>> shortest_cycle_through(const TransferPlan& plan, Vertex start) {
  const int n = plan.vertex_count();
  std::vector<Vertex> parent(static_cast<std::size_t>(n + 1), 0);
  std::deque<Vertex> queue{start};
  parent[start] = start;
  while (!queue.empty()) {
    const Vertex a = queue.front();
    queue.pop_front();
    for (Vertex b = 1; b <= n; ++b) {
      if (plan.get(a, b) != 1) {
        continue;
      }
      if (b == start) {
        std::vector<Vertex> cycle;
        for (Vertex x = a; x != start; x = parent[x]) {
          cycle.push_back(x);
        }
        cycle.push_back(start);
        std::reverse(cycle.begin(), cycle.end());
        return cycle;
      }
      if (parent[b] == 0) {
        parent[b] = a;
        queue.push_back(b);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

TransferPlan acyclic_reduce(const TransferPlan& plan) {
  require_antisymmetric(plan);
  TransferPlan out = plan;
  const int n = out.vertex_count();
  bool changed = true;
  while (changed) {
    changed = false;
    for (Vertex s = 1; s <= n && !changed; ++s) {
      if (auto cycle = shortest_cycle_through(out, s)) {
        for (std::size_t i = 0; i < cycle->size(); ++i) {
          out.clear((*cycle)[i], (*cycle)[(i + 1) % cycle->size()]);
        }
        changed = true;
      }
    }
  }
  return out;
}

std::vector<Vertex> coupling_order(const ChipState& w, const TransferPlan& acyclic_plan) {
  const int n = w.size();
  std::vector<Vertex> by_label(static_cast<std::size_t>(n));
  std::iota(by_label.begin(), by_label.end(), 1);
  std::stable_sort(by_label.begin(), by_label.end(),
                   [&w](Vertex a, Vertex b) { return w.at(a) > w.at(b); });

  // Within a block of equal labels transfers may go either way; order the
  // block topologically, smallest admissible vertex first.
  std::vector<Vertex> order;
  order.reserve(by_label.size());
  std::size_t i = 0;
  while (i < by_label.size()) {
    std::size_t j = i;
    while (j < by_label.size() && w.at(by_label[j]) == w.at(by_label[i])) {
      ++j;
    }
    std::vector<Vertex> block(by_label.begin() + static_cast<std::ptrdiff_t>(i),
                              by_label.begin() + static_cast<std::ptrdiff_t>(j));
    std::sort(block.begin(), block.end());
    while (!block.empty()) {
      auto pick = std::find_if(block.begin(), block.end(), [&](Vertex v) {
        return std::none_of(block.begin(), block.end(),
                            [&](Vertex u) { return acyclic_plan.get(u, v) == 1; });
      });
      if (pick == block.end()) {
        throw std::invalid_argument("coupling_order needs an acyclic plan");
      }
      order.push_back(*pick);
      block.erase(pick);
    }
    i = j;
  }
  return order;
}

CoupledStep couple_one_step(const ChipState& w, const TransferPlan& plan, Vertex k) {
  const int n = w.size();
  if (k < 1 || k > n) {
    throw std::out_of_range("removal vertex out of range");
  }
  if (auto violations = validate_plan(w, plan); !violations.empty()) {
    throw PlanError(std::move(violations));
  }
  const TransferPlan reduced = acyclic_reduce(plan);
  const std::vector<Vertex> order = coupling_order(w, reduced);

  Vertex k_last = k;
  for (Vertex v : order) {
    if (w.at(v) == w.at(k)) {
      k_last = v;
    }
  }
  const Permutation p = Permutation::transposition(n, k, k_last);

  TransferPlan derived(n);
  for (const auto& [pair, value] : reduced.entries()) {
    derived.set_raw(p(pair.first), p(pair.second), value);
  }
  ChipState next_state;
  try {
    next_state = weak_step(w.without_chip(k), derived);
  } catch (const PlanError& e) {
    throw std::logic_error(std::string("coupled plan is not legal: ") + e.what());
  }
  const ChipState original_next = weak_step(w, plan);
  if (!dominates(original_next, next_state, p)) {
    throw std::logic_error("coupled state fails the domination inequality");
  }
  if (next_state.at(p(k_last)) != original_next.at(k_last) - 1) {
    throw std::logic_error("coupled state lost track of the removed chip");
  }
  return CoupledStep{p, std::move(derived), std::move(next_state), k_last};
}

bool dominates(const ChipState& original, const ChipState& coupled, const Permutation& p) {
  if (original.size() != coupled.size() || p.size() != original.size()) {
    return false;
  }
  for (Vertex u = 1; u <= original.size(); ++u) {
    if (coupled.at(p(u)) > original.at(u)) {
      return false;
    }
  }
  return true;
}

CoupledEvolution couple_evolution(const ChipState& w0, const std::vector<TransferPlan>& plans,
                                  Vertex removal) {
  const int n = w0.size();
  if (removal < 1 || removal > n) {
    throw std::out_of_range("removal vertex out of range");
  }
  CoupledEvolution ev;
  ev.original.push_back(w0);
  ev.coupled.push_back(
      CoupledStep{Permutation::identity(n), TransferPlan(n), w0.without_chip(removal), removal});

  for (std::size_t t = 0; t < plans.size(); ++t) {
    const ChipState& cur = ev.original.back();
    const CoupledStep& prev = ev.coupled.back();
    if (auto violations = validate_plan(cur, plans[t]); !violations.empty()) {
      throw PlanError(std::move(violations), t);
    }
    CoupledStep local = couple_one_step(cur, plans[t], prev.deficient);

    // Move the local construction into the coupled coordinates of time t.
    TransferPlan plan(n);
    for (const auto& [pair, value] : local.plan.entries()) {
      plan.set_raw(prev.permutation(pair.first), prev.permutation(pair.second), value);
    }
    ChipState state = weak_step(prev.state, plan);
    Permutation perm = prev.permutation.compose(local.permutation);

    ev.original.push_back(weak_step(cur, plans[t]));
    if (!dominates(ev.original.back(), state, perm)) {
      throw std::logic_error("coupled evolution fails the domination inequality at step " +
                             std::to_string(t + 1));
    }
    ev.coupled.push_back(CoupledStep{std::move(perm), std::move(plan), std::move(state),
                                     local.deficient});
  }
  return ev;
}

std::vector<TransferPlan> coupled_plans(const CoupledEvolution& evolution) {
  std::vector<TransferPlan> out;
  for (std::size_t t = 1; t < evolution.coupled.size(); ++t) {
    out.push_back(evolution.coupled[t].plan);
  }
  return out;
}

std::string format_coupling(const CoupledEvolution& evolution) {
  std::ostringstream out;
  for (std::size_t t = 0; t < evolution.coupled.size(); ++t) {
    out << "t=" << t << " P=" << evolution.coupled[t].permutation.cycles()
        << " original=" << format_state(evolution.original[t])
        << " coupled=" << format_state(evolution.coupled[t].state) << '\n';
  }
  return out.str();
}

}  // namespace diffusion
