#pragma once

#include <string>
#include <vector>

#include "diffusion/engine.hpp"

namespace diffusion {

// Bijection on 1..n; image(u) is the vertex u is sent to.
class Permutation {
 public:
  static Permutation identity(int n);
  static Permutation transposition(int n, Vertex a, Vertex b);

  int size() const noexcept { return static_cast<int>(image_.size()); }
  Vertex operator()(Vertex u) const { return image_.at(static_cast<std::size_t>(u - 1)); }

  // (this o inner)(u) = this(inner(u))
  Permutation compose(const Permutation& inner) const;
  Permutation inverse() const;

  // Cycle notation without fixed points, e.g. "(1 3)(2 4 5)"; "()" for the
  // identity.
  std::string cycles() const;

  bool operator==(const Permutation&) const = default;

 private:
  explicit Permutation(std::vector<Vertex> image) : image_(std::move(image)) {}
  std::vector<Vertex> image_;
};

// Same net effect on every vertex, with no directed cycle of +1 transfers.
// Cycles are cancelled one at a time, always the shortest cycle through the
// lowest-numbered vertex that lies on one.
TransferPlan acyclic_reduce(const TransferPlan& plan);

// Order of vertices used by the coupling: labels non-increasing and no
// transfer of the (acyclic) plan goes from a later vertex to an earlier one.
// Ties are broken by vertex number among the currently admissible vertices.
std::vector<Vertex> coupling_order(const ChipState& w, const TransferPlan& acyclic_plan);

struct CoupledStep {
  Permutation permutation;  // P: coupled[P(u)] <= original[u]
  TransferPlan plan;        // plan applied to the coupled state (coupled coordinates)
  ChipState state;          // coupled state after the step
  // Vertex u of the original with coupled[P(u)] == original[u] - 1; every
  // other vertex is matched exactly.
  Vertex deficient;
};

// One step of the chip-removal coupling. Given a legal plan for w and a
// vertex k losing one chip, builds the plan for w - e_k by swapping k with
// the last vertex k' (in coupling_order) that has the same label as k, and
// relabelling the acyclic plan through that transposition. Throws PlanError
// if the plan is illegal; the domination inequality is checked before
// returning.
CoupledStep couple_one_step(const ChipState& w, const TransferPlan& plan, Vertex k);

struct CoupledEvolution {
  std::vector<ChipState> original;  // original[t]
  std::vector<CoupledStep> coupled; // coupled[t]; coupled[0] holds w0 - e_removal
};

// Chains couple_one_step along a plan sequence, composing permutations so
// that coupled[t].state[P_t(u)] <= original[t][u] at every t. A plan that is
// illegal for the original evolution throws PlanError with its step index.
CoupledEvolution couple_evolution(const ChipState& w0, const std::vector<TransferPlan>& plans,
                                  Vertex removal);

// Plans of the coupled evolution, in coupled coordinates, suitable for
// chaining a further removal.
std::vector<TransferPlan> coupled_plans(const CoupledEvolution& evolution);

// coupled[P(u)] <= original[u] for all u.
bool dominates(const ChipState& original, const ChipState& coupled, const Permutation& p);

// Per step: "t=<k> P=<cycles> original=<csv> coupled=<csv>".
std::string format_coupling(const CoupledEvolution& evolution);

}  // namespace diffusion
