#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "diffusion/graph.hpp"
#include "diffusion/random.hpp"

namespace diffusion {

using Label = std::int64_t;

inline constexpr std::size_t kDefaultGuard = 10'000;

// Chip count on every vertex at one instant. Storage is 0-based; at() and
// set() take 1-based vertices.
class ChipState {
 public:
  ChipState() = default;
  explicit ChipState(std::vector<Label> labels) : labels_(std::move(labels)) {}

  static ChipState constant(int n, Label value) {
    return ChipState(std::vector<Label>(static_cast<std::size_t>(n), value));
  }

  int size() const noexcept { return static_cast<int>(labels_.size()); }
  Label at(Vertex v) const { return labels_.at(static_cast<std::size_t>(v - 1)); }
  void set(Vertex v, Label value) { labels_.at(static_cast<std::size_t>(v - 1)) = value; }

  const std::vector<Label>& labels() const noexcept { return labels_; }
  std::vector<Label>& labels() noexcept { return labels_; }

  Label total() const;
  Label min_label() const;
  Label max_label() const;

  // Copy with one chip taken from v.
  ChipState without_chip(Vertex v) const;

  bool operator==(const ChipState&) const = default;

 private:
  std::vector<Label> labels_;
};

// Comma-separated labels in vertex order.
std::string format_state(const ChipState& w);
ChipState parse_state(std::string_view csv);

// One step of choices in the weak game. get(u, v) = +1 means one chip moves
// from u to v. Entries are stored per ordered pair so that malformed plans
// (asymmetric, out of range) can be represented and reported by
// validate_plan; transfer() writes both entries of a pair consistently.
class TransferPlan {
 public:
  using Entries = std::map<std::pair<Vertex, Vertex>, int>;

  explicit TransferPlan(int n) : n_(n) {}

  int vertex_count() const noexcept { return n_; }

  int get(Vertex u, Vertex v) const;
  void set_raw(Vertex u, Vertex v, int value);
  void transfer(Vertex from, Vertex to);
  void clear(Vertex u, Vertex v);

  bool empty() const noexcept { return entries_.empty(); }
  const Entries& entries() const noexcept { return entries_; }

  // Sum over u of get(u, v).
  int net_inflow(Vertex v) const;

  bool operator==(const TransferPlan&) const = default;

 private:
  int n_;
  Entries entries_;
};

// Transfers as "u>v" tokens, sorted; "." for the empty plan.
std::string format_plan(const TransferPlan& plan);

// Inverse of format_plan for an n-vertex plan. Tokens naming vertices out of
// range are kept so that validate_plan can report them; malformed tokens
// throw ParseError.
TransferPlan parse_plan(int n, std::string_view text);

// One plan per non-blank line; '#' starts a comment line.
std::vector<TransferPlan> parse_plans(int n, std::string_view text);

struct PlanViolation {
  enum class Kind { VertexOutOfRange, SelfTransfer, ValueOutOfRange, Antisymmetry, Uphill };

  Vertex u;
  Vertex v;
  Kind kind;

  bool operator==(const PlanViolation&) const = default;
};

std::string describe(const PlanViolation& violation);

class PlanError : public std::invalid_argument {
 public:
  PlanError(std::vector<PlanViolation> violations, std::size_t step = 0);

  const std::vector<PlanViolation>& violations() const noexcept { return violations_; }
  // Index of the offending plan within a sequence (0 for a lone plan).
  std::size_t step() const noexcept { return step_; }

 private:
  std::vector<PlanViolation> violations_;
  std::size_t step_;
};

class LabelOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Empty result means the plan is legal for w.
std::vector<PlanViolation> validate_plan(const ChipState& w, const TransferPlan& plan);

// Deterministic diffusion rule: every unit of multiplicity between two
// vertices with different labels moves one chip from the larger to the
// smaller.
ChipState step(const Graph& g, const ChipState& w);

// Allocation-free variant used by the search loops; `out` must not alias `in`.
void step_into(const Graph& g, std::span<const Label> in, std::span<Label> out);

struct Trajectory {
  std::vector<ChipState> states;

  std::size_t length() const noexcept { return states.size(); }
  const ChipState& at(std::size_t t) const { return states.at(t); }
  const ChipState& back() const { return states.back(); }
};

Trajectory simulate(const Graph& g, const ChipState& w0, std::size_t steps);

// One "t=<k> <csv>" line per state.
std::string format_trajectory(const Trajectory& trajectory);

struct PeriodReport {
  std::size_t preperiod;  // T
  int period;             // k
  Label min_label_seen;   // over times 0..T+k, hence over the whole evolution

  bool operator==(const PeriodReport&) const = default;
};

struct TimedOut {
  std::size_t guard;
  Label min_label_seen;

  bool operator==(const TimedOut&) const = default;
};

using PeriodOutcome = std::variant<PeriodReport, TimedOut>;

// Least T <= guard with state(T) == state(T+1) (k = 1) or
// state(T) == state(T+2) (k = 2).
PeriodOutcome detect_period(const Graph& g, const ChipState& w0, std::size_t guard = kDefaultGuard);

struct FirstNegative {
  std::size_t time;
  Vertex vertex;  // smallest vertex negative at `time`
};

// First time any label is negative, looking at times 0..horizon.
std::optional<FirstNegative> first_negative(const Graph& g, const ChipState& w0,
                                            std::size_t horizon);

ChipState weak_step(const ChipState& w, const TransferPlan& plan);

// Embedding of the diffusion rule into the weak game (simple graphs only).
TransferPlan plan_from_graph(const Graph& g, const ChipState& w);

// Uniformly random legal plan for w. With a graph, only adjacent pairs may
// transfer; otherwise every pair may.
TransferPlan random_plan(const ChipState& w, Rng& rng, const Graph* restrict_to = nullptr);

}  // namespace diffusion
