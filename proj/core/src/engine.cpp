#include "diffusion/engine.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "text_util.hpp"

namespace diffusion {

namespace {

Label checked_add(Label a, Label b) {
  Label out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw LabelOverflow("label arithmetic overflowed");
  }
  return out;
}

}  // namespace

Label ChipState::total() const {
  Label sum = 0;
  for (Label x : labels_) {
    sum = checked_add(sum, x);
  }
  return sum;
}

Label ChipState::min_label() const {
  if (labels_.empty()) {
    throw std::logic_error("empty state has no minimum");
  }
  return *std::min_element(labels_.begin(), labels_.end());
}

Label ChipState::max_label() const {
  if (labels_.empty()) {
    throw std::logic_error("empty state has no maximum");
  }
  return *std::max_element(labels_.begin(), labels_.end());
}

ChipState ChipState::without_chip(Vertex v) const {
  ChipState out = *this;
  out.set(v, checked_add(at(v), -1));
  return out;
}

std::string format_state(const ChipState& w) {
  std::string out;
  for (std::size_t i = 0; i < w.labels().size(); ++i) {
    if (i) {
      out += ',';
    }
    out += std::to_string(w.labels()[i]);
  }
  return out;
}

ChipState parse_state(std::string_view csv) {
  csv = detail::trim(csv);
  if (csv.empty()) {
    throw ParseError(1, "empty label list");
  }
  std::vector<Label> labels;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = csv.find(',', start);
    const auto field = detail::trim(csv.substr(start, comma == std::string_view::npos
                                                          ? std::string_view::npos
                                                          : comma - start));
    const auto value = detail::parse_int<Label>(field);
    if (!value) {
      throw ParseError(1, "malformed label \"" + std::string(field) + "\"");
    }
    labels.push_back(*value);
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  return ChipState(std::move(labels));
}

int TransferPlan::get(Vertex u, Vertex v) const {
  auto it = entries_.find({u, v});
  return it == entries_.end() ? 0 : it->second;
}

void TransferPlan::set_raw(Vertex u, Vertex v, int value) {
  if (value == 0) {
    entries_.erase({u, v});
  } else {
    entries_[{u, v}] = value;
  }
}

void TransferPlan::transfer(Vertex from, Vertex to) {
  if (from < 1 || from > n_ || to < 1 || to > n_ || from == to) {
    throw std::out_of_range("transfer " + std::to_string(from) + ">" + std::to_string(to) +
                            " not between distinct vertices of 1.." + std::to_string(n_));
  }
  set_raw(from, to, 1);
  set_raw(to, from, -1);
}

void TransferPlan::clear(Vertex u, Vertex v) {
  entries_.erase({u, v});
  entries_.erase({v, u});
}

int TransferPlan::net_inflow(Vertex v) const {
  int sum = 0;
  for (const auto& [pair, value] : entries_) {
    if (pair.second == v) {
      sum += value;
    }
  }
  return sum;
}

std::string format_plan(const TransferPlan& plan) {
  std::string out;
  for (const auto& [pair, value] : plan.entries()) {
    if (value == 1) {
      if (!out.empty()) {
        out += ' ';
      }
      out += std::to_string(pair.first) + ">" + std::to_string(pair.second);
    }
  }
  return out.empty() ? "." : out;
}

namespace {

TransferPlan parse_plan_line(int n, std::string_view text, std::size_t line_no) {
  TransferPlan plan(n);
  const auto tokens = detail::split_ws(text);
  if (tokens.size() == 1 && tokens[0] == ".") {
    return plan;
  }
  for (const auto& token : tokens) {
    const auto arrow = token.find('>');
    const auto from = arrow == std::string_view::npos ? std::nullopt
                                                      : detail::parse_int<int>(token.substr(0, arrow));
    const auto to = arrow == std::string_view::npos ? std::nullopt
                                                    : detail::parse_int<int>(token.substr(arrow + 1));
    if (!from || !to) {
      throw ParseError(line_no, "bad transfer token '" + std::string(token) + "', expected u>v");
    }
    plan.set_raw(*from, *to, 1);
    if (*from != *to) {
      plan.set_raw(*to, *from, -1);
    }
  }
  return plan;
}

}  // namespace

TransferPlan parse_plan(int n, std::string_view text) { return parse_plan_line(n, text, 1); }

std::vector<TransferPlan> parse_plans(int n, std::string_view text) {
  std::vector<TransferPlan> plans;
  const auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = detail::trim(lines[i]);
    if (line.empty() || line.front() == '#') {
      continue;
    }
    plans.push_back(parse_plan_line(n, line, i + 1));
  }
  return plans;
}

std::string describe(const PlanViolation& violation) {
  const std::string pair =
      "(" + std::to_string(violation.u) + "," + std::to_string(violation.v) + ")";
  switch (violation.kind) {
    case PlanViolation::Kind::VertexOutOfRange:
      return pair + ": vertex out of range";
    case PlanViolation::Kind::SelfTransfer:
      return pair + ": transfer from a vertex to itself";
    case PlanViolation::Kind::ValueOutOfRange:
      return pair + ": value outside {-1,0,1}";
    case PlanViolation::Kind::Antisymmetry:
      return pair + ": d(u,v) != -d(v,u)";
    case PlanViolation::Kind::Uphill:
      return pair + ": sends a chip uphill";
  }
  return pair;
}

namespace {

std::string join_violations(const std::vector<PlanViolation>& violations, std::size_t step) {
  std::string out = "invalid transfer plan at step " + std::to_string(step);
  for (const auto& v : violations) {
    out += "; " + describe(v);
  }
  return out;
}

}  // namespace

PlanError::PlanError(std::vector<PlanViolation> violations, std::size_t step)
    : std::invalid_argument(join_violations(violations, step)),
      violations_(std::move(violations)),
      step_(step) {}

std::vector<PlanViolation> validate_plan(const ChipState& w, const TransferPlan& plan) {
  using Kind = PlanViolation::Kind;
  std::vector<PlanViolation> out;
  auto report = [&out](Vertex u, Vertex v, Kind kind) {
    const PlanViolation pv{u, v, kind};
    if (std::find(out.begin(), out.end(), pv) == out.end()) {
      out.push_back(pv);
    }
  };
  const int n = w.size();
  if (plan.vertex_count() != n) {
    throw std::invalid_argument("plan and state disagree on vertex count");
  }
  for (const auto& [pair, value] : plan.entries()) {
    const auto [u, v] = pair;
    if (u < 1 || u > n || v < 1 || v > n) {
      report(u, v, Kind::VertexOutOfRange);
      continue;
    }
    if (u == v) {
      report(u, v, Kind::SelfTransfer);
      continue;
    }
    if (value < -1 || value > 1) {
      report(u, v, Kind::ValueOutOfRange);
    }
    if (plan.get(v, u) != -value) {
      report(std::min(u, v), std::max(u, v), Kind::Antisymmetry);
    }
    // Report uphill moves from the sender's side.
    const Label diff = w.at(u) - w.at(v);
    if (value > 0 && diff < 0) {
      report(u, v, Kind::Uphill);
    } else if (value < 0 && diff > 0) {
      report(v, u, Kind::Uphill);
    }
  }
  return out;
}

void step_into(const Graph& g, std::span<const Label> in, std::span<Label> out) {
  const int n = g.vertex_count();
  for (Vertex v = 1; v <= n; ++v) {
    const Label own = in[v - 1];
    Label delta = 0;
    for (const auto& nb : g.neighbours(v)) {
      const Label other = in[nb.vertex - 1];
      if (other > own) {
        delta += nb.mult;
      } else if (other < own) {
        delta -= nb.mult;
      }
    }
    out[v - 1] = checked_add(own, delta);
  }
}

ChipState step(const Graph& g, const ChipState& w) {
  if (w.size() != g.vertex_count()) {
    throw std::invalid_argument("state length does not match vertex count");
  }
  std::vector<Label> next(w.labels().size());
  step_into(g, w.labels(), next);
  return ChipState(std::move(next));
}

Trajectory simulate(const Graph& g, const ChipState& w0, std::size_t steps) {
  Trajectory traj;
  traj.states.reserve(steps + 1);
  traj.states.push_back(w0);
  for (std::size_t t = 0; t < steps; ++t) {
    traj.states.push_back(step(g, traj.states.back()));
  }
  return traj;
}

std::string format_trajectory(const Trajectory& trajectory) {
  std::ostringstream out;
  for (std::size_t t = 0; t < trajectory.length(); ++t) {
    out << "t=" << t << ' ' << format_state(trajectory.at(t)) << '\n';
  }
  return out.str();
}

PeriodOutcome detect_period(const Graph& g, const ChipState& w0, std::size_t guard) {
  if (w0.size() != g.vertex_count()) {
    throw std::invalid_argument("state length does not match vertex count");
  }
  const std::size_t n = w0.labels().size();
  // Rolling window over times t, t+1, t+2.
  std::vector<Label> a = w0.labels();
  std::vector<Label> b(n);
  std::vector<Label> c(n);
  step_into(g, a, b);
  step_into(g, b, c);

  auto min_of = [](const std::vector<Label>& s) { return *std::min_element(s.begin(), s.end()); };
  Label min_prefix = min_of(a);  // over times 0..t
  for (std::size_t t = 0; t <= guard; ++t) {
    const Label min_b = min_of(b);
    if (a == b) {
      return PeriodReport{t, 1, std::min(min_prefix, min_b)};
    }
    const Label min_c = min_of(c);
    if (a == c) {
      return PeriodReport{t, 2, std::min({min_prefix, min_b, min_c})};
    }
    if (t == guard) {
      return TimedOut{guard, std::min({min_prefix, min_b, min_c})};
    }
    min_prefix = std::min(min_prefix, min_b);
    std::swap(a, b);
    std::swap(b, c);
    step_into(g, b, c);
  }
  return TimedOut{guard, min_prefix};
}

std::optional<FirstNegative> first_negative(const Graph& g, const ChipState& w0,
                                            std::size_t horizon) {
  if (w0.size() != g.vertex_count()) {
    throw std::invalid_argument("state length does not match vertex count");
  }
  std::vector<Label> cur = w0.labels();
  std::vector<Label> next(cur.size());
  for (std::size_t t = 0;; ++t) {
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (cur[i] < 0) {
        return FirstNegative{t, static_cast<Vertex>(i + 1)};
      }
    }
    if (t == horizon) {
      return std::nullopt;
    }
    step_into(g, cur, next);
    std::swap(cur, next);
  }
}

ChipState weak_step(const ChipState& w, const TransferPlan& plan) {
  auto violations = validate_plan(w, plan);
  if (!violations.empty()) {
    throw PlanError(std::move(violations));
  }
  ChipState out = w;
  for (const auto& [pair, value] : plan.entries()) {
    const Vertex v = pair.second;
    out.set(v, checked_add(out.at(v), value));
  }
  return out;
}

TransferPlan plan_from_graph(const Graph& g, const ChipState& w) {
  if (!g.is_simple()) {
    throw std::invalid_argument("plan_from_graph is defined for simple graphs only");
  }
  if (w.size() != g.vertex_count()) {
    throw std::invalid_argument("state length does not match vertex count");
  }
  TransferPlan plan(g.vertex_count());
  for (Vertex u = 1; u <= g.vertex_count(); ++u) {
    for (const auto& nb : g.neighbours(u)) {
      const Vertex v = nb.vertex;
      if (u < v && w.at(u) != w.at(v)) {
        if (w.at(u) > w.at(v)) {
          plan.transfer(u, v);
        } else {
          plan.transfer(v, u);
        }
      }
    }
  }
  return plan;
}

TransferPlan random_plan(const ChipState& w, Rng& rng, const Graph* restrict_to) {
  const int n = w.size();
  TransferPlan plan(n);
  auto choose = [&](Vertex u, Vertex v) {
    const Label a = w.at(u);
    const Label b = w.at(v);
    if (a > b) {
      if (rng.coin()) {
        plan.transfer(u, v);
      }
    } else if (a < b) {
      if (rng.coin()) {
        plan.transfer(v, u);
      }
    } else {
      switch (rng.below(3)) {
        case 1:
          plan.transfer(u, v);
          break;
        case 2:
          plan.transfer(v, u);
          break;
        default:
          break;
      }
    }
  };
  if (restrict_to) {
    if (restrict_to->vertex_count() != n) {
      throw std::invalid_argument("graph and state disagree on vertex count");
    }
    for (Vertex u = 1; u <= n; ++u) {
      for (const auto& nb : restrict_to->neighbours(u)) {
        if (u < nb.vertex) {
          choose(u, nb.vertex);
        }
      }
    }
  } else {
    for (Vertex u = 1; u <= n; ++u) {
      for (Vertex v = u + 1; v <= n; ++v) {
        choose(u, v);
      }
    }
  }
  return plan;
}

}  // namespace diffusion
