#include "diffusion/encoding.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>
#include <sstream>

namespace diffusion {

namespace {

Label floor_div(Label a, Label b) {
  Label q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) {
    --q;
  }
  return q;
}

Label ceil_div(Label a, Label b) { return -floor_div(-a, b); }

}  // namespace

DigraphEncoding::DigraphEncoding(int n, Label total)
    : n_(n), total_(total), w_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0) {
  if (n < 1) {
    throw std::invalid_argument("encoding needs at least one vertex");
  }
}

void DigraphEncoding::set_weight(Vertex u, Vertex v, int value) {
  if (u < 1 || u > n_ || v < 1 || v > n_) {
    throw std::out_of_range("encoding vertex out of range");
  }
  if (u == v) {
    if (value != 0) {
      throw std::invalid_argument("encoding has no self weights");
    }
    return;
  }
  w_[index(u, v)] = value;
  w_[index(v, u)] = -value;
}

Label DigraphEncoding::column_sum(Vertex v) const {
  Label sum = 0;
  for (Vertex u = 1; u <= n_; ++u) {
    sum += weight(u, v);
  }
  return sum;
}

std::int64_t DigraphEncoding::abs_sum() const {
  std::int64_t sum = 0;
  for (Vertex u = 1; u <= n_; ++u) {
    for (Vertex v = u + 1; v <= n_; ++v) {
      sum += std::abs(weight(u, v));
    }
  }
  return sum;
}

std::vector<std::string> DigraphEncoding::defects() const {
  std::vector<std::string> out;
  for (Vertex u = 1; u <= n_; ++u) {
    for (Vertex v = u + 1; v <= n_; ++v) {
      if (std::abs(weight(u, v)) > n_) {
        out.push_back("weight (" + std::to_string(u) + "," + std::to_string(v) +
                      ") = " + std::to_string(weight(u, v)) + " outside [-n, n]");
      }
    }
  }
  for (Vertex v = 1; v <= n_; ++v) {
    if ((total_ + column_sum(v)) % n_ != 0) {
      out.push_back("label of vertex " + std::to_string(v) + " is not an integer");
    }
  }
  return out;
}

ChipState decode(const DigraphEncoding& enc) {
  const int n = enc.vertex_count();
  std::vector<Label> labels(static_cast<std::size_t>(n));
  for (Vertex v = 1; v <= n; ++v) {
    const Label scaled = enc.total() + enc.column_sum(v);
    if (scaled % n != 0) {
      throw EncodingError("vertex " + std::to_string(v) + " decodes to a non-integer label");
    }
    labels[static_cast<std::size_t>(v - 1)] = scaled / n;
  }
  return ChipState(std::move(labels));
}

DigraphEncoding initial_encoding(int n) {
  if (n < 2) {
    throw std::invalid_argument("initial_encoding needs n >= 2");
  }
  DigraphEncoding enc(n, static_cast<Label>(n) * (n - 2) + 1);
  for (Vertex u = 2; u <= n; ++u) {
    enc.set_weight(u, 1, 1);
  }
  return enc;
}

std::optional<DigraphEncoding> try_encode(const ChipState& w) {
  const int n = w.size();
  if (n < 1) {
    throw std::invalid_argument("cannot encode an empty state");
  }
  const Label total = w.total();
  // Vertex v needs net inflow dev[v] = n * w_v - total across its pairs.
  std::vector<Label> dev(static_cast<std::size_t>(n));
  Label demand = 0;
  for (Vertex v = 1; v <= n; ++v) {
    const Label d = static_cast<Label>(n) * w.at(v) - total;
    if (std::abs(d) > static_cast<Label>(n) * (n - 1)) {
      return std::nullopt;
    }
    dev[static_cast<std::size_t>(v - 1)] = d;
    if (d > 0) {
      demand += d;
    }
  }

  // Max flow on the complete graph plus source/sink (Edmonds-Karp, dense).
  const int source = 0;
  const int sink = n + 1;
  const int nodes = n + 2;
  std::vector<Label> cap(static_cast<std::size_t>(nodes * nodes), 0);
  std::vector<Label> flow(cap.size(), 0);
  auto at = [nodes](int a, int b) { return static_cast<std::size_t>(a * nodes + b); };
  for (int u = 1; u <= n; ++u) {
    for (int v = 1; v <= n; ++v) {
      if (u != v) {
        cap[at(u, v)] = n;
      }
    }
    const Label d = dev[static_cast<std::size_t>(u - 1)];
    if (d < 0) {
      cap[at(source, u)] = -d;
    } else if (d > 0) {
      cap[at(u, sink)] = d;
    }
  }

  Label pushed = 0;
  std::vector<int> parent(static_cast<std::size_t>(nodes));
  while (pushed < demand) {
    std::fill(parent.begin(), parent.end(), -1);
    parent[source] = source;
    std::deque<int> queue{source};
    while (!queue.empty() && parent[sink] < 0) {
      const int a = queue.front();
      queue.pop_front();
      for (int b = 0; b < nodes; ++b) {
        if (parent[b] < 0 && cap[at(a, b)] - flow[at(a, b)] > 0) {
          parent[b] = a;
          queue.push_back(b);
        }
      }
    }
    if (parent[sink] < 0) {
      break;
    }
    Label bottleneck = std::numeric_limits<Label>::max();
    for (int b = sink; b != source; b = parent[b]) {
      bottleneck = std::min(bottleneck, cap[at(parent[b], b)] - flow[at(parent[b], b)]);
    }
    for (int b = sink; b != source; b = parent[b]) {
      flow[at(parent[b], b)] += bottleneck;
      flow[at(b, parent[b])] -= bottleneck;
    }
    pushed += bottleneck;
  }
  if (pushed < demand) {
    return std::nullopt;
  }

  DigraphEncoding enc(n, total);
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = u + 1; v <= n; ++v) {
      enc.set_weight(u, v, static_cast<int>(flow[at(u, v)]));
    }
  }
  return enc;
}

namespace {

void require_decodes_to(const DigraphEncoding& enc, const ChipState& w) {
  if (enc.vertex_count() != w.size() || decode(enc) != w) {
    throw EncodingError("encoding does not decode to the given state");
  }
}

}  // namespace

bool is_good(const DigraphEncoding& enc, const ChipState& w) {
  require_decodes_to(enc, w);
  const int n = enc.vertex_count();
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = 1; v <= n; ++v) {
      if (u != v && w.at(u) >= w.at(v) && enc.weight(u, v) > 0) {
        return false;
      }
    }
  }
  return true;
}

Repair make_good_traced(const DigraphEncoding& enc, const ChipState& w) {
  require_decodes_to(enc, w);
  const int n = enc.vertex_count();
  Repair out{enc, 0, enc.abs_sum(), 0};
  DigraphEncoding& cur = out.encoding;

  auto find_bad = [&]() -> std::optional<std::pair<Vertex, Vertex>> {
    for (Vertex u = 1; u <= n; ++u) {
      for (Vertex v = 1; v <= n; ++v) {
        if (u != v && w.at(u) >= w.at(v) && cur.weight(u, v) > 0) {
          return std::make_pair(u, v);
        }
      }
    }
    return std::nullopt;
  };

  while (auto bad = find_bad()) {
    const auto [u, v] = *bad;
    Vertex pivot = 0;
    for (Vertex x = 1; x <= n; ++x) {
      if (x != u && x != v && cur.weight(x, u) - cur.weight(x, v) > 0) {
        pivot = x;
        break;
      }
    }
    if (pivot == 0) {
      // Impossible for a valid encoding: the decode equations force a pivot.
      throw std::logic_error("make_good: no pivot for bad pair (" + std::to_string(u) + "," +
                             std::to_string(v) + ")");
    }
    const int before = std::abs(cur.weight(u, v)) + std::abs(cur.weight(v, pivot)) +
                       std::abs(cur.weight(pivot, u));
    cur.add_weight(u, v, -1);
    cur.add_weight(v, pivot, -1);
    cur.add_weight(pivot, u, -1);
    const int after = std::abs(cur.weight(u, v)) + std::abs(cur.weight(v, pivot)) +
                      std::abs(cur.weight(pivot, u));
    if (after >= before || std::abs(cur.weight(v, pivot)) > n ||
        std::abs(cur.weight(pivot, u)) > n) {
      throw std::logic_error("make_good: triangle shift did not reduce the absolute sum");
    }
    ++out.shifts;
  }
  out.abs_sum_after = cur.abs_sum();
  return out;
}

DigraphEncoding make_good(const DigraphEncoding& enc, const ChipState& w) {
  return make_good_traced(enc, w).encoding;
}

DigraphEncoding advance(const DigraphEncoding& enc, const ChipState& w, const TransferPlan& plan) {
  const int n = enc.vertex_count();
  if (plan.vertex_count() != n) {
    throw std::invalid_argument("plan and encoding disagree on vertex count");
  }
  auto violations = validate_plan(w, plan);
  if (!violations.empty()) {
    throw PlanError(std::move(violations));
  }
  require_decodes_to(enc, w);
  DigraphEncoding out = enc;
  for (const auto& [pair, value] : plan.entries()) {
    if (value != 1) {
      continue;
    }
    const auto [u, v] = pair;
    const int next = out.weight(u, v) + n;
    if (next > n) {
      throw EncodingError("weight (" + std::to_string(u) + "," + std::to_string(v) +
                          ") leaves [-n, n]; the encoding was not good");
    }
    out.set_weight(u, v, next);
  }
  return out;
}

LabelBounds derived_bounds(const DigraphEncoding& enc) {
  const Label n = enc.vertex_count();
  const Label spread = n * (n - 1);
  return {ceil_div(enc.total() - spread, n), floor_div(enc.total() + spread, n)};
}

Certificate certify_nonnegativity(int n, std::size_t steps, const PlanSource& source) {
  if (n < 2) {
    throw std::invalid_argument("certify_nonnegativity needs n >= 2");
  }
  Certificate cert;
  cert.n = n;
  DigraphEncoding enc = initial_encoding(n);
  ChipState w = decode(enc);
  for (std::size_t t = 0;; ++t) {
    Repair repair = make_good_traced(enc, w);
    cert.steps.push_back(CertificateStep{t, w, repair.encoding, derived_bounds(repair.encoding),
                                         repair.shifts, repair.abs_sum_before});
    for (Vertex v = 1; v <= n; ++v) {
      if (w.at(v) < 0) {
        cert.violation = NegativeLabel{t, v, w.at(v)};
        return cert;
      }
    }
    if (t == steps) {
      break;
    }
    TransferPlan plan = source(w, t);
    auto violations = validate_plan(w, plan);
    if (!violations.empty()) {
      throw PlanError(std::move(violations), t);
    }
    enc = advance(repair.encoding, w, plan);
    w = weak_step(w, plan);
    if (decode(enc) != w) {
      throw std::logic_error("advanced encoding disagrees with the weak step");
    }
  }
  return cert;
}

Certificate certify_nonnegativity(int n, const std::vector<TransferPlan>& plans) {
  return certify_nonnegativity(n, plans.size(), [&plans](const ChipState&, std::size_t t) {
    return plans[t];
  });
}

std::string format_certificate(const Certificate& cert) {
  std::ostringstream out;
  for (const auto& s : cert.steps) {
    out << "t=" << s.time << " lo=" << s.bounds.lo << " labels=" << format_state(s.labels)
        << '\n';
    const int n = s.encoding.vertex_count();
    for (Vertex u = 1; u <= n; ++u) {
      for (Vertex v = u + 1; v <= n; ++v) {
        if (const int L = s.encoding.weight(u, v); L != 0) {
          out << u << ' ' << v << ' ' << L << '\n';
        }
      }
    }
  }
  if (cert.violation) {
    out << "NEGATIVE t=" << cert.violation->time << " v=" << cert.violation->vertex
        << " label=" << cert.violation->label << '\n';
  }
  return out.str();
}

}  // namespace diffusion
