#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "diffusion/engine.hpp"

namespace diffusion {

class EncodingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Antisymmetric pair weights certifying that every label stays within
// (n - 1) of the mean. Weights are kept scaled by n so that the admissible
// range [-1, 1] in steps of 1/n becomes the integers [-n, n]:
//
//   n * w_v = total + sum_u weight(u, v)
//
// where total is the chip count, so the mean is total / n.
class DigraphEncoding {
 public:
  DigraphEncoding(int n, Label total);

  int vertex_count() const noexcept { return n_; }
  Label total() const noexcept { return total_; }

  // Scaled weight L(u, v) = n * lambda_uv.
  int weight(Vertex u, Vertex v) const { return w_[index(u, v)]; }

  // Writes L(u, v) = value and L(v, u) = -value.
  void set_weight(Vertex u, Vertex v, int value);
  void add_weight(Vertex u, Vertex v, int delta) { set_weight(u, v, weight(u, v) + delta); }

  // sum over u of L(u, v)
  Label column_sum(Vertex v) const;

  // sum over u < v of |L(u, v)|
  std::int64_t abs_sum() const;

  // Weights outside [-n, n] or labels that do not divide evenly; empty when
  // the encoding is well-formed.
  std::vector<std::string> defects() const;

  bool operator==(const DigraphEncoding&) const = default;

 private:
  std::size_t index(Vertex u, Vertex v) const {
    return static_cast<std::size_t>(u - 1) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(v - 1);
  }

  int n_;
  Label total_;
  std::vector<int> w_;
};

// Encoded labels. Throws EncodingError if some n * w_v is not a multiple
// of n.
ChipState decode(const DigraphEncoding& enc);

// Encoding of (n-1, n-2, ..., n-2): mean n-2+1/n, weight 1/n from every
// other vertex into vertex 1.
DigraphEncoding initial_encoding(int n);

// Some encoding of w if one exists. Finds a feasible flow on the complete
// graph with capacity n per ordered pair, so the answer is exact.
std::optional<DigraphEncoding> try_encode(const ChipState& w);

// L(u, v) <= 0 whenever w_u >= w_v. Throws EncodingError if enc does not
// decode to w.
bool is_good(const DigraphEncoding& enc, const ChipState& w);

struct Repair {
  DigraphEncoding encoding;
  std::size_t shifts = 0;
  std::int64_t abs_sum_before = 0;
  std::int64_t abs_sum_after = 0;
};

// Turns any encoding of w into a good one by triangle shifts: while a bad
// pair (u, v) exists, pick x with L(x,u) - L(x,v) > 0 and lower L(u,v),
// L(v,x), L(x,u) by one each. Each shift keeps the decoded state and lowers
// abs_sum() by at least one. Bad pairs and pivots are taken in
// lexicographic order.
Repair make_good_traced(const DigraphEncoding& enc, const ChipState& w);
DigraphEncoding make_good(const DigraphEncoding& enc, const ChipState& w);

// Encoding of weak_step(w, plan) obtained by adding n * plan to the weights.
// Requires a good encoding of w; a weight leaving [-n, n] is reported as an
// EncodingError.
DigraphEncoding advance(const DigraphEncoding& enc, const ChipState& w, const TransferPlan& plan);

struct LabelBounds {
  Label lo;
  Label hi;

  bool operator==(const LabelBounds&) const = default;
};

// Integer range [ceil(mu - (n-1)), floor(mu + (n-1))] that any decodable
// label must lie in.
LabelBounds derived_bounds(const DigraphEncoding& enc);

struct CertificateStep {
  std::size_t time;
  ChipState labels;
  DigraphEncoding encoding;  // good encoding of `labels`
  LabelBounds bounds;
  std::size_t shifts;  // triangle shifts spent making the encoding good
  std::int64_t abs_sum_before;
};

struct NegativeLabel {
  std::size_t time;
  Vertex vertex;
  Label label;
};

struct Certificate {
  int n = 0;
  std::vector<CertificateStep> steps;
  std::optional<NegativeLabel> violation;

  bool ok() const noexcept { return !violation.has_value(); }
};

// Produces the plan for step t+1 from the state at time t.
using PlanSource = std::function<TransferPlan(const ChipState&, std::size_t)>;

// Runs initial_encoding(n) -> (make_good -> advance)* from (n-1, n-2, ..., n-2)
// and records a certificate per time step. An illegal plan throws PlanError
// carrying its step index.
Certificate certify_nonnegativity(int n, const std::vector<TransferPlan>& plans);
Certificate certify_nonnegativity(int n, std::size_t steps, const PlanSource& source);

// Per step: "t=<k> lo=<lo> labels=<csv>" then one "u v L" line for every
// u < v with L(u, v) != 0.
std::string format_certificate(const Certificate& cert);

}  // namespace diffusion
