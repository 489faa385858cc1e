#include <gtest/gtest.h>

#include "diffusion/encoding.hpp"
#include "diffusion/graph.hpp"
#include "oracles.hpp"

using namespace diffusion;

namespace {

DigraphEncoding encoding_from_entries(int n, Label total, const std::vector<int>& entries) {
  DigraphEncoding enc(n, total);
  std::size_t p = 0;
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = u + 1; v <= n; ++v, ++p) {
      enc.set_weight(u, v, entries[p]);
    }
  }
  return enc;
}

DigraphEncoding cyclic_triangle(Label k, int weight) {
  DigraphEncoding enc(3, 3 * k);
  enc.set_weight(1, 2, weight);
  enc.set_weight(2, 3, weight);
  enc.set_weight(3, 1, weight);
  return enc;
}

}  // namespace

TEST(Decode, Examples) {
  DigraphEncoding enc(3, 4);
  enc.set_weight(2, 1, 1);
  enc.set_weight(3, 1, 1);
  EXPECT_EQ(decode(enc), ChipState({2, 1, 1}));

  EXPECT_EQ(decode(DigraphEncoding(4, 4 * 6)), ChipState::constant(4, 6));

  DigraphEncoding pair(2, 1);
  pair.set_weight(2, 1, 1);
  EXPECT_EQ(decode(pair), ChipState({1, 0}));

  EXPECT_THROW(decode(DigraphEncoding(3, 4)), EncodingError);
}

TEST(InitialEncoding, Examples) {
  EXPECT_EQ(decode(initial_encoding(2)), ChipState({1, 0}));
  EXPECT_EQ(decode(initial_encoding(3)), ChipState({2, 1, 1}));
  EXPECT_EQ(decode(initial_encoding(5)), ChipState({4, 3, 3, 3, 3}));
  EXPECT_THROW(initial_encoding(1), std::invalid_argument);
}

TEST(InitialEncoding, DecodesToReducedStartForAllSizes) {
  for (int n = 2; n <= 64; ++n) {
    const DigraphEncoding enc = initial_encoding(n);
    EXPECT_EQ(enc.total(), static_cast<Label>(n) * (n - 2) + 1);
    EXPECT_TRUE(enc.defects().empty());
    ChipState expected = ChipState::constant(n, n - 2);
    expected.set(1, n - 1);
    EXPECT_EQ(decode(enc), expected);
    EXPECT_TRUE(is_good(enc, expected));
    EXPECT_EQ(derived_bounds(enc).lo, 0);
  }
}

TEST(TryEncode, Examples) {
  const auto flat = try_encode(ChipState::constant(4, 9));
  ASSERT_TRUE(flat.has_value());
  EXPECT_EQ(*flat, DigraphEncoding(4, 36));

  for (int n = 2; n <= 9; ++n) {
    ChipState start = ChipState::constant(n, n - 2);
    start.set(1, n - 1);
    const auto enc = try_encode(start);
    ASSERT_TRUE(enc.has_value());
    EXPECT_EQ(decode(*enc), start);
    EXPECT_TRUE(enc->defects().empty());
  }

  EXPECT_FALSE(try_encode(ChipState({3, 0})).has_value());
}

TEST(TryEncode, AgreesWithBruteForceOnSmallStates) {
  for (int n = 1; n <= 3; ++n) {
    oracle::for_each_labeling(n, -3, 6, [&](const std::vector<Label>& labels) {
      const ChipState w(labels);
      const auto enc = try_encode(w);
      ASSERT_EQ(enc.has_value(), oracle::encoding_exists(labels)) << format_state(w);
      if (enc) {
        EXPECT_EQ(decode(*enc), w);
        EXPECT_TRUE(enc->defects().empty());
      }
    });
  }
}

TEST(IsGood, Examples) {
  const DigraphEncoding start = initial_encoding(5);
  EXPECT_TRUE(is_good(start, decode(start)));
  EXPECT_FALSE(is_good(cyclic_triangle(4, 1), ChipState::constant(3, 4)));
  EXPECT_TRUE(is_good(DigraphEncoding(3, 12), ChipState::constant(3, 4)));
  EXPECT_THROW(is_good(start, ChipState::constant(5, 3)), EncodingError);
}

TEST(MakeGood, Examples) {
  const DigraphEncoding start = initial_encoding(4);
  const Repair same = make_good_traced(start, decode(start));
  EXPECT_EQ(same.encoding, start);
  EXPECT_EQ(same.shifts, 0u);

  const Repair cycle = make_good_traced(cyclic_triangle(4, 1), ChipState::constant(3, 4));
  EXPECT_EQ(cycle.encoding, DigraphEncoding(3, 12));
  EXPECT_EQ(cycle.shifts, 1u);
}

TEST(MakeGood, EveryTwoVertexEncodingIsAlreadyGood) {
  for (int L = -2; L <= 2; ++L) {
    for (Label total = 0; total <= 1; ++total) {
      DigraphEncoding enc(2, total + 10);
      enc.set_weight(1, 2, L);
      if (!enc.defects().empty()) {
        continue;
      }
      const ChipState w = decode(enc);
      EXPECT_TRUE(is_good(enc, w));
      EXPECT_EQ(make_good_traced(enc, w).shifts, 0u);
    }
  }
}

// Every well-formed scaled weight matrix on up to 3 vertices.
TEST(MakeGood, ExhaustiveSmallMatrices) {
  for (int n = 2; n <= 3; ++n) {
    oracle::for_each_weight_matrix(n, [&](const std::vector<int>& entries) {
      for (Label total = 0; total < n; ++total) {
        const DigraphEncoding enc = encoding_from_entries(n, total, entries);
        if (!enc.defects().empty()) {
          continue;
        }
        const ChipState w = decode(enc);
        const Repair r = make_good_traced(enc, w);
        ASSERT_EQ(decode(r.encoding), w);
        ASSERT_TRUE(oracle::good_by_definition(r.encoding, w.labels()));
        ASSERT_TRUE(r.encoding.defects().empty());
        ASSERT_LE(r.shifts, static_cast<std::size_t>(r.abs_sum_before - r.abs_sum_after));
      }
    });
  }
}

TEST(Advance, Examples) {
  const DigraphEncoding start = initial_encoding(3);
  const ChipState w = decode(start);
  EXPECT_EQ(advance(start, w, TransferPlan(3)), start);

  TransferPlan plan(3);
  plan.transfer(1, 2);
  const DigraphEncoding next = advance(start, w, plan);
  EXPECT_EQ(decode(next), ChipState({1, 2, 1}));
  EXPECT_EQ(decode(next), weak_step(w, plan));
  // L(1,2) starts at -1 (weight flows into vertex 1) and gains n = 3.
  EXPECT_EQ(next.weight(1, 2), 2);
  EXPECT_TRUE(next.defects().empty());

  const DigraphEncoding bad = cyclic_triangle(5, 3);
  EXPECT_THROW(advance(bad, ChipState::constant(3, 5), plan), EncodingError);

  TransferPlan uphill(3);
  uphill.transfer(2, 1);
  EXPECT_THROW(advance(start, w, uphill), PlanError);
}

TEST(Advance, GoodEncodingsAbsorbEveryLegalPlan) {
  Rng rng(17);
  for (int trial = 0; trial < 3000; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(5));
    std::vector<Label> labels(static_cast<std::size_t>(n));
    for (auto& x : labels) {
      x = rng.between(0, 4);
    }
    const ChipState w(labels);
    const auto enc = try_encode(w);
    if (!enc) {
      continue;
    }
    const DigraphEncoding good = make_good(*enc, w);
    const TransferPlan plan = random_plan(w, rng);
    const DigraphEncoding next = advance(good, w, plan);
    ASSERT_TRUE(next.defects().empty());
    ASSERT_EQ(decode(next), weak_step(w, plan));
  }
}

TEST(DerivedBounds, Examples) {
  for (int n = 2; n <= 12; ++n) {
    EXPECT_EQ(derived_bounds(initial_encoding(n)).lo, 0);
    EXPECT_EQ(derived_bounds(DigraphEncoding(n, 7 * n)), (LabelBounds{7 - (n - 1), 7 + (n - 1)}));
  }
  EXPECT_EQ(derived_bounds(DigraphEncoding(3, 4)), (LabelBounds{0, 3}));
  EXPECT_EQ(derived_bounds(DigraphEncoding(3, -4)), (LabelBounds{-3, 0}));
}

TEST(Certify, Examples) {
  const Certificate empty = certify_nonnegativity(3, std::vector<TransferPlan>{});
  ASSERT_EQ(empty.steps.size(), 1u);
  EXPECT_TRUE(empty.ok());
  EXPECT_EQ(empty.steps[0].labels, ChipState({2, 1, 1}));
  EXPECT_EQ(empty.steps[0].bounds.lo, 0);
  EXPECT_EQ(format_certificate(empty), "t=0 lo=0 labels=2,1,1\n1 2 -1\n1 3 -1\n");

  const Graph star = make_star(4);
  const Certificate on_star = certify_nonnegativity(
      4, 10, [&star](const ChipState& w, std::size_t) { return plan_from_graph(star, w); });
  EXPECT_TRUE(on_star.ok());
  EXPECT_EQ(on_star.steps.size(), 11u);
  for (const auto& s : on_star.steps) {
    EXPECT_GE(s.labels.min_label(), 0);
    EXPECT_EQ(s.bounds.lo, 0);
  }

  Rng rng(8);
  const Certificate long_run = certify_nonnegativity(
      8, 1000, [&rng](const ChipState& w, std::size_t) { return random_plan(w, rng); });
  EXPECT_TRUE(long_run.ok());
  EXPECT_EQ(long_run.steps.size(), 1001u);
}

TEST(Certify, ReportsTheStepOfAnIllegalPlan) {
  TransferPlan fine(3);
  fine.transfer(1, 2);  // (2,1,1) -> (1,2,1)
  TransferPlan uphill(3);
  uphill.transfer(1, 2);  // 1 < 2 now
  try {
    certify_nonnegativity(3, std::vector<TransferPlan>{fine, uphill});
    FAIL() << "expected PlanError";
  } catch (const PlanError& e) {
    EXPECT_EQ(e.step(), 1u);
    ASSERT_EQ(e.violations().size(), 1u);
    EXPECT_EQ(e.violations()[0], (PlanViolation{1, 2, PlanViolation::Kind::Uphill}));
  }
}

TEST(Certify, RandomWeakEvolutionsNeverGoNegative) {
  Rng rng(2024);
  for (int run = 0; run < 500; ++run) {
    const int n = 2 + static_cast<int>(rng.below(7));
    const Certificate cert = certify_nonnegativity(
        n, 100, [&rng](const ChipState& w, std::size_t) { return random_plan(w, rng); });
    ASSERT_TRUE(cert.ok());
    for (const auto& s : cert.steps) {
      ASSERT_TRUE(oracle::good_by_definition(s.encoding, s.labels.labels()));
      ASSERT_TRUE(s.encoding.defects().empty());
      ASSERT_LE(static_cast<std::int64_t>(s.shifts), s.abs_sum_before);
    }
  }
}
