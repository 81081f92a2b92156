// Copyright 2026 The Relin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "relin/gadgets.h"

#include <random>
#include <set>

#include <gtest/gtest.h>

#include "test_util.h"

namespace relin {
namespace {

using K = VertexKind;

std::vector<Vertex> Records(const Circuit& c) {
  return {c.records().begin(), c.records().end()};
}

std::int64_t NonInputs(const Circuit& c) {
  std::int64_t n = 0;
  for (const Vertex& v : c.records()) n += v.kind != K::kInput;
  return n;
}

// Output-length change when the designated vertex goes from 2 to 1.
std::int64_t OracleSensitivity(const GadgetCircuit& g) {
  auto records = Records(g.circuit);
  auto high = testing::OracleLengths(records, {}, true);
  auto low = testing::OracleLengths(records, {{g.designated, 1}}, true);
  return high->at(g.outputs.front()) - low->at(g.outputs.front());
}

Rational OracleMulCost(const std::vector<Vertex>& records,
                       const testing::Amounts& x, Rational k_m) {
  // k_r = 0 leaves the multiplication term only.
  return *testing::OracleCost(records, x, k_m, 0, true, true);
}

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

TEST(BuildLTest, IdentityGadget) {
  GadgetCircuit g = BuildL(1);
  EXPECT_EQ(g.outputs, std::vector<std::string>{g.designated});
  EXPECT_EQ(OracleSensitivity(g), 1);
  EXPECT_EQ(g.circuit.size(), 2u);
}

TEST(BuildLTest, PowerOfTwoIsSquaringChain) {
  GadgetCircuit g = BuildL(4);
  EXPECT_EQ(NonInputs(g.circuit), 3);
  for (const Vertex& v : g.circuit.records()) {
    if (v.kind != K::kInput) EXPECT_EQ(v.kind, K::kSquare);
  }
  EXPECT_EQ(OracleSensitivity(g), 4);
}

TEST(BuildLTest, SevenIsTwoSquaringsAndTwoProducts) {
  // Input, squarings d -> c1 -> c2, then c2*d and (c2*d)*c1.
  GadgetCircuit g = BuildL(7, "g");
  EXPECT_EQ(g.circuit.size(), 6u);
  const Circuit& c = g.circuit;
  EXPECT_EQ(c.vertex(c.IndexOf("g.m0")).parents,
            (std::vector<std::string>{"g.c2", "g.c0"}));
  EXPECT_EQ(c.vertex(c.IndexOf("g.m1")).parents,
            (std::vector<std::string>{"g.m0", "g.c1"}));
  EXPECT_EQ(g.outputs, std::vector<std::string>{"g.m1"});
  EXPECT_EQ(OracleSensitivity(g), 7);
}

TEST(BuildLTest, SensitivityForManyK) {
  for (std::int64_t k = 1; k <= 300; ++k) {
    GadgetCircuit g = BuildL(k);
    EXPECT_EQ(OracleSensitivity(g), k) << k;
    EXPECT_EQ(g.parameter, k);
    ASSERT_EQ(g.circuit.Sinks().size(), 1u);
    EXPECT_EQ(g.circuit.Inputs().size(), 1u);
  }
}

TEST(BuildLTest, RejectsNonPositive) {
  EXPECT_EQ(CodeOf([] { BuildL(0); }), ErrorCode::kInvalidArgument);
}

TEST(BuildLprimeTest, ZeroIsDesignatedOnly) {
  GadgetCircuit g = BuildLprime(0, CostParams{});
  EXPECT_EQ(g.circuit.size(), 2u);
  auto records = Records(g.circuit);
  EXPECT_EQ(OracleMulCost(records, {}, 1),
            OracleMulCost(records, {{g.designated, 1}}, 1));
}

TEST(BuildLprimeTest, CostSensitivity) {
  for (std::int64_t lambda : {1, 2, 3, 13, 14, 100, 4095, 5850}) {
    GadgetCircuit g = BuildLprime(lambda, CostParams{1, 0, CostMode::kProse});
    auto records = Records(g.circuit);
    EXPECT_EQ(OracleMulCost(records, {}, 1) -
                  OracleMulCost(records, {{g.designated, 1}}, 1),
              Rational(lambda))
        << lambda;
  }
}

TEST(BuildLprimeTest, SizeBound) {
  for (std::int64_t lambda = 0; lambda <= 600; ++lambda) {
    GadgetCircuit g = BuildLprime(lambda, CostParams{});
    EXPECT_LE(static_cast<std::int64_t>(g.circuit.size()),
              2 * CeilLog2(lambda + 1) + 4)
        << lambda;
  }
}

TEST(BuildLprimeTest, RespectsMultiplicationConstant) {
  GadgetCircuit g = BuildLprime(6, CostParams{2, 0, CostMode::kProse});
  auto records = Records(g.circuit);
  EXPECT_EQ(OracleMulCost(records, {}, 2) -
                OracleMulCost(records, {{g.designated, 1}}, 2),
            Rational(6));
  EXPECT_EQ(CodeOf([] { BuildLprime(5, CostParams{2, 0, CostMode::kProse}); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { BuildLprime(-1, CostParams{}); }),
            ErrorCode::kInvalidArgument);
}

TEST(LengthSourceTest, ExactLength) {
  for (std::int64_t w = 1; w <= 100; ++w) {
    GadgetCircuit g = BuildLengthSource(w);
    auto lengths = testing::OracleLengths(Records(g.circuit), {}, true);
    EXPECT_EQ(lengths->at(g.outputs.front()), w);
    EXPECT_LE(NonInputs(g.circuit), 2 * CeilLog2(w));
  }
}

Circuit Identity(const std::string& id) {
  return Circuit::Build({{id, K::kInput, {}}});
}

TEST(CombineTest, OperandsPlusOneVertex) {
  Circuit g1 = Circuit::Build(
      {{"a", K::kInput, {}}, {"b", K::kInput, {}}, {"m", K::kMul, {"a", "b"}}});
  Circuit g2 = Circuit::Build({{"a", K::kInput, {}},
                               {"b", K::kInput, {}},
                               {"c", K::kInput, {}},
                               {"m", K::kMul, {"a", "b"}},
                               {"s", K::kAdd, {"b", "c"}},
                               {"top", K::kMul, {"m", "s"}}});
  Circuit sum = Combine(CombineOp::kBoxPlus, g1, g2);
  EXPECT_EQ(sum.size(), 10u);
  ASSERT_EQ(sum.Sinks().size(), 1u);
  const Vertex& sink = sum.vertex(sum.Sinks().front());
  EXPECT_EQ(sink.kind, K::kAdd);
  EXPECT_EQ(sink.parents, (std::vector<std::string>{"m", "top"}));
  // Colliding ids of the second operand are renamed.
  EXPECT_TRUE(sum.Find("m#2").has_value());
  EXPECT_TRUE(sum.Find("a#2").has_value());
}

TEST(CombineTest, TimesOfIdentities) {
  Circuit c = Combine(CombineOp::kBoxTimes, Identity("x"), Identity("y"), "prod");
  EXPECT_EQ(c.size(), 3u);
  EXPECT_EQ(c.vertex(c.IndexOf("prod")).kind, K::kMul);
  EXPECT_EQ(c.vertex(c.IndexOf("prod")).parents,
            (std::vector<std::string>{"x", "y"}));
}

TEST(CombineTest, SizesAdd) {
  Circuit a = BuildL(5, "a").circuit;
  Circuit b = BuildL(3, "b").circuit;
  Circuit c = BuildL(9, "c").circuit;
  Circuit abc = Combine(CombineOp::kBoxPlus,
                        Combine(CombineOp::kBoxPlus, a, b), c);
  EXPECT_EQ(abc.size(), a.size() + b.size() + c.size() + 2);
}

TEST(CombineTest, RequiresUniqueSinks) {
  Circuit two = Circuit::Build({{"a", K::kInput, {}},
                                {"s", K::kSquare, {"a"}},
                                {"t", K::kAdd, {"a", "a"}}});
  EXPECT_EQ(CodeOf([&] { Combine(CombineOp::kBoxPlus, two, Identity("x")); }),
            ErrorCode::kMultipleSinks);
}

TEST(ConcatTest, SinksFeedInputsInIdOrder) {
  Circuit g1 = Circuit::Build({{"a", K::kInput, {}},
                               {"b", K::kInput, {}},
                               {"s", K::kAdd, {"a", "b"}},
                               {"m", K::kMul, {"a", "b"}}});
  Circuit g2 = Circuit::Build(
      {{"x", K::kInput, {}}, {"y", K::kInput, {}}, {"p", K::kMul, {"x", "y"}}});
  Circuit c = Concat(g1, g2);
  EXPECT_EQ(c.size(), 5u);
  // Sinks (m, s) feed inputs (x, y) in id order.
  EXPECT_EQ(c.vertex(c.IndexOf("p")).parents, (std::vector<std::string>{"m", "s"}));
}

TEST(ConcatTest, IdentityKeepsSize) {
  Circuit g = BuildL(6).circuit;
  EXPECT_EQ(Concat(g, Identity("z")).size(), g.size());
}

TEST(ConcatTest, ArityMismatch) {
  Circuit g2 = Circuit::Build(
      {{"x", K::kInput, {}}, {"y", K::kInput, {}}, {"p", K::kMul, {"x", "y"}}});
  EXPECT_EQ(CodeOf([&] { Concat(BuildL(3).circuit, g2); }),
            ErrorCode::kArityMismatch);
}

TEST(ConcatTest, BranchFeedsThreshold) {
  Circuit branch = Combine(CombineOp::kBoxPlus, BuildL(3, "w1").circuit,
                           BuildLengthSource(9, "cap").circuit, "fits");
  GadgetCircuit t = BuildL(20, "T");
  Circuit c = Concat(branch, t.circuit);
  EXPECT_EQ(c.size(), branch.size() + t.circuit.size() - 1);
  EXPECT_FALSE(c.Find("T.in").has_value());
  EXPECT_EQ(c.vertex(c.IndexOf("T.c0")).parents,
            std::vector<std::string>{"fits"});
}

Circuit SharedProducts() {
  return Circuit::Build({{"a", K::kInput, {}},
                         {"b", K::kInput, {}},
                         {"s1", K::kMul, {"a", "b"}},
                         {"s2", K::kMul, {"a", "b"}},
                         {"p", K::kAdd, {"s1", "s2"}},
                         {"q", K::kSquare, {"p"}}});
}

TEST(RepeatTest, TwoCopiesShareProducts) {
  Circuit r = Repeat(SharedProducts(), {"s1", "s2"}, 2);
  EXPECT_EQ(r.size(), 8u);
  EXPECT_EQ(r.vertex(r.IndexOf("p#2")).parents,
            (std::vector<std::string>{"s1", "s2"}));
  EXPECT_EQ(r.vertex(r.IndexOf("q#2")).parents, std::vector<std::string>{"p#2"});
  EXPECT_EQ(r.outdegree(r.IndexOf("s1")), 2);
}

TEST(RepeatTest, TrivialCases) {
  Circuit g = SharedProducts();
  EXPECT_EQ(Repeat(g, {"s1"}, 1), g);
  std::vector<std::string> all;
  for (const Vertex& v : g.records()) all.push_back(v.id);
  EXPECT_EQ(Repeat(g, all, 5), g);
  EXPECT_EQ(CodeOf([&] { Repeat(g, {"nope"}, 2); }), ErrorCode::kUnknownVertex);
  EXPECT_EQ(CodeOf([&] { Repeat(g, {"s1"}, 0); }), ErrorCode::kInvalidArgument);
}

TEST(GlueTest, SharedProductMergesOnce) {
  Circuit g1 = Circuit::Build({{"a", K::kInput, {}},
                               {"b", K::kInput, {}},
                               {"s1", K::kMul, {"a", "b"}},
                               {"t", K::kSquare, {"s1"}}});
  Circuit g2 = Circuit::Build({{"x", K::kInput, {}},
                               {"y", K::kInput, {}},
                               {"z", K::kInput, {}},
                               {"s1", K::kMul, {"x", "y"}},
                               {"p", K::kAdd, {"y", "z"}},
                               {"top", K::kMul, {"s1", "p"}}});
  Circuit c = Glue(g1, {"s1"}, g2, {"s1"});
  EXPECT_EQ(c.size(), 7u);
  EXPECT_EQ(c.vertex(c.IndexOf("top")).parents,
            (std::vector<std::string>{"s1", "p"}));
  EXPECT_EQ(c.vertex(c.IndexOf("p")).parents, (std::vector<std::string>{"b", "z"}));
}

TEST(GlueTest, CommutedParentsStillMatch) {
  Circuit g1 = Circuit::Build(
      {{"a", K::kInput, {}}, {"b", K::kSquare, {"a"}}, {"m", K::kMul, {"a", "b"}}});
  Circuit g2 = Circuit::Build(
      {{"x", K::kInput, {}}, {"y", K::kSquare, {"x"}}, {"m", K::kMul, {"y", "x"}},
       {"r", K::kSquare, {"m"}}});
  Circuit c = Glue(g1, {"m"}, g2, {"m"});
  EXPECT_EQ(c.size(), 4u);
}

TEST(GlueTest, SelfGlueSize) {
  Circuit g = SharedProducts();
  Circuit c = Glue(g, {"s1", "s2"}, g, {"s1", "s2"});
  EXPECT_EQ(c.size(), 6u + (6u - 4u));
}

TEST(GlueTest, EmptySetsGiveDisjointUnion) {
  Circuit a = BuildL(3, "a").circuit;
  Circuit b = BuildL(5, "b").circuit;
  Circuit c = Glue(a, {}, b, {});
  EXPECT_EQ(c.size(), a.size() + b.size());
  EXPECT_EQ(c.Sinks().size(), 2u);
}

TEST(GlueTest, MismatchNamesPair) {
  Circuit g1 = Circuit::Build(
      {{"a", K::kInput, {}}, {"b", K::kInput, {}}, {"m", K::kMul, {"a", "b"}}});
  Circuit g2 = Circuit::Build(
      {{"a", K::kInput, {}}, {"b", K::kInput, {}}, {"m", K::kAdd, {"a", "b"}}});
  try {
    Glue(g1, {"m"}, g2, {"m"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotIsomorphic);
    EXPECT_NE(std::string(e.what()).find("'m' (mul) vs 'm' (add)"),
              std::string::npos)
        << e.what();
  }
}

TEST(CombinatorPropertyTest, RepeatSizeAndGlueAgreement) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    Circuit g = Circuit::Build(testing::RandomDag(rng, 10));
    std::vector<std::string> shared;
    for (const Vertex& v : g.records()) {
      if (v.kind != K::kInput && std::bernoulli_distribution(0.3)(rng)) {
        shared.push_back(v.id);
      }
    }
    // Ancestor count by a direct walk.
    std::set<std::string> anc;
    std::vector<std::string> stack = shared;
    while (!stack.empty()) {
      std::string id = stack.back();
      stack.pop_back();
      if (!anc.insert(id).second) continue;
      for (const auto& p : g.vertex(g.IndexOf(id)).parents) stack.push_back(p);
    }
    for (std::int64_t k : {1, 2, 3}) {
      Circuit r = Repeat(g, shared, k);
      EXPECT_EQ(r.size(), anc.size() + k * (g.size() - anc.size()));
    }
    EXPECT_EQ(Repeat(g, shared, 2), Glue(g, shared, g, shared));
  }
}

TEST(CombinatorPropertyTest, CombineAndConcatSizes) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    Circuit a = Circuit::Build(testing::RandomSingleOutput(rng, 8));
    Circuit b = Circuit::Build(testing::RandomSingleOutput(rng, 8));
    // Output vertices cannot take a consumer.
    if (a.kind(a.Sinks().front()) == K::kOutput ||
        b.kind(b.Sinks().front()) == K::kOutput) {
      continue;
    }
    EXPECT_EQ(Combine(CombineOp::kBoxTimes, a, b).size(), a.size() + b.size() + 1);
    if (b.Inputs().size() == 1) {
      EXPECT_EQ(Concat(a, b).size(), a.size() + b.size() - 1);
    }
  }
}

TEST(KnapsackBruteTest, Examples) {
  KnapsackSolution s = KnapsackBrute({{1, 2}, {2, 3}, 4});
  EXPECT_EQ(s.value, 2);
  EXPECT_EQ(s.selection, (std::vector<int>{0, 1}));
  s = KnapsackBrute({{3, 4, 5}, {1, 2, 3}, 10});
  EXPECT_EQ(s.value, 12);
  EXPECT_EQ(s.selection, (std::vector<int>{1, 1, 1}));
  s = KnapsackBrute({{7}, {5}, 4});
  EXPECT_EQ(s.value, 0);
}

TEST(KnapsackBruteTest, TiesGoToSmallestSelection) {
  KnapsackSolution s = KnapsackBrute({{2, 2}, {1, 1}, 1});
  EXPECT_EQ(s.selection, (std::vector<int>{0, 1}));
}

TEST(KnapsackBruteTest, Limits) {
  KnapsackInstance big;
  big.values.assign(21, 1);
  big.weights.assign(21, 1);
  big.capacity = 5;
  EXPECT_EQ(CodeOf([&] { KnapsackBrute(big); }), ErrorCode::kTooManyItems);
  EXPECT_EQ(CodeOf([] { KnapsackBrute({{1, 2}, {1}, 3}); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { KnapsackBrute({{0}, {1}, 3}); }),
            ErrorCode::kInvalidArgument);
}

TEST(NormalizeTest, DropsHeavyItems) {
  NormalizedKnapsack n = Normalize({{1, 2, 3}, {5, 2, 4}, 4});
  EXPECT_EQ(n.instance.values, (std::vector<std::int64_t>{2, 3}));
  EXPECT_EQ(n.kept, (std::vector<std::size_t>{1, 2}));
}

TEST(ReductionTest, ScheduleForSmallExample) {
  ReductionSchedule s = InitialSchedule(12);
  EXPECT_EQ(s.t, 216);
  EXPECT_EQ(s.k_r, 5850);
  EXPECT_EQ(s.k, 36);
  // The schedule misses the second inequality: 5850 <= 4(216*8 + 9*4).
  EXPECT_LE(s.k_r, 4 * (s.t * CeilLog2(s.t) + 9 * CeilLog2(9)));
}

TEST(ReductionTest, SmallExampleRepairs) {
  KnapsackInstance ks{{1, 2}, {2, 3}, 4};
  ReductionArtifact art = BuildReduction(ks);
  const ReductionParams& p = art.params;
  EXPECT_EQ(p.m, 12);
  EXPECT_EQ(p.capacity_sum, 9);
  EXPECT_EQ(p.repair_rounds, 1);
  EXPECT_EQ(p.t, 432);
  EXPECT_EQ(p.k_r, Rational(15697));
  EXPECT_EQ(p.k, 37);
  EXPECT_EQ(art.marks, (std::vector<std::string>{"w1.c0", "w2.c0"}));

  SolveResult r = RestrictedSolve(art.circuit, art.cost_params(),
                                  ReductionArtifact::semantics(), art.marks, 1);
  DecodedSelection d = DecodeReduction(art, ks.size(), r.profile);
  EXPECT_EQ(d.value, KnapsackBrute(ks).value);
  EXPECT_EQ(d.selection, KnapsackBrute(ks).selection);
}

TEST(ReductionTest, SingleUnitItem) {
  ReductionArtifact art = BuildReduction({{1}, {1}, 1});
  EXPECT_EQ(art.marks.size(), 1u);
  EXPECT_TRUE(art.circuit.Find(art.marks[0]).has_value());
}

TEST(ReductionTest, NoUsableItems) {
  EXPECT_EQ(CodeOf([] { BuildReduction({{3}, {5}, 2}); }),
            ErrorCode::kInvalidArgument);
}

TEST(ReductionTest, InvariantsAndOracleCoefficients) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 12; ++trial) {
    KnapsackInstance ks;
    const int n = 1 + trial % 4;
    for (int i = 0; i < n; ++i) {
      ks.values.push_back(std::uniform_int_distribution<int>(1, 6)(rng));
      ks.weights.push_back(std::uniform_int_distribution<int>(1, 5)(rng));
    }
    ks.capacity = std::uniform_int_distribution<int>(5, 9)(rng);
    ReductionArtifact art = BuildReduction(ks);
    const ReductionParams& p = art.params;
    const auto& kn = art.knapsack.instance;
    std::int64_t w_prime = kn.capacity;
    for (auto w : kn.weights) w_prime += w;
    EXPECT_EQ(p.capacity_sum, w_prime);
    EXPECT_GT(Rational(p.k * p.t), p.k_r);
    EXPECT_GT(p.k_r, Rational(4 * (p.t * CeilLog2(p.t) + w_prime * CeilLog2(w_prime))));
    EXPECT_LE(static_cast<std::int64_t>(art.circuit.size()), ReductionVertexBound(art));

    auto records = Records(art.circuit);
    testing::Amounts all_low;
    for (const auto& s : art.marks) all_low[s] = 1;
    Rational base = OracleMulCost(records, all_low, 1);
    for (std::size_t i = 0; i < kn.size(); ++i) {
      EXPECT_GE(p.lambda[i], 0);
      EXPECT_EQ(Rational(p.k * p.r[i] + p.lambda[i]), p.k_r - kn.values[i]);
      testing::Amounts raised = all_low;
      raised.erase(art.marks[i]);
      EXPECT_EQ(OracleMulCost(records, raised, 1) - base, p.k_r - kn.values[i]);
    }
  }
}

TEST(DecodeTest, Selections) {
  NormalizedKnapsack kn = Normalize({{4, 9, 5}, {1, 7, 2}, 3});
  DecodedSelection all = DecodeMarks(kn, 3, {2, 2});
  EXPECT_EQ(all.selection, (std::vector<int>{1, 0, 1}));
  EXPECT_EQ(all.value, 9);
  DecodedSelection none = DecodeMarks(kn, 3, {1, 1});
  EXPECT_EQ(none.value, 0);
  EXPECT_EQ(none.selection, (std::vector<int>{0, 0, 0}));
  EXPECT_EQ(CodeOf([&] { DecodeMarks(kn, 3, {3, 1}); }),
            ErrorCode::kLengthOutOfRange);
}

}  // namespace
}  // namespace relin
