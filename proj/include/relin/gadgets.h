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


// Gadget circuits and the knapsack reduction.
//
// Sensitivity gadgets L(k) have one input and a designated squaring d; under
// reduced semantics lowering d from 2 to 1 lowers the output length by k.
// Cost gadgets L'(lambda) lower the operand-counted multiplication cost by
// lambda instead. Combinators build larger circuits from these pieces.

#ifndef RELIN_GADGETS_H_
#define RELIN_GADGETS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "relin/circuit.h"
#include "relin/length_cost.h"
#include "relin/solvers.h"

namespace relin {

struct KnapsackInstance {
  std::vector<std::int64_t> values;
  std::vector<std::int64_t> weights;
  std::int64_t capacity = 0;

  std::size_t size() const { return values.size(); }

  friend bool operator==(const KnapsackInstance&,
                         const KnapsackInstance&) = default;
};

// Throws Error(kInvalidArgument) unless values and weights are positive and
// of equal length and the capacity is non-negative.
void CheckKnapsack(const KnapsackInstance& instance);

// Items heavier than the capacity removed. kept[i] is the original index of
// item i.
struct NormalizedKnapsack {
  KnapsackInstance instance;
  std::vector<std::size_t> kept;
};
NormalizedKnapsack Normalize(const KnapsackInstance& instance);

struct KnapsackSolution {
  std::int64_t value = 0;
  std::vector<int> selection;  // 0/1 per item of the given instance
};

// Exhaustive 0/1 knapsack; ties go to the lexicographically smallest
// selection. Throws Error(kTooManyItems) above 20 items.
KnapsackSolution KnapsackBrute(const KnapsackInstance& instance);

// Smallest e with 2^e >= x, for x >= 1.
int CeilLog2(std::int64_t x);

struct GadgetCircuit {
  Circuit circuit;
  std::string input;
  std::string designated;
  std::vector<std::string> outputs;
  std::int64_t parameter = 0;
};

// L(k), k >= 1. Ids are prefixed with `prefix` followed by a dot.
GadgetCircuit BuildL(std::int64_t k, std::string_view prefix = "L");

// L'(lambda), lambda >= 0, for the given multiplication constant. Throws
// Error(kInvalidArgument) when lambda is not a multiple of k_m.
GadgetCircuit BuildLprime(std::int64_t lambda, const CostParams& params,
                          std::string_view prefix = "Lp");

// Input-rooted chain whose single sink has length exactly `length` under
// reduced semantics and the zero plan. No designated vertex.
GadgetCircuit BuildLengthSource(std::int64_t length,
                                std::string_view prefix = "src");

enum class CombineOp { kBoxPlus, kBoxTimes };

// Disjoint union joined by one add (kBoxPlus) or mul (kBoxTimes) over the
// unique sinks. Throws Error(kMultipleSinks). Colliding ids of g2 are
// renamed with FreshId.
Circuit Combine(CombineOp op, const Circuit& g1, const Circuit& g2,
                std::string_view new_id = "");

// Feeds the sinks of g1 into the inputs of g2, both taken in id order.
// Throws Error(kArityMismatch).
Circuit Concat(const Circuit& g1, const Circuit& g2);

// k copies of g sharing the ancestors of `shared` (inclusive). Copy 1 keeps
// its ids. Throws Error(kUnknownVertex) or Error(kInvalidArgument).
Circuit Repeat(const Circuit& g, const std::vector<std::string>& shared,
               std::int64_t k);

// Identifies the ancestors of s2 in g2 with those of s1 in g1 and appends the
// rest of g2. Throws Error(kNotIsomorphic) naming the first mismatch.
Circuit Glue(const Circuit& g1, const std::vector<std::string>& s1,
             const Circuit& g2, const std::vector<std::string>& s2);

// `base` if unused, else base#2, base#3, ...
std::string FreshId(std::string_view base,
                    const std::unordered_set<std::string>& used);

struct ReductionSchedule {
  std::int64_t t = 0;
  std::int64_t k_r = 0;
  std::int64_t k = 0;
};

// T = ceil(5 M log M), k_r = 25 ceil(M log M log(M log M)),
// K = 6 ceil(log(M log M)), logs base 2. M >= 2.
ReductionSchedule InitialSchedule(std::int64_t m);

struct ReductionParams {
  std::int64_t capacity_sum = 0;  // W + sum of weights
  std::int64_t m = 0;             // W + sum of weights + sum of values
  std::int64_t t = 0;
  std::int64_t k = 0;
  Rational k_r{0};
  Rational k_m{1};
  std::vector<std::int64_t> r;
  std::vector<std::int64_t> lambda;
  int repair_rounds = 0;
};

struct ReductionArtifact {
  Circuit circuit;
  std::vector<std::string> marks;
  ReductionParams params;
  NormalizedKnapsack knapsack;

  CostParams cost_params() const {
    return CostParams{params.k_m, params.k_r, CostMode::kProse};
  }
  static constexpr Semantics semantics() { return Semantics::Reduced(); }
};

// The reduction for an instance with at least one item no heavier than the
// capacity. Throws Error(kInvalidArgument) otherwise.
ReductionArtifact BuildReduction(const KnapsackInstance& instance);

// Upper bound on the vertex count of BuildReduction's circuit.
std::int64_t ReductionVertexBound(const ReductionArtifact& artifact);

struct DecodedSelection {
  std::int64_t value = 0;
  std::vector<int> selection;  // over the original items
};

// Reads x_i = l(s_i) - 1 off the mark lengths. Throws
// Error(kLengthOutOfRange) unless every length is 1 or 2.
DecodedSelection DecodeMarks(const NormalizedKnapsack& knapsack,
                             std::size_t original_size,
                             const std::vector<std::int64_t>& mark_lengths);
DecodedSelection DecodeReduction(const ReductionArtifact& artifact,
                                 std::size_t original_size,
                                 const LengthProfile& profile);

}  // namespace relin

#endif  // RELIN_GADGETS_H_
