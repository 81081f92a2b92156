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

// Relinearization planners: the relinearize-every-product baseline, exact
// enumeration, the dynamic program for single-output circuits, and exact
// enumeration restricted to a set of marked vertices.

#ifndef RELIN_SOLVERS_H_
#define RELIN_SOLVERS_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relin/circuit.h"
#include "relin/length_cost.h"

namespace relin {

struct SolveResult {
  RelinPlan plan;
  CostBreakdown cost;
  LengthProfile profile;
  std::string method;
};

// Relinearizes every product back to min_length, with everything upstream
// already reduced.
RelinPlan BaselinePlan(const Circuit& circuit, Semantics semantics);

// Evaluates `plan` into a SolveResult tagged `method`.
SolveResult Evaluate(const Circuit& circuit, const RelinPlan& plan,
                     const CostParams& params, Semantics semantics,
                     std::string method);

struct BruteForceOptions {
  // Vertices with a nonzero relinearization range.
  int max_variables = 10;
  // Upper bound on the number of plans enumerated.
  std::uint64_t max_plans = 200'000'000;
  int threads = 1;
};

// Global minimum over all integer plans. Each vertex's amount ranges over its
// headroom under the all-zero plan, which bounds every feasible amount.
// Ties: smallest total relinearization, then the lexicographically smallest
// amount vector in topological order. Throws Error(kSearchSpaceTooLarge).
SolveResult BruteForceSolve(const Circuit& circuit, const CostParams& params,
                            Semantics semantics,
                            const BruteForceOptions& options = {});

// M(i, l): minimal cost of the subcircuit ending at i with l_new(i) = l.
struct DpTable {
  static constexpr std::int64_t kInfinity =
      std::numeric_limits<std::int64_t>::max();

  std::int64_t min_length = 0;
  std::int64_t max_length = 0;
  // Scaled costs, [vertex][l - min_length]; kInfinity when unreachable.
  std::vector<std::vector<std::int64_t>> cost;
  // Total relinearization of the argmin, same layout.
  std::vector<std::vector<std::int64_t>> relin;
  // Parent lengths of the argmin, same layout.
  std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> back;
  ScaledCost scale{CostParams{}};

  // Unscaled M(i, l); nullopt for unreachable entries.
  std::optional<Rational> At(Circuit::Index i, std::int64_t l) const;
};

// Exact when every non-input vertex has outdegree at most 1. Lengths range
// over [min_length, max(|V|, largest unrelinearized length)]; the second
// term only matters for squaring chains. Throws Error(kNotSingleOutput).
SolveResult DpSolveSingleOutput(const Circuit& circuit,
                                const CostParams& params, Semantics semantics,
                                DpTable* table = nullptr);

struct RestrictedOptions {
  std::uint64_t max_plans = 1'000'000;
};

// Exact minimum over plans supported on `marks` with each amount in
// [0, per_mark_max]. Throws Error(kMarkNotRelinearizable) for marks that are
// not products and Error(kSearchSpaceTooLarge).
SolveResult RestrictedSolve(const Circuit& circuit, const CostParams& params,
                            Semantics semantics,
                            const std::vector<std::string>& marks,
                            std::int64_t per_mark_max,
                            const RestrictedOptions& options = {});

}  // namespace relin

#endif  // RELIN_SOLVERS_H_
