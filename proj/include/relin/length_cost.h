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

// Ciphertext length propagation and the relinearization cost model.
//
// Lengths are symbolic: a fresh ciphertext has input_length components, a
// product of lengths l1 and l2 has Product(l1, l2) components and an addition
// has the larger of its operands. Relinearizing vertex i by x_i lowers its
// length by x_i at a cost of k_r per unit. Multiplications cost k_m per unit
// of length, counted either on the product (kObjective) or on the operands
// (kProse).

#ifndef RELIN_LENGTH_COST_H_
#define RELIN_LENGTH_COST_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relin/circuit.h"
#include "relin/rational.h"

namespace relin {

class Semantics {
 public:
  enum class Mode { kStandard, kReduced };

  constexpr Semantics() = default;
  constexpr explicit Semantics(Mode mode) : mode_(mode) {}

  static constexpr Semantics Standard() { return Semantics(Mode::kStandard); }
  static constexpr Semantics Reduced() { return Semantics(Mode::kReduced); }

  constexpr Mode mode() const { return mode_; }
  constexpr std::int64_t input_length() const {
    return mode_ == Mode::kStandard ? 2 : 1;
  }
  constexpr std::int64_t min_length() const { return input_length(); }
  // Length of the product of two ciphertexts before relinearization.
  constexpr std::int64_t Product(std::int64_t l1, std::int64_t l2) const {
    return mode_ == Mode::kStandard ? l1 + l2 - 1 : l1 + l2;
  }

  friend constexpr bool operator==(Semantics, Semantics) = default;

 private:
  Mode mode_ = Mode::kStandard;
};

std::string_view SemanticsName(Semantics semantics);
std::optional<Semantics> ParseSemantics(std::string_view name);

enum class CostMode {
  // k_m * (l_new(i) + x_i) per product vertex.
  kObjective,
  // k_m * (l(p1) + l(p2)) per product vertex.
  kProse,
};

std::string_view CostModeName(CostMode mode);
std::optional<CostMode> ParseCostMode(std::string_view name);

struct CostParams {
  Rational k_m{1};
  Rational k_r{1};
  CostMode mode = CostMode::kObjective;
};

// Throws Error(kInvalidArgument) if a constant is negative.
void CheckCostParams(const CostParams& params);

// Relinearization amounts by vertex id; absent ids mean 0.
class RelinPlan {
 public:
  RelinPlan() = default;

  std::int64_t Get(std::string_view id) const;
  // Zero removes the entry so that equal plans compare equal.
  void Set(const std::string& id, std::int64_t amount);
  std::int64_t Total() const;

  const std::map<std::string, std::int64_t>& entries() const {
    return entries_;
  }

  // Dense vector indexed like the circuit. Throws Error(kUnknownVertex) for
  // ids not in the circuit and Error(kInvalidPlan) for negative amounts or
  // nonzero amounts on inputs and outputs.
  std::vector<std::int64_t> Dense(const Circuit& circuit) const;
  static RelinPlan FromDense(const Circuit& circuit,
                             std::span<const std::int64_t> amounts);

  friend bool operator==(const RelinPlan&, const RelinPlan&) = default;

 private:
  std::map<std::string, std::int64_t> entries_;
};

// Resolved l_new per vertex, indexed like the circuit.
struct LengthProfile {
  std::vector<std::int64_t> l_new;

  std::int64_t at(const Circuit& circuit, std::string_view id) const {
    return l_new[circuit.IndexOf(id)];
  }
  std::int64_t Max() const;
};

struct CostBreakdown {
  Rational mul_cost;
  Rational relin_cost;
  Rational total;

  friend bool operator==(const CostBreakdown&, const CostBreakdown&) = default;
};

// Forward length recurrence in topological order. Throws
// Error(kInfeasibleRelin) naming the first product vertex whose amount
// exceeds its headroom above min_length.
LengthProfile PropagateLengths(const Circuit& circuit, const RelinPlan& plan,
                               Semantics semantics);

CostBreakdown TotalCost(const Circuit& circuit, const RelinPlan& plan,
                        const CostParams& params, Semantics semantics);

// The integer program in LP file format. Variables are l_<id> and x_<id>.
// Non-integral constants are cleared by scaling the objective, which is noted
// in a comment.
std::string ExportIlp(const Circuit& circuit, const CostParams& params,
                      Semantics semantics);

// Integer-scaled evaluation for the solvers' inner loops. Costs are
// multiplied by a common denominator so every comparison stays exact.
class ScaledCost {
 public:
  explicit ScaledCost(const CostParams& params);

  std::int64_t k_m() const { return k_m_; }
  std::int64_t k_r() const { return k_r_; }
  CostMode mode() const { return mode_; }
  Rational Unscale(std::int64_t scaled) const {
    return Rational(scaled, denominator_);
  }

 private:
  std::int64_t k_m_;
  std::int64_t k_r_;
  std::int64_t denominator_;
  CostMode mode_;
};

// Propagates dense amounts into `lengths`. Returns the first infeasible
// product vertex, or nullopt on success. Amounts on inputs and outputs are
// ignored.
std::optional<Circuit::Index> PropagateDense(
    const Circuit& circuit, std::span<const std::int64_t> amounts,
    Semantics semantics, std::span<std::int64_t> lengths);

// Scaled multiplication and relinearization cost of a propagated plan.
struct ScaledBreakdown {
  std::int64_t mul = 0;
  std::int64_t relin = 0;
  std::int64_t total() const { return mul + relin; }
};
ScaledBreakdown ScaledTotal(const Circuit& circuit,
                            std::span<const std::int64_t> amounts,
                            std::span<const std::int64_t> lengths,
                            const ScaledCost& cost);

}  // namespace relin

#endif  // RELIN_LENGTH_COST_H_
