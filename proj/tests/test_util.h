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


// Test-only oracles and random generators. Nothing here calls the library's
// propagation or cost code, so tests can compare the two.

#ifndef RELIN_TESTS_TEST_UTIL_H_
#define RELIN_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "relin/circuit.h"
#include "relin/length_cost.h"

namespace relin::testing {

using Lengths = std::map<std::string, std::int64_t>;
using Amounts = std::map<std::string, std::int64_t>;

// Recursive length evaluation straight from the recurrence; nullopt when a
// product is lowered below the minimum length.
std::optional<Lengths> OracleLengths(const std::vector<Vertex>& records,
                                     const Amounts& x, bool reduced);

// Cost with exact rationals; nullopt when infeasible.
std::optional<Rational> OracleCost(const std::vector<Vertex>& records,
                                   const Amounts& x, Rational k_m, Rational k_r,
                                   bool prose, bool reduced);

// The bundled example: six inputs, P3 = I1 + I2, u = I3 * I4, P5 = I5 + I6,
// P1 = P3 * u, P2 = u + P5, Pfinal = P1 * P2.
std::vector<Vertex> ExampleRecords();

// Tree-shaped circuit (every non-input vertex has outdegree <= 1) with at
// most `max_vertices` vertices. Inputs may fan out.
std::vector<Vertex> RandomSingleOutput(std::mt19937_64& rng, int max_vertices,
                                       bool squares = true);

// General DAG with fan-out, at most `max_vertices` vertices.
std::vector<Vertex> RandomDag(std::mt19937_64& rng, int max_vertices,
                              bool squares = true);

// Parsed LP file: objective, constraint rows and bounds.
struct LpModel {
  struct Row {
    std::string name;
    std::map<std::string, std::int64_t> coefs;
    std::string op;  // "=", ">=", "<="
    std::int64_t rhs = 0;
  };
  std::map<std::string, std::int64_t> objective;
  std::vector<Row> rows;
  std::vector<Row> bounds;  // single-variable rows
  std::vector<std::string> generals;

  std::int64_t Objective(const std::map<std::string, std::int64_t>& at) const;
  // Names of the violated rows and bounds.
  std::vector<std::string> Violations(
      const std::map<std::string, std::int64_t>& at) const;
};
LpModel ParseLp(const std::string& text);

}  // namespace relin::testing

#endif  // RELIN_TESTS_TEST_UTIL_H_
