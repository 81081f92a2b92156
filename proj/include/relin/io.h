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


// JSON file formats shared by the command-line tool and the tests.

#ifndef RELIN_IO_H_
#define RELIN_IO_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relin/circuit.h"
#include "relin/gadgets.h"
#include "relin/length_cost.h"
#include "relin/solvers.h"

namespace relin {

// Throws Error(kParseError).
std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view text);

struct CircuitRecords {
  std::vector<Vertex> vertices;
  std::optional<Semantics> semantics;
};

// Parses without structural validation. Unknown fields are rejected with
// Error(kParseError).
CircuitRecords ParseCircuitRecords(std::string_view text);
std::string FormatCircuit(const Circuit& circuit,
                          std::optional<Semantics> semantics);

// Accepts a plan file or a solve result file.
RelinPlan ParsePlan(std::string_view text);
std::string FormatPlan(const RelinPlan& plan);

std::string FormatSolveResult(const Circuit& circuit, const SolveResult& result,
                              const CostParams& params, Semantics semantics);

struct SolveResultFile {
  std::string method;
  RelinPlan plan;
  CostBreakdown cost;
  std::map<std::string, std::int64_t> lengths;
};
SolveResultFile ParseSolveResult(std::string_view text);

KnapsackInstance ParseKnapsack(std::string_view text);
std::string FormatKnapsack(const KnapsackInstance& instance);

struct MarksFile {
  std::vector<std::string> marks;
  ReductionParams params;
  KnapsackInstance knapsack;  // as given to the reduction, before dropping
};
MarksFile ParseMarks(std::string_view text);
std::string FormatMarks(const ReductionArtifact& artifact,
                        const KnapsackInstance& original);

}  // namespace relin

#endif  // RELIN_IO_H_
