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

// Squaring-enabled arithmetic circuits.
//
// A circuit is a DAG whose vertices are inputs, outputs, additions,
// multiplications and squarings. Vertices are addressed by string ids; every
// ordering the library produces breaks ties lexicographically by id so that
// all outputs are reproducible.

#ifndef RELIN_CIRCUIT_H_
#define RELIN_CIRCUIT_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "relin/error.h"

namespace relin {

enum class VertexKind { kInput, kOutput, kAdd, kMul, kSquare };

// Lower-case name used by the file formats ("input", "mul", ...).
std::string_view KindName(VertexKind kind);
std::optional<VertexKind> ParseKind(std::string_view name);

// True for the kinds whose output length is a product of parent lengths.
inline bool IsProduct(VertexKind kind) {
  return kind == VertexKind::kMul || kind == VertexKind::kSquare;
}

// One vertex record as it appears in a circuit file. A squaring stores its
// single parent once.
struct Vertex {
  std::string id;
  VertexKind kind = VertexKind::kInput;
  std::vector<std::string> parents;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

enum class ValidationMode {
  // Fan-out is unconstrained.
  kLenient,
  // Additionally: inputs have outdegree exactly 1 and squarings at most 1.
  kStrict,
};

struct Violation {
  ErrorCode code;
  std::string vertex;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

// Checks raw records without building. Violations are data; this never
// throws.
ValidationReport Validate(std::span<const Vertex> records,
                          ValidationMode mode = ValidationMode::kLenient);

// Immutable validated DAG.
class Circuit {
 public:
  using Index = std::size_t;

  // Builds and validates (lenient rules). A mul whose two parents coincide is
  // stored as a squaring. Throws Error with kDuplicateId, kUnknownParent,
  // kCycleDetected or kDegreeViolation.
  static Circuit Build(std::vector<Vertex> records);

  Circuit() = default;

  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  const Vertex& vertex(Index i) const { return records_[i]; }
  const std::string& id(Index i) const { return records_[i].id; }
  VertexKind kind(Index i) const { return records_[i].kind; }
  std::span<const Vertex> records() const { return records_; }

  // Parent indices in record order; a squaring has exactly one.
  std::span<const Index> parents(Index i) const { return parents_[i]; }
  // Distinct consumers, in index order.
  std::span<const Index> children(Index i) const { return children_[i]; }
  // Number of outgoing edges; add(a, a) counts twice.
  int outdegree(Index i) const { return outdegree_[i]; }

  std::optional<Index> Find(std::string_view id) const;
  // Throws Error(kUnknownVertex).
  Index IndexOf(std::string_view id) const;

  // Parents before children, ties broken by smallest id.
  std::span<const Index> topo_order() const { return topo_; }
  // Position of each vertex inside topo_order().
  std::size_t topo_rank(Index i) const { return rank_[i]; }

  // Vertices with outdegree 0, in topological order.
  std::vector<Index> Sinks() const;
  std::vector<Index> Inputs() const;

  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.records_ == b.records_;
  }

 private:
  std::vector<Vertex> records_;
  std::unordered_map<std::string, Index> index_;
  std::vector<std::vector<Index>> parents_;
  std::vector<std::vector<Index>> children_;
  std::vector<int> outdegree_;
  std::vector<Index> topo_;
  std::vector<std::size_t> rank_;
};

ValidationReport Validate(const Circuit& circuit,
                          ValidationMode mode = ValidationMode::kLenient);

// Vertex ids in Circuit::topo_order().
std::vector<std::string> TopoOrder(const Circuit& circuit);

}  // namespace relin

#endif  // RELIN_CIRCUIT_H_
