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

#include "relin/circuit.h"

#include <algorithm>
#include <functional>
#include <queue>
#include <utility>

namespace relin {

std::string_view KindName(VertexKind kind) {
  switch (kind) {
    case VertexKind::kInput:
      return "input";
    case VertexKind::kOutput:
      return "output";
    case VertexKind::kAdd:
      return "add";
    case VertexKind::kMul:
      return "mul";
    case VertexKind::kSquare:
      return "square";
  }
  return "unknown";
}

std::optional<VertexKind> ParseKind(std::string_view name) {
  if (name == "input") return VertexKind::kInput;
  if (name == "output") return VertexKind::kOutput;
  if (name == "add") return VertexKind::kAdd;
  if (name == "mul") return VertexKind::kMul;
  if (name == "square") return VertexKind::kSquare;
  return std::nullopt;
}

namespace {

using Index = Circuit::Index;

bool IndegreeOk(VertexKind kind, std::size_t n) {
  switch (kind) {
    case VertexKind::kInput:
      return n == 0;
    case VertexKind::kOutput:
      return n == 1 || n == 2;
    case VertexKind::kAdd:
    case VertexKind::kMul:
      return n == 2;
    case VertexKind::kSquare:
      return n == 1;
  }
  return false;
}

std::string_view ExpectedIndegree(VertexKind kind) {
  switch (kind) {
    case VertexKind::kInput:
      return "0";
    case VertexKind::kOutput:
      return "1 or 2";
    case VertexKind::kAdd:
    case VertexKind::kMul:
      return "2";
    case VertexKind::kSquare:
      return "1";
  }
  return "?";
}

// Everything Build and Validate share. Edges that cannot be resolved are
// dropped from the adjacency after being reported.
struct Analysis {
  std::unordered_map<std::string, Index> index;
  std::vector<std::vector<Index>> parents;
  std::vector<std::vector<Index>> children;
  std::vector<int> outdegree;
  std::vector<Index> topo;
  std::vector<Violation> violations;
};

void Report(Analysis& a, ErrorCode code, const std::string& vertex,
            std::string message) {
  a.violations.push_back({code, vertex, std::move(message)});
}

Analysis Analyze(std::span<const Vertex> records, ValidationMode mode) {
  Analysis a;
  const std::size_t n = records.size();
  a.index.reserve(n * 2);
  a.parents.resize(n);
  a.children.resize(n);
  a.outdegree.assign(n, 0);

  for (Index i = 0; i < n; ++i) {
    auto [it, inserted] = a.index.emplace(records[i].id, i);
    if (!inserted) {
      Report(a, ErrorCode::kDuplicateId, records[i].id,
             "duplicate vertex id '" + records[i].id + "'");
    }
  }

  for (Index i = 0; i < n; ++i) {
    const Vertex& v = records[i];
    if (!IndegreeOk(v.kind, v.parents.size())) {
      Report(a, ErrorCode::kDegreeViolation, v.id,
             "vertex '" + v.id + "' (" + std::string(KindName(v.kind)) +
                 ") expects indegree " + std::string(ExpectedIndegree(v.kind)) +
                 ", got " + std::to_string(v.parents.size()));
    }
    for (const std::string& p : v.parents) {
      auto it = a.index.find(p);
      if (it == a.index.end()) {
        Report(a, ErrorCode::kUnknownParent, v.id,
               "vertex '" + v.id + "' references unknown parent '" + p + "'");
        continue;
      }
      if (it->second == i) {
        Report(a, ErrorCode::kCycleDetected, v.id,
               "vertex '" + v.id + "' is its own parent");
        continue;
      }
      a.parents[i].push_back(it->second);
    }
    // mul(a, a) is a squaring; keep a single edge for it.
    if (v.kind == VertexKind::kMul && a.parents[i].size() == 2 &&
        a.parents[i][0] == a.parents[i][1]) {
      a.parents[i].pop_back();
    }
    for (Index p : a.parents[i]) ++a.outdegree[p];
    for (Index p : a.parents[i]) {
      auto& ch = a.children[p];
      if (ch.empty() || ch.back() != i) ch.push_back(i);
    }
  }

  // Kahn's algorithm, smallest id first.
  auto later = [&records](Index x, Index y) {
    return records[x].id > records[y].id;
  };
  std::priority_queue<Index, std::vector<Index>, decltype(later)> ready(later);
  std::vector<int> pending(n, 0);
  for (Index i = 0; i < n; ++i) {
    pending[i] = static_cast<int>(a.parents[i].size());
    if (pending[i] == 0) ready.push(i);
  }
  a.topo.reserve(n);
  while (!ready.empty()) {
    Index i = ready.top();
    ready.pop();
    a.topo.push_back(i);
    for (Index c : a.children[i]) {
      // add(p, p) holds two edges from p.
      int edges = static_cast<int>(
          std::count(a.parents[c].begin(), a.parents[c].end(), i));
      pending[c] -= edges;
      if (pending[c] == 0) ready.push(c);
    }
  }
  if (a.topo.size() != n) {
    std::vector<Index> stuck;
    for (Index i = 0; i < n; ++i) {
      if (pending[i] > 0) stuck.push_back(i);
    }
    std::sort(stuck.begin(), stuck.end(), [&records](Index x, Index y) {
      return records[x].id < records[y].id;
    });
    std::string ids;
    for (std::size_t k = 0; k < stuck.size() && k < 8; ++k) {
      if (k) ids += ", ";
      ids += records[stuck[k]].id;
    }
    Report(a, ErrorCode::kCycleDetected, records[stuck.front()].id,
           "cycle through vertices {" + ids + (stuck.size() > 8 ? ", ..." : "") +
               "}");
  }

  for (Index i = 0; i < n; ++i) {
    const Vertex& v = records[i];
    const int out = a.outdegree[i];
    if (v.kind == VertexKind::kOutput && out != 0) {
      Report(a, ErrorCode::kDegreeViolation, v.id,
             "output '" + v.id + "' must have outdegree 0, got " +
                 std::to_string(out));
    }
    if (v.kind == VertexKind::kInput && out == 0 && n > 1) {
      Report(a, ErrorCode::kDegreeViolation, v.id,
             "input '" + v.id + "' has no consumer");
    }
    if (mode == ValidationMode::kStrict) {
      if (v.kind == VertexKind::kInput && out > 1) {
        Report(a, ErrorCode::kDegreeViolation, v.id,
               "Input outdegree must be 1: '" + v.id + "' has " +
                   std::to_string(out));
      }
      const bool squaring =
          v.kind == VertexKind::kSquare ||
          (v.kind == VertexKind::kMul && v.parents.size() == 2 &&
           v.parents[0] == v.parents[1]);
      if (squaring && out > 1) {
        Report(a, ErrorCode::kDegreeViolation, v.id,
               "Square outdegree must be 1: '" + v.id + "' has " +
                   std::to_string(out));
      }
    }
  }
  return a;
}

}  // namespace

ValidationReport Validate(std::span<const Vertex> records,
                          ValidationMode mode) {
  return ValidationReport{Analyze(records, mode).violations};
}

ValidationReport Validate(const Circuit& circuit, ValidationMode mode) {
  return Validate(circuit.records(), mode);
}

Circuit Circuit::Build(std::vector<Vertex> records) {
  Analysis a = Analyze(records, ValidationMode::kLenient);
  if (!a.violations.empty()) {
    const Violation& first = a.violations.front();
    throw Error(first.code, first.message);
  }
  Circuit c;
  for (Index i = 0; i < records.size(); ++i) {
    Vertex& v = records[i];
    if (v.kind == VertexKind::kMul && a.parents[i].size() == 1) {
      v.kind = VertexKind::kSquare;
      v.parents.resize(1);
    }
  }
  c.records_ = std::move(records);
  c.index_ = std::move(a.index);
  c.parents_ = std::move(a.parents);
  c.children_ = std::move(a.children);
  c.outdegree_ = std::move(a.outdegree);
  c.topo_ = std::move(a.topo);
  c.rank_.assign(c.records_.size(), 0);
  for (std::size_t r = 0; r < c.topo_.size(); ++r) c.rank_[c.topo_[r]] = r;
  return c;
}

std::optional<Circuit::Index> Circuit::Find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Circuit::Index Circuit::IndexOf(std::string_view id) const {
  auto found = Find(id);
  if (!found) {
    throw Error(ErrorCode::kUnknownVertex,
                "unknown vertex '" + std::string(id) + "'");
  }
  return *found;
}

std::vector<Circuit::Index> Circuit::Sinks() const {
  std::vector<Index> sinks;
  for (Index i : topo_) {
    if (outdegree_[i] == 0) sinks.push_back(i);
  }
  return sinks;
}

std::vector<Circuit::Index> Circuit::Inputs() const {
  std::vector<Index> inputs;
  for (Index i : topo_) {
    if (records_[i].kind == VertexKind::kInput) inputs.push_back(i);
  }
  return inputs;
}

std::vector<std::string> TopoOrder(const Circuit& circuit) {
  std::vector<std::string> ids;
  ids.reserve(circuit.size());
  for (Circuit::Index i : circuit.topo_order()) ids.push_back(circuit.id(i));
  return ids;
}

}  // namespace relin
