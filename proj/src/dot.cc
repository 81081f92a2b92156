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

#include "relin/dot.h"

#include <sstream>

namespace relin {
namespace {

bool PlainIdentifier(const std::string& id) {
  if (id.empty() || (id[0] >= '0' && id[0] <= '9')) return false;
  for (char c : id) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

std::string Quote(const std::string& id) {
  if (PlainIdentifier(id)) return id;
  std::string out = "\"";
  for (char c : id) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string_view Shape(VertexKind kind) {
  switch (kind) {
    case VertexKind::kInput:
      return "circle";
    case VertexKind::kOutput:
      return "doublecircle";
    case VertexKind::kAdd:
      return "box";
    case VertexKind::kMul:
    case VertexKind::kSquare:
      return "ellipse";
  }
  return "plaintext";
}

}  // namespace

std::string ExportDot(const Circuit& circuit, const LengthProfile* lengths) {
  std::ostringstream out;
  out << "digraph circuit {\n  rankdir=BT;\n";
  for (Circuit::Index i : circuit.topo_order()) {
    std::string label = std::string(KindName(circuit.kind(i)));
    if (lengths != nullptr) {
      label += "\\nl=" + std::to_string(lengths->l_new[i]);
    }
    out << "  " << Quote(circuit.id(i)) << " [label=\"" << label
        << "\", shape=" << Shape(circuit.kind(i)) << "];\n";
  }
  for (Circuit::Index i : circuit.topo_order()) {
    for (Circuit::Index p : circuit.parents(i)) {
      out << "  " << Quote(circuit.id(p)) << " -> " << Quote(circuit.id(i))
          << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace relin
