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

#ifndef RELIN_DOT_H_
#define RELIN_DOT_H_

#include <string>

#include "relin/circuit.h"
#include "relin/length_cost.h"

namespace relin {

// Graphviz rendering. Labels carry the vertex kind and, when `lengths` is
// given, the resolved length. Byte-identical for identical inputs.
std::string ExportDot(const Circuit& circuit,
                      const LengthProfile* lengths = nullptr);

}  // namespace relin

#endif  // RELIN_DOT_H_
