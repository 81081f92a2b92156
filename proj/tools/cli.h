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


// The relin command-line tool as a library so tests can drive it.

#ifndef RELIN_TOOLS_CLI_H_
#define RELIN_TOOLS_CLI_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace relin::cli {

struct CommandConfig {
  std::string command;
  std::string input;
  std::string plan;
  std::string method;
  std::string marks;
  std::string output;
  std::optional<std::string> semantics;
  std::optional<std::string> cost_mode;
  std::optional<std::string> k_m;
  std::optional<std::string> k_r;
  bool strict = false;
  std::int64_t per_mark_max = 1;
  std::uint64_t cap = 0;  // 0 keeps the solver default
  int threads = 1;
};

// Executes one command. Returns 0 on success, 1 for parse and validation
// errors, 2 for infeasible plans and 3 when a solver's capacity is exceeded.
int Run(const CommandConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (including the program name) and runs the command.
int Main(const std::vector<std::string>& args, std::ostream& out,
         std::ostream& err);

}  // namespace relin::cli

#endif  // RELIN_TOOLS_CLI_H_
