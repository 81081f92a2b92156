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


#include "cli.h"

#include <exception>
#include <sstream>

#include "CLI11.hpp"
#include "relin/circuit.h"
#include "relin/dot.h"
#include "relin/error.h"
#include "relin/gadgets.h"
#include "relin/io.h"
#include "relin/length_cost.h"
#include "relin/solvers.h"

namespace relin::cli {
namespace {

int ExitCode(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInfeasibleRelin:
    case ErrorCode::kInvalidPlan:
      return 2;
    case ErrorCode::kSearchSpaceTooLarge:
    case ErrorCode::kTooManyItems:
      return 3;
    default:
      return 1;
  }
}

Semantics ResolveSemantics(const CommandConfig& config,
                           std::optional<Semantics> fallback) {
  if (config.semantics) {
    auto parsed = ParseSemantics(*config.semantics);
    if (!parsed) {
      throw Error(ErrorCode::kParseError,
                  "--semantics: unknown value '" + *config.semantics + "'");
    }
    return *parsed;
  }
  return fallback.value_or(Semantics::Standard());
}

CostParams ResolveParams(const CommandConfig& config, CostParams defaults) {
  CostParams params = defaults;
  if (config.cost_mode) {
    auto parsed = ParseCostMode(*config.cost_mode);
    if (!parsed) {
      throw Error(ErrorCode::kParseError,
                  "--cost: unknown value '" + *config.cost_mode + "'");
    }
    params.mode = *parsed;
  }
  if (config.k_m) params.k_m = ParseRational(*config.k_m);
  if (config.k_r) params.k_r = ParseRational(*config.k_r);
  CheckCostParams(params);
  return params;
}

void Echo(std::ostream& out, Semantics semantics, const CostParams& params) {
  out << "semantics: " << SemanticsName(semantics) << "\n"
      << "cost_mode: " << CostModeName(params.mode) << "\n"
      << "k_m: " << FormatRational(params.k_m) << "\n"
      << "k_r: " << FormatRational(params.k_r) << "\n";
}

void Report(std::ostream& out, const Circuit& circuit,
            const SolveResult& result) {
  out << "mul_cost: " << FormatRational(result.cost.mul_cost) << "\n"
      << "relin_cost: " << FormatRational(result.cost.relin_cost) << "\n"
      << "total: " << FormatRational(result.cost.total) << "\n"
      << "relin:\n";
  for (const auto& [id, amount] : result.plan.entries()) {
    out << "  " << id << ": " << amount << "\n";
  }
  out << "lengths:\n";
  for (Circuit::Index i : circuit.topo_order()) {
    out << "  " << circuit.id(i) << ": " << result.profile.l_new[i] << "\n";
  }
}

struct LoadedCircuit {
  Circuit circuit;
  std::optional<Semantics> semantics;
};

LoadedCircuit LoadCircuit(const std::string& path) {
  CircuitRecords records = ParseCircuitRecords(ReadFile(path));
  return {Circuit::Build(std::move(records.vertices)), records.semantics};
}

void Emit(const CommandConfig& config, std::ostream& out,
          const std::string& text) {
  if (config.output.empty()) {
    out << text;
  } else {
    WriteFile(config.output, text);
  }
}

int RunValidate(const CommandConfig& config, std::ostream& out) {
  CircuitRecords records = ParseCircuitRecords(ReadFile(config.input));
  ValidationReport report =
      Validate(records.vertices, config.strict ? ValidationMode::kStrict
                                               : ValidationMode::kLenient);
  out << "mode: " << (config.strict ? "strict" : "lenient") << "\n";
  if (report.ok()) {
    out << "ok: " << records.vertices.size() << " vertices\n";
    return 0;
  }
  for (const Violation& v : report.violations) {
    out << "violation: " << ErrorCodeName(v.code) << ": " << v.message << "\n";
  }
  return 1;
}

int RunEval(const CommandConfig& config, std::ostream& out) {
  if (config.plan.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "eval needs --plan");
  }
  LoadedCircuit loaded = LoadCircuit(config.input);
  Semantics semantics = ResolveSemantics(config, loaded.semantics);
  CostParams params = ResolveParams(config, CostParams{});
  RelinPlan plan = ParsePlan(ReadFile(config.plan));
  SolveResult result =
      Evaluate(loaded.circuit, plan, params, semantics, "eval");
  Echo(out, semantics, params);
  Report(out, loaded.circuit, result);
  return 0;
}

int RunSolve(const CommandConfig& config, std::ostream& out) {
  LoadedCircuit loaded = LoadCircuit(config.input);
  std::optional<MarksFile> marks;
  if (!config.marks.empty()) marks = ParseMarks(ReadFile(config.marks));

  CostParams defaults;
  std::optional<Semantics> semantics_default = loaded.semantics;
  if (marks && config.method == "restricted") {
    defaults = CostParams{marks->params.k_m, marks->params.k_r,
                          CostMode::kProse};
    if (!semantics_default) semantics_default = Semantics::Reduced();
  }
  Semantics semantics = ResolveSemantics(config, semantics_default);
  CostParams params = ResolveParams(config, defaults);
  const Circuit& circuit = loaded.circuit;

  SolveResult result;
  if (config.method == "baseline") {
    result = Evaluate(circuit, BaselinePlan(circuit, semantics), params,
                      semantics, "baseline");
  } else if (config.method == "brute") {
    BruteForceOptions options;
    options.threads = config.threads;
    if (config.cap) options.max_plans = config.cap;
    result = BruteForceSolve(circuit, params, semantics, options);
  } else if (config.method == "dp") {
    result = DpSolveSingleOutput(circuit, params, semantics);
  } else if (config.method == "restricted") {
    if (!marks) {
      throw Error(ErrorCode::kInvalidArgument,
                  "--method restricted needs --marks");
    }
    RestrictedOptions options;
    if (config.cap) options.max_plans = config.cap;
    result = RestrictedSolve(circuit, params, semantics, marks->marks,
                             config.per_mark_max, options);
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "--method: unknown value '" + config.method + "'");
  }
  out << "method: " << result.method << "\n";
  Echo(out, semantics, params);
  Report(out, circuit, result);
  if (!config.output.empty()) {
    WriteFile(config.output,
              FormatSolveResult(circuit, result, params, semantics));
  }
  return 0;
}

int RunReduce(const CommandConfig& config, std::ostream& out) {
  if (config.output.empty() || config.marks.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "reduce needs -o and --marks");
  }
  KnapsackInstance instance = ParseKnapsack(ReadFile(config.input));
  ReductionArtifact artifact = BuildReduction(instance);
  WriteFile(config.output,
            FormatCircuit(artifact.circuit, ReductionArtifact::semantics()));
  WriteFile(config.marks, FormatMarks(artifact, instance));
  const ReductionParams& p = artifact.params;
  Echo(out, ReductionArtifact::semantics(), artifact.cost_params());
  out << "items: " << artifact.knapsack.instance.size() << " of "
      << instance.size() << "\n"
      << "M: " << p.m << "\nT: " << p.t << "\nK: " << p.k
      << "\nW_prime: " << p.capacity_sum
      << "\nrepair_rounds: " << p.repair_rounds
      << "\nvertices: " << artifact.circuit.size() << "\n"
      << "marks:";
  for (const std::string& s : artifact.marks) out << " " << s;
  out << "\n";
  return 0;
}

int RunDecode(const CommandConfig& config, std::ostream& out) {
  if (config.marks.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "decode needs --marks");
  }
  MarksFile marks = ParseMarks(ReadFile(config.marks));
  SolveResultFile result = ParseSolveResult(ReadFile(config.input));
  NormalizedKnapsack knapsack = Normalize(marks.knapsack);
  std::vector<std::int64_t> lengths;
  for (const std::string& id : marks.marks) {
    auto it = result.lengths.find(id);
    if (it == result.lengths.end()) {
      throw Error(ErrorCode::kParseError,
                  "result has no length for mark '" + id + "'");
    }
    lengths.push_back(it->second);
  }
  DecodedSelection decoded =
      DecodeMarks(knapsack, marks.knapsack.size(), lengths);
  out << "selection:";
  for (int x : decoded.selection) out << " " << x;
  out << "\nvalue: " << decoded.value << "\n";
  return 0;
}

int RunKnapsack(const CommandConfig& config, std::ostream& out) {
  KnapsackInstance instance = ParseKnapsack(ReadFile(config.input));
  KnapsackSolution best = KnapsackBrute(instance);
  out << "selection:";
  for (int x : best.selection) out << " " << x;
  out << "\nvalue: " << best.value << "\n";
  return 0;
}

int RunExportDot(const CommandConfig& config, std::ostream& out) {
  LoadedCircuit loaded = LoadCircuit(config.input);
  if (config.plan.empty()) {
    Emit(config, out, ExportDot(loaded.circuit));
    return 0;
  }
  Semantics semantics = ResolveSemantics(config, loaded.semantics);
  LengthProfile profile = PropagateLengths(
      loaded.circuit, ParsePlan(ReadFile(config.plan)), semantics);
  Emit(config, out, ExportDot(loaded.circuit, &profile));
  return 0;
}

int RunExportLp(const CommandConfig& config, std::ostream& out) {
  LoadedCircuit loaded = LoadCircuit(config.input);
  Semantics semantics = ResolveSemantics(config, loaded.semantics);
  CostParams params = ResolveParams(config, CostParams{});
  Emit(config, out, ExportIlp(loaded.circuit, params, semantics));
  return 0;
}

}  // namespace

int Run(const CommandConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.command == "validate") return RunValidate(config, out);
    if (config.command == "eval") return RunEval(config, out);
    if (config.command == "solve") return RunSolve(config, out);
    if (config.command == "reduce") return RunReduce(config, out);
    if (config.command == "decode") return RunDecode(config, out);
    if (config.command == "knapsack") return RunKnapsack(config, out);
    if (config.command == "export-dot") return RunExportDot(config, out);
    if (config.command == "export-lp") return RunExportLp(config, out);
    err << "error: unknown command '" << config.command << "'\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    return ExitCode(e.code());
  }
}

int Main(const std::vector<std::string>& args, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"Relinearization planning for squaring-enabled circuits",
               "relin"};
  app.require_subcommand(1);
  CommandConfig config;

  auto add_constants = [&config](CLI::App* sub) {
    sub->add_option("--semantics", config.semantics,
                    "standard or reduced (default: from file, else standard)");
    sub->add_option("--cost", config.cost_mode, "objective or prose");
    sub->add_option("--km", config.k_m, "multiplication cost per unit length");
    sub->add_option("--kr", config.k_r, "relinearization cost per unit");
  };

  CLI::App* validate = app.add_subcommand("validate", "Check a circuit file");
  validate->add_option("circuit", config.input)->required();
  validate->add_flag("--strict", config.strict,
                     "Also require input outdegree 1 and squaring fan-out <= 1");

  CLI::App* eval = app.add_subcommand("eval", "Cost of a relinearization plan");
  eval->add_option("circuit", config.input)->required();
  eval->add_option("--plan", config.plan, "plan or solve result file")
      ->required();
  add_constants(eval);

  CLI::App* solve = app.add_subcommand("solve", "Compute a plan");
  solve->add_option("circuit", config.input)->required();
  solve->add_option("--method", config.method)
      ->required()
      ->check(CLI::IsMember({"baseline", "brute", "dp", "restricted"}));
  solve->add_option("--marks", config.marks, "marks file (restricted)");
  solve->add_option("--per-mark-max", config.per_mark_max,
                    "largest amount per mark (restricted)");
  solve->add_option("--cap", config.cap, "enumeration limit on plans");
  solve->add_option("--threads", config.threads, "brute-force workers")
      ->check(CLI::PositiveNumber);
  solve->add_option("-o,--output", config.output, "solve result file");
  add_constants(solve);

  CLI::App* reduce =
      app.add_subcommand("reduce", "Build the circuit for a knapsack instance");
  reduce->add_option("knapsack", config.input)->required();
  reduce->add_option("-o,--output", config.output, "circuit file")->required();
  reduce->add_option("--marks", config.marks, "marks file")->required();

  CLI::App* decode =
      app.add_subcommand("decode", "Read a knapsack selection off a result");
  decode->add_option("result", config.input)->required();
  decode->add_option("--marks", config.marks, "marks file")->required();

  CLI::App* knapsack =
      app.add_subcommand("knapsack", "Solve a knapsack instance exactly");
  knapsack->add_option("knapsack", config.input)->required();
  knapsack->add_flag("--brute", "exhaustive search (the only method)");

  CLI::App* dot = app.add_subcommand("export-dot", "Graphviz rendering");
  dot->add_option("circuit", config.input)->required();
  dot->add_option("--plan", config.plan, "annotate with resolved lengths");
  dot->add_option("--semantics", config.semantics);
  dot->add_option("-o,--output", config.output);

  CLI::App* lp = app.add_subcommand("export-lp", "Integer program in LP format");
  lp->add_option("circuit", config.input)->required();
  lp->add_option("-o,--output", config.output);
  add_constants(lp);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  config.command = app.get_subcommands().front()->get_name();
  return Run(config, out, err);
}

}  // namespace relin::cli
