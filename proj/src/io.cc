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


#include "relin/io.h"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"
#include "relin/error.h"

namespace relin {

using nlohmann::json;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kParseError, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::kParseError, "write failed for '" + path + "'");
}

namespace {

[[noreturn]] void Fail(const std::string& message) {
  throw Error(ErrorCode::kParseError, message);
}

json Parse(std::string_view text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    Fail(std::string(what) + ": " + e.what());
  }
}

void ExpectObject(const json& j, const std::string& where) {
  if (!j.is_object()) Fail(where + " must be an object");
}

void CheckKeys(const json& j, std::initializer_list<std::string_view> allowed,
               const std::string& where) {
  ExpectObject(j, where);
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (std::string_view key : allowed) known = known || it.key() == key;
    if (!known) Fail(where + ": unknown field '" + it.key() + "'");
  }
}

const json& Require(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) Fail(where + ": missing field '" + key + "'");
  return *it;
}

std::int64_t AsInt(const json& j, const std::string& where) {
  if (!j.is_number_integer()) Fail(where + " must be an integer");
  return j.get<std::int64_t>();
}

std::string AsString(const json& j, const std::string& where) {
  if (!j.is_string()) Fail(where + " must be a string");
  return j.get<std::string>();
}

Rational AsRational(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return ParseRational(j.get<std::string>());
    } catch (const Error& e) {
      Fail(where + ": " + e.what());
    }
  }
  Fail(where + " must be an integer or a rational string");
}

std::vector<std::int64_t> AsIntList(const json& j, const std::string& where) {
  if (!j.is_array()) Fail(where + " must be an array");
  std::vector<std::int64_t> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(AsInt(j[k], where + "[" + std::to_string(k) + "]"));
  }
  return out;
}

std::string Dump(const json& j) { return j.dump(2) + "\n"; }

json CostJson(const CostBreakdown& cost) {
  return {{"mul", FormatRational(cost.mul_cost)},
          {"relin", FormatRational(cost.relin_cost)},
          {"total", FormatRational(cost.total)}};
}

RelinPlan PlanFromJson(const json& relin, const std::string& where) {
  ExpectObject(relin, where);
  RelinPlan plan;
  for (auto it = relin.begin(); it != relin.end(); ++it) {
    std::int64_t amount = AsInt(it.value(), where + "." + it.key());
    if (amount < 0) Fail(where + "." + it.key() + " must be non-negative");
    plan.Set(it.key(), amount);
  }
  return plan;
}

json PlanJson(const RelinPlan& plan) {
  json relin = json::object();
  for (const auto& [id, amount] : plan.entries()) relin[id] = amount;
  return relin;
}

}  // namespace

CircuitRecords ParseCircuitRecords(std::string_view text) {
  json j = Parse(text, "circuit");
  CheckKeys(j, {"semantics", "vertices"}, "circuit");
  CircuitRecords out;
  if (auto it = j.find("semantics"); it != j.end()) {
    std::string name = AsString(*it, "circuit.semantics");
    out.semantics = ParseSemantics(name);
    if (!out.semantics) Fail("circuit.semantics: unknown value '" + name + "'");
  }
  const json& vertices = Require(j, "vertices", "circuit");
  if (!vertices.is_array()) Fail("circuit.vertices must be an array");
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    const std::string where = "circuit.vertices[" + std::to_string(k) + "]";
    const json& v = vertices[k];
    CheckKeys(v, {"id", "kind", "parents"}, where);
    Vertex vertex;
    vertex.id = AsString(Require(v, "id", where), where + ".id");
    std::string kind = AsString(Require(v, "kind", where), where + ".kind");
    auto parsed = ParseKind(kind);
    if (!parsed) Fail(where + ".kind: unknown kind '" + kind + "'");
    vertex.kind = *parsed;
    if (auto it = v.find("parents"); it != v.end()) {
      if (!it->is_array()) Fail(where + ".parents must be an array");
      for (std::size_t p = 0; p < it->size(); ++p) {
        vertex.parents.push_back(AsString(
            (*it)[p], where + ".parents[" + std::to_string(p) + "]"));
      }
    }
    out.vertices.push_back(std::move(vertex));
  }
  return out;
}

std::string FormatCircuit(const Circuit& circuit,
                          std::optional<Semantics> semantics) {
  json j = json::object();
  if (semantics) j["semantics"] = std::string(SemanticsName(*semantics));
  json vertices = json::array();
  for (const Vertex& v : circuit.records()) {
    json entry = {{"id", v.id}, {"kind", std::string(KindName(v.kind))}};
    if (!v.parents.empty()) entry["parents"] = v.parents;
    vertices.push_back(std::move(entry));
  }
  j["vertices"] = std::move(vertices);
  return Dump(j);
}

RelinPlan ParsePlan(std::string_view text) {
  json j = Parse(text, "plan");
  ExpectObject(j, "plan");
  if (j.contains("method")) return ParseSolveResult(text).plan;
  CheckKeys(j, {"relin"}, "plan");
  return PlanFromJson(Require(j, "relin", "plan"), "plan.relin");
}

std::string FormatPlan(const RelinPlan& plan) {
  return Dump(json{{"relin", PlanJson(plan)}});
}

std::string FormatSolveResult(const Circuit& circuit, const SolveResult& result,
                              const CostParams& params, Semantics semantics) {
  json lengths = json::object();
  for (Circuit::Index i = 0; i < circuit.size(); ++i) {
    lengths[circuit.id(i)] = result.profile.l_new[i];
  }
  json j = {{"method", result.method},
            {"semantics", std::string(SemanticsName(semantics))},
            {"cost_mode", std::string(CostModeName(params.mode))},
            {"k_m", FormatRational(params.k_m)},
            {"k_r", FormatRational(params.k_r)},
            {"cost", CostJson(result.cost)},
            {"relin", PlanJson(result.plan)},
            {"lengths", std::move(lengths)}};
  return Dump(j);
}

SolveResultFile ParseSolveResult(std::string_view text) {
  json j = Parse(text, "result");
  CheckKeys(j,
            {"method", "semantics", "cost_mode", "k_m", "k_r", "cost", "relin",
             "lengths"},
            "result");
  SolveResultFile out;
  out.method = AsString(Require(j, "method", "result"), "result.method");
  out.plan = PlanFromJson(Require(j, "relin", "result"), "result.relin");
  if (auto it = j.find("cost"); it != j.end()) {
    CheckKeys(*it, {"mul", "relin", "total"}, "result.cost");
    out.cost.mul_cost = AsRational(Require(*it, "mul", "result.cost"), "result.cost.mul");
    out.cost.relin_cost =
        AsRational(Require(*it, "relin", "result.cost"), "result.cost.relin");
    out.cost.total =
        AsRational(Require(*it, "total", "result.cost"), "result.cost.total");
  }
  if (auto it = j.find("lengths"); it != j.end()) {
    ExpectObject(*it, "result.lengths");
    for (auto l = it->begin(); l != it->end(); ++l) {
      out.lengths[l.key()] = AsInt(l.value(), "result.lengths." + l.key());
    }
  }
  return out;
}

KnapsackInstance ParseKnapsack(std::string_view text) {
  json j = Parse(text, "knapsack");
  CheckKeys(j, {"values", "weights", "capacity"}, "knapsack");
  KnapsackInstance out;
  out.values = AsIntList(Require(j, "values", "knapsack"), "knapsack.values");
  out.weights = AsIntList(Require(j, "weights", "knapsack"), "knapsack.weights");
  out.capacity =
      AsInt(Require(j, "capacity", "knapsack"), "knapsack.capacity");
  try {
    CheckKnapsack(out);
  } catch (const Error& e) {
    Fail(std::string("knapsack: ") + e.what());
  }
  return out;
}

std::string FormatKnapsack(const KnapsackInstance& instance) {
  return Dump(json{{"values", instance.values},
                   {"weights", instance.weights},
                   {"capacity", instance.capacity}});
}

MarksFile ParseMarks(std::string_view text) {
  json j = Parse(text, "marks");
  CheckKeys(j, {"marks", "params", "knapsack"}, "marks");
  MarksFile out;
  const json& marks = Require(j, "marks", "marks");
  if (!marks.is_array()) Fail("marks.marks must be an array");
  for (std::size_t k = 0; k < marks.size(); ++k) {
    out.marks.push_back(
        AsString(marks[k], "marks.marks[" + std::to_string(k) + "]"));
  }
  if (auto it = j.find("params"); it != j.end()) {
    const std::string w = "marks.params";
    CheckKeys(*it,
              {"M", "T", "K", "k_r", "k_m", "W_prime", "lambda", "r",
               "repair_rounds", "cost_mode", "semantics"},
              w);
    ReductionParams& p = out.params;
    const json& params = *it;
    if (params.contains("M")) p.m = AsInt(params["M"], w + ".M");
    if (params.contains("T")) p.t = AsInt(params["T"], w + ".T");
    if (params.contains("K")) p.k = AsInt(params["K"], w + ".K");
    if (params.contains("k_r")) p.k_r = AsRational(params["k_r"], w + ".k_r");
    if (params.contains("k_m")) p.k_m = AsRational(params["k_m"], w + ".k_m");
    if (params.contains("W_prime")) {
      p.capacity_sum = AsInt(params["W_prime"], w + ".W_prime");
    }
    if (params.contains("lambda")) p.lambda = AsIntList(params["lambda"], w + ".lambda");
    if (params.contains("r")) p.r = AsIntList(params["r"], w + ".r");
    if (params.contains("repair_rounds")) {
      p.repair_rounds =
          static_cast<int>(AsInt(params["repair_rounds"], w + ".repair_rounds"));
    }
  }
  if (auto it = j.find("knapsack"); it != j.end()) {
    out.knapsack = ParseKnapsack(it->dump());
  }
  return out;
}

std::string FormatMarks(const ReductionArtifact& artifact,
                        const KnapsackInstance& original) {
  const ReductionParams& p = artifact.params;
  json params = {{"M", p.m},
                 {"T", p.t},
                 {"K", p.k},
                 {"k_r", FormatRational(p.k_r)},
                 {"k_m", FormatRational(p.k_m)},
                 {"W_prime", p.capacity_sum},
                 {"lambda", p.lambda},
                 {"r", p.r},
                 {"repair_rounds", p.repair_rounds},
                 {"cost_mode", "prose"},
                 {"semantics", "reduced"}};
  json j = {{"marks", artifact.marks},
            {"params", std::move(params)},
            {"knapsack",
             {{"values", original.values},
              {"weights", original.weights},
              {"capacity", original.capacity}}}};
  return Dump(j);
}

}  // namespace relin
