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


#include "relin/gadgets.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_map>
#include <utility>

#include "relin/error.h"

namespace relin {

using Index = Circuit::Index;

void CheckKnapsack(const KnapsackInstance& instance) {
  if (instance.values.size() != instance.weights.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "knapsack has " + std::to_string(instance.values.size()) +
                    " values but " + std::to_string(instance.weights.size()) +
                    " weights");
  }
  for (std::size_t i = 0; i < instance.size(); ++i) {
    if (instance.values[i] <= 0 || instance.weights[i] <= 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "knapsack item " + std::to_string(i + 1) +
                      " needs a positive value and weight");
    }
  }
  if (instance.capacity < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "knapsack capacity must be non-negative");
  }
}

NormalizedKnapsack Normalize(const KnapsackInstance& instance) {
  CheckKnapsack(instance);
  NormalizedKnapsack out;
  out.instance.capacity = instance.capacity;
  for (std::size_t i = 0; i < instance.size(); ++i) {
    if (instance.weights[i] > instance.capacity) continue;
    out.instance.values.push_back(instance.values[i]);
    out.instance.weights.push_back(instance.weights[i]);
    out.kept.push_back(i);
  }
  return out;
}

KnapsackSolution KnapsackBrute(const KnapsackInstance& instance) {
  CheckKnapsack(instance);
  const std::size_t n = instance.size();
  if (n > 20) {
    throw Error(ErrorCode::kTooManyItems,
                "brute-force knapsack supports at most 20 items, got " +
                    std::to_string(n));
  }
  KnapsackSolution best;
  best.selection.assign(n, 0);
  std::int64_t best_value = -1;
  // Item 0 is the most significant bit, so masks ascend lexicographically.
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::int64_t weight = 0;
    std::int64_t value = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> (n - 1 - i) & 1u) {
        weight += instance.weights[i];
        value += instance.values[i];
      }
    }
    if (weight <= instance.capacity && value > best_value) {
      best_value = value;
      for (std::size_t i = 0; i < n; ++i) {
        best.selection[i] = static_cast<int>(mask >> (n - 1 - i) & 1u);
      }
    }
  }
  best.value = best_value;
  return best;
}

int CeilLog2(std::int64_t x) {
  if (x < 1) throw Error(ErrorCode::kInvalidArgument, "CeilLog2 needs x >= 1");
  int e = 0;
  while ((std::int64_t{1} << e) < x) ++e;
  return e;
}

namespace {

int FloorLog2(std::int64_t x) {
  int e = 0;
  while ((x >> (e + 1)) > 0) ++e;
  return e;
}

std::string Join(std::string_view prefix, std::string_view name) {
  std::string id(prefix);
  id += '.';
  id += name;
  return id;
}

// Multiplication-only cost (Prose mode, k_m = 1) of the plan that lowers
// each listed vertex by its amount.
std::int64_t ProseMulCost(const Circuit& circuit,
                          const std::vector<std::pair<Index, std::int64_t>>& plan) {
  static const ScaledCost kUnit(CostParams{1, 0, CostMode::kProse});
  std::vector<std::int64_t> amounts(circuit.size(), 0);
  std::vector<std::int64_t> lengths(circuit.size(), 0);
  for (auto [i, x] : plan) amounts[i] = x;
  if (PropagateDense(circuit, amounts, Semantics::Reduced(), lengths)) {
    throw Error(ErrorCode::kInternal, "gadget plan is infeasible");
  }
  return ScaledTotal(circuit, amounts, lengths, kUnit).mul;
}

std::int64_t ReducedLength(const Circuit& circuit, Index target,
                           std::optional<Index> lowered) {
  std::vector<std::int64_t> amounts(circuit.size(), 0);
  std::vector<std::int64_t> lengths(circuit.size(), 0);
  if (lowered) amounts[*lowered] = 1;
  if (PropagateDense(circuit, amounts, Semantics::Reduced(), lengths)) {
    throw Error(ErrorCode::kInternal, "gadget plan is infeasible");
  }
  return lengths[target];
}

// Appends the squaring chain and the binary product for `k` on top of
// `base`; returns the id of the final vertex.
std::string AppendBinary(std::vector<Vertex>& records, std::string_view prefix,
                         const std::string& base, std::int64_t k,
                         std::string_view chain_name) {
  const int h = FloorLog2(k);
  std::vector<std::string> chain{base};
  for (int j = 1; j <= h; ++j) {
    std::string id = Join(prefix, std::string(chain_name) + std::to_string(j));
    records.push_back({id, VertexKind::kSquare, {chain.back()}});
    chain.push_back(id);
  }
  std::string running = chain.back();
  for (int j = 0; j < h; ++j) {
    if (!(k >> j & 1)) continue;
    std::string id = Join(prefix, "m" + std::to_string(j));
    records.push_back({id, VertexKind::kMul, {running, chain[j]}});
    running = id;
  }
  return running;
}

}  // namespace

GadgetCircuit BuildL(std::int64_t k, std::string_view prefix) {
  if (k < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "L(k) needs k >= 1, got " + std::to_string(k));
  }
  GadgetCircuit g;
  g.parameter = k;
  g.input = Join(prefix, "in");
  g.designated = Join(prefix, "c0");
  std::vector<Vertex> records{{g.input, VertexKind::kInput, {}},
                              {g.designated, VertexKind::kSquare, {g.input}}};
  std::string out = AppendBinary(records, prefix, g.designated, k, "c");
  g.outputs = {out};
  g.circuit = Circuit::Build(std::move(records));

  const Index o = g.circuit.IndexOf(out);
  const Index d = g.circuit.IndexOf(g.designated);
  std::int64_t delta = ReducedLength(g.circuit, o, std::nullopt) -
                       ReducedLength(g.circuit, o, d);
  if (delta != k) {
    throw Error(ErrorCode::kInternal, "L(" + std::to_string(k) +
                                          ") has sensitivity " +
                                          std::to_string(delta));
  }
  return g;
}

GadgetCircuit BuildLengthSource(std::int64_t length, std::string_view prefix) {
  if (length < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "length source needs length >= 1, got " +
                    std::to_string(length));
  }
  GadgetCircuit g;
  g.parameter = length;
  g.input = Join(prefix, "in");
  std::vector<Vertex> records{{g.input, VertexKind::kInput, {}}};
  std::string out = AppendBinary(records, prefix, g.input, length, "c");
  g.outputs = {out};
  g.circuit = Circuit::Build(std::move(records));
  std::int64_t got =
      ReducedLength(g.circuit, g.circuit.IndexOf(out), std::nullopt);
  if (got != length) {
    throw Error(ErrorCode::kInternal, "length source for " +
                                          std::to_string(length) +
                                          " produces " + std::to_string(got));
  }
  return g;
}

GadgetCircuit BuildLprime(std::int64_t lambda, const CostParams& params,
                          std::string_view prefix) {
  CheckCostParams(params);
  if (lambda < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "L'(lambda) needs lambda >= 0, got " + std::to_string(lambda));
  }
  std::int64_t units = 0;
  if (lambda > 0) {
    if (params.k_m.numerator() == 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "L'(lambda) with lambda > 0 needs k_m > 0");
    }
    Rational q = Rational(lambda) / params.k_m;
    if (q.denominator() != 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "lambda " + std::to_string(lambda) +
                      " is not a multiple of k_m " + FormatRational(params.k_m));
    }
    units = q.numerator();
  }

  GadgetCircuit g;
  g.parameter = lambda;
  g.input = Join(prefix, "in");
  g.designated = Join(prefix, "d");
  std::vector<Vertex> records{{g.input, VertexKind::kInput, {}},
                              {g.designated, VertexKind::kSquare, {g.input}}};
  if (units > 0) {
    // Squarings c_1..c_h carry 2 + 4 + ... + 2^h; taps c_j * f add 2^j.
    int h = 0;
    while ((std::int64_t{1} << (h + 2)) - 2 <= units) ++h;
    std::vector<std::string> chain{g.designated};
    for (int j = 1; j <= h; ++j) {
      std::string id = Join(prefix, "c" + std::to_string(j));
      records.push_back({id, VertexKind::kSquare, {chain.back()}});
      chain.push_back(id);
    }
    const std::int64_t rest = units - ((std::int64_t{1} << (h + 1)) - 2);
    if (rest > 0) {
      const std::string fresh = Join(prefix, "f");
      records.push_back({fresh, VertexKind::kInput, {}});
      for (int j = 0; j <= h; ++j) {
        if (!(rest >> j & 1)) continue;
        records.push_back({Join(prefix, "t" + std::to_string(j)),
                           VertexKind::kMul,
                           {chain[j], fresh}});
      }
    }
  }
  g.circuit = Circuit::Build(std::move(records));
  for (Index s : g.circuit.Sinks()) g.outputs.push_back(g.circuit.id(s));

  const Index d = g.circuit.IndexOf(g.designated);
  std::int64_t delta = ProseMulCost(g.circuit, {}) - ProseMulCost(g.circuit, {{d, 1}});
  if (delta != units) {
    throw Error(ErrorCode::kInternal, "L'(" + std::to_string(lambda) +
                                          ") has cost sensitivity " +
                                          std::to_string(delta));
  }
  return g;
}

std::string FreshId(std::string_view base,
                    const std::unordered_set<std::string>& used) {
  std::string id(base);
  if (!used.contains(id)) return id;
  for (int k = 2;; ++k) {
    std::string candidate = id + "#" + std::to_string(k);
    if (!used.contains(candidate)) return candidate;
  }
}

namespace {

// Accumulates records while keeping ids unique.
class Assembler {
 public:
  explicit Assembler(const Circuit& base) {
    for (const Vertex& v : base.records()) Add(v);
  }

  void Add(Vertex v) {
    used_.insert(v.id);
    records_.push_back(std::move(v));
  }

  // Same result as FreshId. Suffixes below the last one handed out for a
  // base are already taken, so the search resumes there.
  std::string Fresh(std::string_view base) {
    std::string id(base);
    if (!used_.contains(id)) return id;
    int& k = next_suffix_[id];
    if (k < 2) k = 2;
    for (;; ++k) {
      std::string candidate = id + "#" + std::to_string(k);
      if (!used_.contains(candidate)) return candidate;
    }
  }

  // Appends the listed vertices of `g`. References to vertices in `bound`
  // are rewritten to the bound id; other references follow the renaming.
  // Returns the new id of every vertex of `g`.
  std::vector<std::string> Append(const Circuit& g, const std::vector<bool>& skip,
              const std::unordered_map<Index, std::string>& bound) {
    std::vector<std::string> name(g.size());
    for (Index i = 0; i < g.size(); ++i) {
      if (auto it = bound.find(i); it != bound.end()) name[i] = it->second;
    }
    for (Index i = 0; i < g.size(); ++i) {
      if (skip[i]) continue;
      name[i] = Fresh(g.id(i));
      used_.insert(name[i]);
    }
    for (Index i = 0; i < g.size(); ++i) {
      if (skip[i]) continue;
      Vertex v{name[i], g.kind(i), {}};
      for (const std::string& p : g.vertex(i).parents) {
        v.parents.push_back(name[g.IndexOf(p)]);
      }
      records_.push_back(std::move(v));
    }
    return name;
  }

  Circuit Build() { return Circuit::Build(std::move(records_)); }

 private:
  std::vector<Vertex> records_;
  std::unordered_set<std::string> used_;
  std::unordered_map<std::string, int> next_suffix_;
};

Index UniqueSink(const Circuit& g, std::string_view which) {
  auto sinks = g.Sinks();
  if (sinks.size() != 1) {
    throw Error(ErrorCode::kMultipleSinks,
                std::string(which) + " has " + std::to_string(sinks.size()) +
                    " sinks; expected exactly one");
  }
  return sinks.front();
}

std::vector<bool> Ancestors(const Circuit& g, const std::vector<Index>& roots) {
  std::vector<bool> seen(g.size(), false);
  std::vector<Index> stack(roots.begin(), roots.end());
  while (!stack.empty()) {
    Index i = stack.back();
    stack.pop_back();
    if (seen[i]) continue;
    seen[i] = true;
    for (Index p : g.parents(i)) stack.push_back(p);
  }
  return seen;
}

std::vector<Index> Resolve(const Circuit& g, const std::vector<std::string>& ids) {
  std::vector<Index> out;
  out.reserve(ids.size());
  for (const std::string& id : ids) out.push_back(g.IndexOf(id));
  return out;
}

std::vector<Index> SortedById(const Circuit& g, std::vector<Index> v) {
  std::sort(v.begin(), v.end(),
            [&g](Index a, Index b) { return g.id(a) < g.id(b); });
  return v;
}

}  // namespace

Circuit Combine(CombineOp op, const Circuit& g1, const Circuit& g2,
                std::string_view new_id) {
  const Index s1 = UniqueSink(g1, "first circuit");
  const Index s2 = UniqueSink(g2, "second circuit");
  Assembler out(g1);
  std::vector<std::string> names =
      out.Append(g2, std::vector<bool>(g2.size(), false), {});
  std::string id = out.Fresh(
      new_id.empty() ? (op == CombineOp::kBoxPlus ? "plus" : "times") : new_id);
  out.Add({id, op == CombineOp::kBoxPlus ? VertexKind::kAdd : VertexKind::kMul,
           {g1.id(s1), names[s2]}});
  return out.Build();
}

Circuit Concat(const Circuit& g1, const Circuit& g2) {
  std::vector<Index> sinks = SortedById(g1, g1.Sinks());
  std::vector<Index> inputs = SortedById(g2, g2.Inputs());
  if (sinks.size() != inputs.size()) {
    throw Error(ErrorCode::kArityMismatch,
                "first circuit has " + std::to_string(sinks.size()) +
                    " sinks but second has " + std::to_string(inputs.size()) +
                    " inputs");
  }
  Assembler out(g1);
  std::vector<bool> skip(g2.size(), false);
  std::unordered_map<Index, std::string> bound;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    skip[inputs[k]] = true;
    bound[inputs[k]] = g1.id(sinks[k]);
  }
  out.Append(g2, skip, bound);
  return out.Build();
}

Circuit Repeat(const Circuit& g, const std::vector<std::string>& shared,
               std::int64_t k) {
  if (k < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "repeat needs K >= 1, got " + std::to_string(k));
  }
  const std::vector<bool> anc = Ancestors(g, Resolve(g, shared));
  std::unordered_map<Index, std::string> bound;
  for (Index i = 0; i < g.size(); ++i) {
    if (anc[i]) bound[i] = g.id(i);
  }
  Assembler out(g);
  for (std::int64_t copy = 2; copy <= k; ++copy) out.Append(g, anc, bound);
  return out.Build();
}

namespace {

bool Commutative(VertexKind kind) {
  return kind == VertexKind::kAdd || kind == VertexKind::kMul ||
         kind == VertexKind::kOutput;
}

// Structural matching of ancestor closures, g2 vertex -> g1 vertex.
class Matcher {
 public:
  Matcher(const Circuit& g1, const Circuit& g2) : g1_(g1), g2_(g2) {}

  bool Match(Index b, Index a) {
    if (auto it = to1_.find(b); it != to1_.end()) {
      if (it->second == a) return true;
      return Fail(a, b);
    }
    if (to2_.contains(a)) return Fail(a, b);
    auto pa = g1_.parents(a);
    auto pb = g2_.parents(b);
    if (g1_.kind(a) != g2_.kind(b) || pa.size() != pb.size()) return Fail(a, b);
    to1_[b] = a;
    to2_[a] = b;
    auto saved1 = to1_;
    auto saved2 = to2_;
    bool ok = true;
    for (std::size_t k = 0; k < pa.size() && ok; ++k) ok = Match(pb[k], pa[k]);
    if (!ok && pa.size() == 2 && Commutative(g1_.kind(a))) {
      to1_ = std::move(saved1);
      to2_ = std::move(saved2);
      ok = Match(pb[0], pa[1]) && Match(pb[1], pa[0]);
    }
    return ok;
  }

  const std::unordered_map<Index, Index>& mapping() const { return to1_; }
  const std::string& failure() const { return failure_; }

 private:
  bool Fail(Index a, Index b) {
    if (failure_.empty()) {
      failure_ = "'" + g1_.id(a) + "' (" + std::string(KindName(g1_.kind(a))) +
                 ") vs '" + g2_.id(b) + "' (" +
                 std::string(KindName(g2_.kind(b))) + ")";
    }
    return false;
  }

  const Circuit& g1_;
  const Circuit& g2_;
  std::unordered_map<Index, Index> to1_;
  std::unordered_map<Index, Index> to2_;
  std::string failure_;
};

}  // namespace

Circuit Glue(const Circuit& g1, const std::vector<std::string>& s1,
             const Circuit& g2, const std::vector<std::string>& s2) {
  if (s1.size() != s2.size()) {
    throw Error(ErrorCode::kNotIsomorphic,
                "glue sets differ in size: " + std::to_string(s1.size()) +
                    " vs " + std::to_string(s2.size()));
  }
  const std::vector<Index> r1 = Resolve(g1, s1);
  const std::vector<Index> r2 = Resolve(g2, s2);
  Matcher matcher(g1, g2);
  for (std::size_t k = 0; k < r1.size(); ++k) {
    if (!matcher.Match(r2[k], r1[k])) {
      throw Error(ErrorCode::kNotIsomorphic,
                  "ancestor subgraphs differ at " + matcher.failure());
    }
  }
  std::vector<bool> skip(g2.size(), false);
  std::unordered_map<Index, std::string> bound;
  for (auto [b, a] : matcher.mapping()) {
    skip[b] = true;
    bound[b] = g1.id(a);
  }
  Assembler out(g1);
  out.Append(g2, skip, bound);
  return out.Build();
}

ReductionSchedule InitialSchedule(std::int64_t m) {
  const double mlog = static_cast<double>(m) * std::log2(static_cast<double>(m));
  ReductionSchedule s;
  s.t = static_cast<std::int64_t>(std::ceil(5.0 * mlog));
  s.k_r = 25 * static_cast<std::int64_t>(std::ceil(mlog * std::log2(mlog)));
  s.k = 6 * static_cast<std::int64_t>(std::ceil(std::log2(mlog)));
  return s;
}

namespace {

std::int64_t RelinCostFloor(std::int64_t t, std::int64_t w_prime) {
  return 4 * (t * CeilLog2(t) + w_prime * CeilLog2(w_prime));
}

}  // namespace

ReductionArtifact BuildReduction(const KnapsackInstance& instance) {
  ReductionArtifact art;
  art.knapsack = Normalize(instance);
  const KnapsackInstance& kn = art.knapsack.instance;
  const std::size_t n = kn.size();
  if (n == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "reduction needs at least one item no heavier than the "
                "capacity");
  }
  std::int64_t sum_w = 0;
  std::int64_t sum_v = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sum_w += kn.weights[i];
    sum_v += kn.values[i];
  }
  ReductionParams& p = art.params;
  p.capacity_sum = kn.capacity + sum_w;
  p.m = p.capacity_sum + sum_v;
  p.k_m = 1;

  // One copy of the knapsack branch compared against W'.
  Circuit branch;
  for (std::size_t i = 0; i < n; ++i) {
    GadgetCircuit item = BuildL(kn.weights[i], "w" + std::to_string(i + 1));
    art.marks.push_back(item.designated);
    branch = i == 0 ? item.circuit
                    : Combine(CombineOp::kBoxTimes, branch, item.circuit,
                              "prod" + std::to_string(i + 1));
  }
  branch = Combine(CombineOp::kBoxPlus, branch,
                   BuildLengthSource(p.capacity_sum, "cap").circuit, "fits");

  std::vector<Index> mark_index;
  for (const std::string& s : art.marks) mark_index.push_back(branch.IndexOf(s));
  std::vector<std::pair<Index, std::int64_t>> all_low;
  for (Index s : mark_index) all_low.push_back({s, 1});
  const std::int64_t low_cost = ProseMulCost(branch, all_low);
  for (std::size_t i = 0; i < n; ++i) {
    auto plan = all_low;
    plan[i].second = 0;
    p.r.push_back(ProseMulCost(branch, plan) - low_cost);
  }

  ReductionSchedule s = InitialSchedule(p.m);
  auto holds = [&] {
    if (s.k * s.t <= s.k_r) return false;
    if (s.k_r <= RelinCostFloor(s.t, p.capacity_sum)) return false;
    for (std::size_t i = 0; i < n; ++i) {
      if (s.k_r - s.k * p.r[i] - kn.values[i] < 0) return false;
    }
    return true;
  };
  while (!holds()) {
    if (++p.repair_rounds > 40) {
      throw Error(ErrorCode::kInternal, "reduction parameters did not converge");
    }
    s.t *= 2;
    s.k_r = RelinCostFloor(s.t, p.capacity_sum) + 1;
    s.k = s.k_r / s.t + 1;
  }
  p.t = s.t;
  p.k = s.k;
  p.k_r = s.k_r;
  for (std::size_t i = 0; i < n; ++i) {
    p.lambda.push_back(s.k_r - s.k * p.r[i] - kn.values[i]);
  }

  Circuit g = Concat(branch, BuildL(p.t, "T").circuit);
  g = Repeat(g, art.marks, p.k);
  // One glue for all bonus gadgets; their prefixes keep the ids apart.
  Circuit bonuses;
  std::vector<std::string> designated;
  for (std::size_t i = 0; i < n; ++i) {
    GadgetCircuit bonus = BuildLprime(p.lambda[i], CostParams{1, 0, CostMode::kProse},
                                      "bonus" + std::to_string(i + 1));
    bonuses = i == 0 ? bonus.circuit : Glue(bonuses, {}, bonus.circuit, {});
    designated.push_back(bonus.designated);
  }
  art.circuit = Glue(g, art.marks, bonuses, designated);

  // Coefficient identity: raising s_i from 1 to 2 saves k_r - v_i in
  // multiplication cost while every other mark stays at 1.
  all_low.clear();
  for (const std::string& id : art.marks) all_low.push_back({art.circuit.IndexOf(id), 1});
  const std::int64_t base = ProseMulCost(art.circuit, all_low);
  for (std::size_t i = 0; i < n; ++i) {
    auto plan = all_low;
    plan[i].second = 0;
    std::int64_t delta = ProseMulCost(art.circuit, plan) - base;
    if (delta != s.k * p.r[i] + p.lambda[i]) {
      throw Error(ErrorCode::kInternal,
                  "coefficient of mark " + art.marks[i] + " is " +
                      std::to_string(delta) + ", expected " +
                      std::to_string(s.k_r - kn.values[i]));
    }
  }
  return art;
}

std::int64_t ReductionVertexBound(const ReductionArtifact& artifact) {
  const ReductionParams& p = artifact.params;
  const KnapsackInstance& kn = artifact.knapsack.instance;
  const std::int64_t n = static_cast<std::int64_t>(kn.size());
  std::int64_t per_copy = CeilLog2(p.t) + CeilLog2(p.capacity_sum);
  for (std::int64_t w : kn.weights) per_copy += CeilLog2(w);
  std::int64_t bonus = 0;
  for (std::int64_t lambda : p.lambda) bonus += CeilLog2(lambda + 1);
  return 2 * p.k * per_copy + 2 * bonus + p.k * (n + 1) + 4 * n;
}

DecodedSelection DecodeMarks(const NormalizedKnapsack& knapsack,
                             std::size_t original_size,
                             const std::vector<std::int64_t>& mark_lengths) {
  const KnapsackInstance& kn = knapsack.instance;
  if (mark_lengths.size() != kn.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "expected " + std::to_string(kn.size()) + " mark lengths, got " +
                    std::to_string(mark_lengths.size()));
  }
  DecodedSelection out;
  out.selection.assign(original_size, 0);
  for (std::size_t i = 0; i < kn.size(); ++i) {
    const std::int64_t l = mark_lengths[i];
    if (l != 1 && l != 2) {
      throw Error(ErrorCode::kLengthOutOfRange,
                  "mark " + std::to_string(i + 1) + " has length " +
                      std::to_string(l) + "; expected 1 or 2");
    }
    if (l == 2) {
      out.selection[knapsack.kept[i]] = 1;
      out.value += kn.values[i];
    }
  }
  return out;
}

DecodedSelection DecodeReduction(const ReductionArtifact& artifact,
                                 std::size_t original_size,
                                 const LengthProfile& profile) {
  std::vector<std::int64_t> lengths;
  for (const std::string& id : artifact.marks) {
    lengths.push_back(profile.at(artifact.circuit, id));
  }
  return DecodeMarks(artifact.knapsack, original_size, lengths);
}

}  // namespace relin
