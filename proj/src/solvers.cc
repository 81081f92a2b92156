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

#include "relin/solvers.h"

#include <algorithm>
#include <set>
#include <thread>
#include <utility>

#include "relin/error.h"

namespace relin {

using Index = Circuit::Index;

RelinPlan BaselinePlan(const Circuit& circuit, Semantics semantics) {
  std::vector<std::int64_t> lengths(circuit.size(), 0);
  std::vector<std::int64_t> amounts(circuit.size(), 0);
  for (Index i : circuit.topo_order()) {
    auto parents = circuit.parents(i);
    switch (circuit.kind(i)) {
      case VertexKind::kInput:
        lengths[i] = semantics.input_length();
        break;
      case VertexKind::kOutput:
      case VertexKind::kAdd:
        lengths[i] = lengths[parents[0]];
        if (parents.size() == 2) {
          lengths[i] = std::max(lengths[i], lengths[parents[1]]);
        }
        break;
      case VertexKind::kMul:
      case VertexKind::kSquare: {
        std::int64_t l1 = lengths[parents[0]];
        std::int64_t l2 = parents.size() == 2 ? lengths[parents[1]] : l1;
        amounts[i] = semantics.Product(l1, l2) - semantics.min_length();
        lengths[i] = semantics.min_length();
        break;
      }
    }
  }
  return RelinPlan::FromDense(circuit, amounts);
}

SolveResult Evaluate(const Circuit& circuit, const RelinPlan& plan,
                     const CostParams& params, Semantics semantics,
                     std::string method) {
  SolveResult result;
  result.profile = PropagateLengths(circuit, plan, semantics);
  result.cost = TotalCost(circuit, plan, params, semantics);
  result.plan = plan;
  result.method = std::move(method);
  return result;
}

namespace {

// Best plan seen by one enumeration worker.
struct Incumbent {
  bool found = false;
  std::int64_t cost = 0;
  std::int64_t relin = 0;
  std::vector<std::int64_t> values;  // amounts of the enumerated variables

  // Lower cost, then lower total relinearization, then lexicographically
  // smaller amounts (variables are in topological order).
  bool Improves(std::int64_t c, std::int64_t r,
                const std::vector<std::int64_t>& v) const {
    if (!found) return true;
    if (c != cost) return c < cost;
    if (r != relin) return r < relin;
    return v < values;
  }
};

std::uint64_t SaturatingProduct(const std::vector<std::int64_t>& ranges) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 1;
  for (std::int64_t r : ranges) {
    std::uint64_t radix = static_cast<std::uint64_t>(r) + 1;
    if (total > kMax / radix) return kMax;
    total *= radix;
  }
  return total;
}

// Exhaustive search over amounts[variables[k]] in [0, ranges[k]], all other
// amounts zero. Infeasible plans are skipped.
Incumbent Enumerate(const Circuit& circuit, Semantics semantics,
                    const ScaledCost& cost, const std::vector<Index>& variables,
                    const std::vector<std::int64_t>& ranges, int threads) {
  const std::uint64_t total = SaturatingProduct(ranges);
  const int workers = std::max<std::uint64_t>(
      1, std::min<std::uint64_t>(std::max(threads, 1), total));

  auto run = [&](std::uint64_t begin, std::uint64_t end) {
    Incumbent best;
    std::vector<std::int64_t> amounts(circuit.size(), 0);
    std::vector<std::int64_t> lengths(circuit.size(), 0);
    std::vector<std::int64_t> digits(variables.size(), 0);
    // Mixed radix, first variable most significant.
    std::uint64_t rest = begin;
    for (std::size_t k = variables.size(); k-- > 0;) {
      std::uint64_t radix = static_cast<std::uint64_t>(ranges[k]) + 1;
      digits[k] = static_cast<std::int64_t>(rest % radix);
      rest /= radix;
    }
    for (std::uint64_t n = begin; n < end; ++n) {
      std::int64_t relin = 0;
      for (std::size_t k = 0; k < variables.size(); ++k) {
        amounts[variables[k]] = digits[k];
        relin += digits[k];
      }
      if (!PropagateDense(circuit, amounts, semantics, lengths)) {
        std::int64_t c = ScaledTotal(circuit, amounts, lengths, cost).total();
        if (best.Improves(c, relin, digits)) {
          best.found = true;
          best.cost = c;
          best.relin = relin;
          best.values = digits;
        }
      }
      for (std::size_t k = variables.size(); k-- > 0;) {
        if (++digits[k] <= ranges[k]) break;
        digits[k] = 0;
      }
    }
    return best;
  };

  if (workers == 1) return run(0, total);

  std::vector<Incumbent> partial(workers);
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (total + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    std::uint64_t begin = std::min<std::uint64_t>(total, w * chunk);
    std::uint64_t end = std::min<std::uint64_t>(total, begin + chunk);
    pool.emplace_back([&, w, begin, end] { partial[w] = run(begin, end); });
  }
  for (auto& t : pool) t.join();
  Incumbent best;
  for (const Incumbent& p : partial) {
    if (p.found && best.Improves(p.cost, p.relin, p.values)) best = p;
  }
  return best;
}

RelinPlan PlanFromIncumbent(const Circuit& circuit,
                            const std::vector<Index>& variables,
                            const Incumbent& best) {
  std::vector<std::int64_t> amounts(circuit.size(), 0);
  for (std::size_t k = 0; k < variables.size(); ++k) {
    amounts[variables[k]] = best.values[k];
  }
  return RelinPlan::FromDense(circuit, amounts);
}

std::vector<std::int64_t> ZeroPlanLengths(const Circuit& circuit,
                                          Semantics semantics) {
  std::vector<std::int64_t> zeros(circuit.size(), 0);
  std::vector<std::int64_t> lengths(circuit.size(), 0);
  PropagateDense(circuit, zeros, semantics, lengths);
  return lengths;
}

}  // namespace

SolveResult BruteForceSolve(const Circuit& circuit, const CostParams& params,
                            Semantics semantics,
                            const BruteForceOptions& options) {
  ScaledCost cost(params);
  const std::vector<std::int64_t> upper = ZeroPlanLengths(circuit, semantics);
  std::vector<Index> variables;
  std::vector<std::int64_t> ranges;
  for (Index i : circuit.topo_order()) {
    VertexKind kind = circuit.kind(i);
    if (kind != VertexKind::kAdd && !IsProduct(kind)) continue;
    std::int64_t headroom = upper[i] - semantics.min_length();
    if (headroom > 0) {
      variables.push_back(i);
      ranges.push_back(headroom);
    }
  }
  const std::uint64_t plans = SaturatingProduct(ranges);
  if (static_cast<int>(variables.size()) > options.max_variables ||
      plans > options.max_plans) {
    throw Error(ErrorCode::kSearchSpaceTooLarge,
                "brute force over " + std::to_string(variables.size()) +
                    " relinearizable vertices needs ~" +
                    std::to_string(plans) + " plans (limits: " +
                    std::to_string(options.max_variables) + " vertices, " +
                    std::to_string(options.max_plans) + " plans)");
  }
  Incumbent best =
      Enumerate(circuit, semantics, cost, variables, ranges, options.threads);
  if (!best.found) {
    throw Error(ErrorCode::kInternal, "brute force found no feasible plan");
  }
  return Evaluate(circuit, PlanFromIncumbent(circuit, variables, best), params,
                  semantics, "brute");
}

SolveResult RestrictedSolve(const Circuit& circuit, const CostParams& params,
                            Semantics semantics,
                            const std::vector<std::string>& marks,
                            std::int64_t per_mark_max,
                            const RestrictedOptions& options) {
  if (per_mark_max < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "per_mark_max must be nonnegative");
  }
  ScaledCost cost(params);
  std::vector<Index> variables;
  std::set<Index> seen;
  for (const std::string& id : marks) {
    Index i = circuit.IndexOf(id);
    if (!IsProduct(circuit.kind(i))) {
      throw Error(ErrorCode::kMarkNotRelinearizable,
                  "mark '" + id + "' is a " +
                      std::string(KindName(circuit.kind(i))) +
                      " vertex, not a multiplication or squaring");
    }
    if (seen.insert(i).second) variables.push_back(i);
  }
  std::sort(variables.begin(), variables.end(), [&circuit](Index a, Index b) {
    return circuit.topo_rank(a) < circuit.topo_rank(b);
  });
  std::vector<std::int64_t> ranges(variables.size(), per_mark_max);
  const std::uint64_t plans = SaturatingProduct(ranges);
  if (plans > options.max_plans) {
    throw Error(ErrorCode::kSearchSpaceTooLarge,
                "restricted search needs " + std::to_string(plans) +
                    " plans (limit " + std::to_string(options.max_plans) +
                    ")");
  }
  Incumbent best = Enumerate(circuit, semantics, cost, variables, ranges, 1);
  if (!best.found) {
    throw Error(ErrorCode::kInternal, "restricted search found no feasible plan");
  }
  return Evaluate(circuit, PlanFromIncumbent(circuit, variables, best), params,
                  semantics, "restricted");
}

std::optional<Rational> DpTable::At(Index i, std::int64_t l) const {
  if (l < min_length || l > max_length) return std::nullopt;
  std::int64_t c = cost[i][l - min_length];
  if (c == kInfinity) return std::nullopt;
  return scale.Unscale(c);
}

namespace {

constexpr std::int64_t kInf = DpTable::kInfinity;

struct Entry {
  std::int64_t cost = kInf;
  std::int64_t relin = 0;
  std::int64_t l1 = 0;
  std::int64_t l2 = 0;

  bool Better(std::int64_t c, std::int64_t r) const {
    return c < cost || (c == cost && r < relin);
  }
};

}  // namespace

SolveResult DpSolveSingleOutput(const Circuit& circuit,
                                const CostParams& params, Semantics semantics,
                                DpTable* table_out) {
  for (Index i : circuit.topo_order()) {
    if (circuit.kind(i) != VertexKind::kInput && circuit.outdegree(i) > 1) {
      throw Error(ErrorCode::kNotSingleOutput,
                  "vertex '" + circuit.id(i) + "' has outdegree " +
                      std::to_string(circuit.outdegree(i)));
    }
  }
  DpTable table;
  table.scale = ScaledCost(params);
  const std::int64_t kr = table.scale.k_r();
  const std::int64_t km = table.scale.k_m();
  const bool objective = params.mode == CostMode::kObjective;
  const std::vector<std::int64_t> upper = ZeroPlanLengths(circuit, semantics);
  const std::int64_t lo = semantics.min_length();
  std::int64_t hi = std::max<std::int64_t>(circuit.size(), lo);
  for (std::int64_t u : upper) hi = std::max(hi, u);
  table.min_length = lo;
  table.max_length = hi;
  const std::size_t width = hi - lo + 1;
  if (width > 20000) {
    throw Error(ErrorCode::kSearchSpaceTooLarge,
                "DP length range [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "] is too wide");
  }

  std::vector<std::vector<Entry>> m(circuit.size());
  // Candidates indexed by the pre-relinearization length, which for a
  // product can reach Product(hi, hi).
  const std::int64_t raw_hi = std::max(semantics.Product(hi, hi), hi);
  std::vector<Entry> base(raw_hi - lo + 1);

  auto add_sum = [](std::int64_t a, std::int64_t b) {
    return (a == kInf || b == kInf) ? kInf : a + b;
  };

  for (Index i : circuit.topo_order()) {
    std::vector<Entry>& row = m[i];
    row.assign(width, Entry{});
    auto parents = circuit.parents(i);
    VertexKind kind = circuit.kind(i);
    if (kind == VertexKind::kInput) {
      Entry& e = row[semantics.input_length() - lo];
      e.cost = 0;
      continue;
    }
    std::fill(base.begin(), base.end(), Entry{});
    const std::vector<Entry>& a = m[parents[0]];
    const std::vector<Entry>& b = m[parents.size() == 2 ? parents[1]
                                                        : parents[0]];
    // Pre-relinearization candidates keyed by raw length.
    for (std::size_t u = 0; u < width; ++u) {
      if (a[u].cost == kInf) continue;
      const std::int64_t l1 = lo + static_cast<std::int64_t>(u);
      const bool unary = kind == VertexKind::kSquare ||
                         (kind == VertexKind::kOutput && parents.size() == 1);
      for (std::size_t v = 0; v < width; ++v) {
        if (unary && v != u) continue;
        if (b[v].cost == kInf) continue;
        const std::int64_t l2 = lo + static_cast<std::int64_t>(v);
        std::int64_t raw;
        std::int64_t c;
        std::int64_t r;
        if (unary) {
          c = a[u].cost;
          r = a[u].relin;
        } else {
          c = add_sum(a[u].cost, b[v].cost);
          r = a[u].relin + b[v].relin;
        }
        if (IsProduct(kind)) {
          raw = semantics.Product(l1, l2);
          c += km * (objective ? raw : l1 + l2);
        } else {
          raw = std::max(l1, l2);
        }
        Entry& slot = base[raw - lo];
        if (slot.Better(c, r)) slot = Entry{c, r, l1, l2};
      }
    }
    if (kind == VertexKind::kOutput) {
      for (std::size_t t = 0; t < width; ++t) row[t] = base[t];
      continue;
    }
    // M(i, l) = min over raw >= l of base[raw] + k_r (raw - l), scanned from
    // the top so each l sees the suffix minimum.
    Entry best;
    std::int64_t best_raw = 0;
    for (std::int64_t raw = raw_hi; raw >= lo; --raw) {
      const Entry& cand = base[raw - lo];
      if (cand.cost != kInf) {
        // Compare at a common reference length (lo).
        std::int64_t c = cand.cost + kr * (raw - lo);
        std::int64_t r = cand.relin + (raw - lo);
        std::int64_t bc =
            best.cost == kInf ? kInf : best.cost + kr * (best_raw - lo);
        std::int64_t br = best.relin + (best_raw - lo);
        if (best.cost == kInf || c < bc || (c == bc && r < br)) {
          best = cand;
          best_raw = raw;
        }
      }
      if (raw <= hi && best.cost != kInf) {
        Entry& e = row[raw - lo];
        e.cost = best.cost + kr * (best_raw - raw);
        e.relin = best.relin + (best_raw - raw);
        e.l1 = best.l1;
        e.l2 = best.l2;
      }
    }
  }

  // Sum over sinks of the best final length; reconstruct targets top-down.
  std::vector<std::int64_t> target(circuit.size(), 0);
  std::int64_t total = 0;
  for (Index s : circuit.Sinks()) {
    const std::vector<Entry>& row = m[s];
    std::size_t pick = width;
    for (std::size_t t = 0; t < width; ++t) {
      if (row[t].cost == kInf) continue;
      if (pick == width || row[pick].Better(row[t].cost, row[t].relin)) {
        pick = t;
      }
    }
    if (pick == width) {
      throw Error(ErrorCode::kInternal,
                  "empty feasible length range at '" + circuit.id(s) + "'");
    }
    target[s] = lo + static_cast<std::int64_t>(pick);
    total += row[pick].cost;
  }
  std::vector<std::int64_t> amounts(circuit.size(), 0);
  auto order = circuit.topo_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Index i = *it;
    VertexKind kind = circuit.kind(i);
    if (kind == VertexKind::kInput) continue;
    const Entry& e = m[i][target[i] - lo];
    if (e.cost == kInf) {
      throw Error(ErrorCode::kInternal,
                  "unreachable DP entry at '" + circuit.id(i) + "'");
    }
    auto parents = circuit.parents(i);
    target[parents[0]] = e.l1;
    if (parents.size() == 2) target[parents[1]] = e.l2;
    if (IsProduct(kind)) {
      amounts[i] = semantics.Product(e.l1, e.l2) - target[i];
    } else if (kind == VertexKind::kAdd) {
      amounts[i] = std::max(e.l1, e.l2) - target[i];
    }
  }

  SolveResult result = Evaluate(circuit, RelinPlan::FromDense(circuit, amounts),
                                params, semantics, "dp");
  if (result.cost.total != table.scale.Unscale(total)) {
    throw Error(ErrorCode::kInternal,
                "DP value " + FormatRational(table.scale.Unscale(total)) +
                    " disagrees with its reconstructed plan (" +
                    FormatRational(result.cost.total) + ")");
  }
  if (table_out != nullptr) {
    table.cost.resize(circuit.size());
    table.relin.resize(circuit.size());
    table.back.resize(circuit.size());
    for (Index i = 0; i < circuit.size(); ++i) {
      for (const Entry& e : m[i]) {
        table.cost[i].push_back(e.cost);
        table.relin[i].push_back(e.relin);
        table.back[i].push_back({e.l1, e.l2});
      }
    }
    *table_out = std::move(table);
  }
  return result;
}

}  // namespace relin
