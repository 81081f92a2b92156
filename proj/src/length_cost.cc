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

#include "relin/length_cost.h"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "relin/error.h"

namespace relin {

std::string_view SemanticsName(Semantics semantics) {
  return semantics.mode() == Semantics::Mode::kStandard ? "standard"
                                                        : "reduced";
}

std::optional<Semantics> ParseSemantics(std::string_view name) {
  if (name == "standard") return Semantics::Standard();
  if (name == "reduced") return Semantics::Reduced();
  return std::nullopt;
}

std::string_view CostModeName(CostMode mode) {
  return mode == CostMode::kObjective ? "objective" : "prose";
}

std::optional<CostMode> ParseCostMode(std::string_view name) {
  if (name == "objective") return CostMode::kObjective;
  if (name == "prose") return CostMode::kProse;
  return std::nullopt;
}

void CheckCostParams(const CostParams& params) {
  if (params.k_m.numerator() < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "k_m must be nonnegative, got " + FormatRational(params.k_m));
  }
  if (params.k_r.numerator() < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "k_r must be nonnegative, got " + FormatRational(params.k_r));
  }
}

std::int64_t RelinPlan::Get(std::string_view id) const {
  auto it = entries_.find(std::string(id));
  return it == entries_.end() ? 0 : it->second;
}

void RelinPlan::Set(const std::string& id, std::int64_t amount) {
  if (amount == 0) {
    entries_.erase(id);
  } else {
    entries_[id] = amount;
  }
}

std::int64_t RelinPlan::Total() const {
  std::int64_t total = 0;
  for (const auto& [id, amount] : entries_) total += amount;
  return total;
}

std::vector<std::int64_t> RelinPlan::Dense(const Circuit& circuit) const {
  std::vector<std::int64_t> dense(circuit.size(), 0);
  for (const auto& [id, amount] : entries_) {
    auto index = circuit.Find(id);
    if (!index) {
      throw Error(ErrorCode::kUnknownVertex,
                  "plan references unknown vertex '" + id + "'");
    }
    if (amount < 0) {
      throw Error(ErrorCode::kInvalidPlan,
                  "negative relinearization at '" + id + "'");
    }
    VertexKind kind = circuit.kind(*index);
    if (kind == VertexKind::kInput || kind == VertexKind::kOutput) {
      throw Error(ErrorCode::kInvalidPlan,
                  "cannot relinearize " + std::string(KindName(kind)) +
                      " vertex '" + id + "'");
    }
    dense[*index] = amount;
  }
  return dense;
}

RelinPlan RelinPlan::FromDense(const Circuit& circuit,
                               std::span<const std::int64_t> amounts) {
  RelinPlan plan;
  for (Circuit::Index i = 0; i < circuit.size(); ++i) {
    if (amounts[i] != 0) plan.entries_[circuit.id(i)] = amounts[i];
  }
  return plan;
}

std::int64_t LengthProfile::Max() const {
  return l_new.empty() ? 0 : *std::max_element(l_new.begin(), l_new.end());
}

std::optional<Circuit::Index> PropagateDense(
    const Circuit& circuit, std::span<const std::int64_t> amounts,
    Semantics semantics, std::span<std::int64_t> lengths) {
  const std::int64_t floor = semantics.min_length();
  for (Circuit::Index i : circuit.topo_order()) {
    auto parents = circuit.parents(i);
    switch (circuit.kind(i)) {
      case VertexKind::kInput:
        lengths[i] = semantics.input_length();
        break;
      case VertexKind::kOutput:
        lengths[i] = lengths[parents[0]];
        if (parents.size() == 2) {
          lengths[i] = std::max(lengths[i], lengths[parents[1]]);
        }
        break;
      case VertexKind::kAdd: {
        std::int64_t top = std::max(lengths[parents[0]], lengths[parents[1]]);
        lengths[i] = std::max(floor, top - amounts[i]);
        break;
      }
      case VertexKind::kMul:
      case VertexKind::kSquare: {
        std::int64_t l1 = lengths[parents[0]];
        std::int64_t l2 = parents.size() == 2 ? lengths[parents[1]] : l1;
        std::int64_t reduced = semantics.Product(l1, l2) - amounts[i];
        if (reduced < floor) return i;
        lengths[i] = reduced;
        break;
      }
    }
  }
  return std::nullopt;
}

LengthProfile PropagateLengths(const Circuit& circuit, const RelinPlan& plan,
                               Semantics semantics) {
  std::vector<std::int64_t> amounts = plan.Dense(circuit);
  LengthProfile profile;
  profile.l_new.assign(circuit.size(), 0);
  if (auto bad = PropagateDense(circuit, amounts, semantics, profile.l_new)) {
    auto parents = circuit.parents(*bad);
    std::int64_t l1 = profile.l_new[parents[0]];
    std::int64_t l2 = parents.size() == 2 ? profile.l_new[parents[1]] : l1;
    std::int64_t raw = semantics.Product(l1, l2);
    throw Error(ErrorCode::kInfeasibleRelin,
                "relinearization " + std::to_string(amounts[*bad]) + " at '" +
                    circuit.id(*bad) + "' exceeds headroom " +
                    std::to_string(raw - semantics.min_length()) +
                    " (raw length " + std::to_string(raw) + ")");
  }
  return profile;
}

ScaledCost::ScaledCost(const CostParams& params) : mode_(params.mode) {
  CheckCostParams(params);
  denominator_ =
      std::lcm(params.k_m.denominator(), params.k_r.denominator());
  k_m_ = params.k_m.numerator() * (denominator_ / params.k_m.denominator());
  k_r_ = params.k_r.numerator() * (denominator_ / params.k_r.denominator());
}

ScaledBreakdown ScaledTotal(const Circuit& circuit,
                            std::span<const std::int64_t> amounts,
                            std::span<const std::int64_t> lengths,
                            const ScaledCost& cost) {
  ScaledBreakdown out;
  std::int64_t relin_units = 0;
  std::int64_t mul_units = 0;
  for (Circuit::Index i = 0; i < circuit.size(); ++i) {
    VertexKind kind = circuit.kind(i);
    if (kind == VertexKind::kAdd) {
      relin_units += amounts[i];
    } else if (IsProduct(kind)) {
      relin_units += amounts[i];
      if (cost.mode() == CostMode::kObjective) {
        mul_units += lengths[i] + amounts[i];
      } else {
        auto parents = circuit.parents(i);
        mul_units += parents.size() == 2
                         ? lengths[parents[0]] + lengths[parents[1]]
                         : 2 * lengths[parents[0]];
      }
    }
  }
  out.mul = mul_units * cost.k_m();
  out.relin = relin_units * cost.k_r();
  return out;
}

CostBreakdown TotalCost(const Circuit& circuit, const RelinPlan& plan,
                        const CostParams& params, Semantics semantics) {
  CheckCostParams(params);
  LengthProfile profile = PropagateLengths(circuit, plan, semantics);
  std::vector<std::int64_t> amounts = plan.Dense(circuit);
  Rational mul_units = 0;
  for (Circuit::Index i = 0; i < circuit.size(); ++i) {
    if (!IsProduct(circuit.kind(i))) continue;
    if (params.mode == CostMode::kObjective) {
      mul_units += profile.l_new[i] + amounts[i];
    } else {
      auto parents = circuit.parents(i);
      std::int64_t l1 = profile.l_new[parents[0]];
      std::int64_t l2 = parents.size() == 2 ? profile.l_new[parents[1]] : l1;
      mul_units += l1 + l2;
    }
  }
  CostBreakdown out;
  out.mul_cost = params.k_m * mul_units;
  out.relin_cost = params.k_r * Rational(plan.Total());
  out.total = out.mul_cost + out.relin_cost;
  return out;
}

namespace {

bool LpNameChar(char c) {
  if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
      (c >= '0' && c <= '9')) {
    return true;
  }
  switch (c) {
    case '_':
    case '.':
    case '#':
    case '@':
    case '!':
    case '$':
    case '%':
    case '&':
    case '(':
    case ')':
    case '{':
    case '}':
    case '|':
    case '~':
    case '\'':
      return true;
    default:
      return false;
  }
}

// Per-vertex suffixes that are valid LP names and pairwise distinct.
std::vector<std::string> LpSuffixes(const Circuit& circuit) {
  std::vector<std::string> suffix(circuit.size());
  std::unordered_set<std::string> used;
  for (Circuit::Index i : circuit.topo_order()) {
    std::string s;
    for (char c : circuit.id(i)) s += LpNameChar(c) ? c : '_';
    std::string candidate = s;
    for (int k = 2; !used.insert(candidate).second; ++k) {
      candidate = s + "_" + std::to_string(k);
    }
    suffix[i] = candidate;
  }
  return suffix;
}

class LinearExpr {
 public:
  void Add(const std::string& var, std::int64_t coef) {
    if (coef == 0) return;
    auto [it, inserted] = coefs_.try_emplace(var, coef);
    if (inserted) {
      order_.push_back(var);
    } else {
      it->second += coef;
    }
  }

  // "3 l_a - x_b + ..."; wraps every eight terms.
  std::string Format() const {
    std::ostringstream out;
    int written = 0;
    for (const std::string& var : order_) {
      std::int64_t c = coefs_.at(var);
      if (c == 0) continue;
      if (written > 0 && written % 8 == 0) out << "\n   ";
      if (written == 0) {
        if (c < 0) out << "- ";
      } else {
        out << (c < 0 ? " - " : " + ");
      }
      std::int64_t mag = c < 0 ? -c : c;
      if (mag != 1) out << mag << ' ';
      out << var;
      ++written;
    }
    return out.str();
  }

  bool empty() const {
    return std::none_of(coefs_.begin(), coefs_.end(),
                        [](const auto& kv) { return kv.second != 0; });
  }

 private:
  std::map<std::string, std::int64_t> coefs_;
  std::vector<std::string> order_;
};

}  // namespace

std::string ExportIlp(const Circuit& circuit, const CostParams& params,
                      Semantics semantics) {
  ScaledCost scaled(params);
  const std::vector<std::string> suffix = LpSuffixes(circuit);
  auto l = [&suffix](Circuit::Index i) { return "l_" + suffix[i]; };
  auto x = [&suffix](Circuit::Index i) { return "x_" + suffix[i]; };
  auto has_x = [&circuit](Circuit::Index i) {
    VertexKind k = circuit.kind(i);
    return k == VertexKind::kAdd || IsProduct(k);
  };

  std::ostringstream out;
  out << "\\ relinearize problem: " << circuit.size() << " vertices, "
      << SemanticsName(semantics) << " semantics, "
      << CostModeName(params.mode) << " cost\n";
  out << "\\ k_m = " << FormatRational(params.k_m)
      << ", k_r = " << FormatRational(params.k_r) << "\n";
  if (scaled.Unscale(1) != Rational(1)) {
    out << "\\ objective scaled by " << FormatRational(1 / scaled.Unscale(1))
        << "\n";
  }

  LinearExpr objective;
  for (Circuit::Index i : circuit.topo_order()) {
    VertexKind kind = circuit.kind(i);
    if (has_x(i)) objective.Add(x(i), scaled.k_r());
    if (!IsProduct(kind)) continue;
    if (params.mode == CostMode::kObjective) {
      objective.Add(l(i), scaled.k_m());
      objective.Add(x(i), scaled.k_m());
    } else {
      for (Circuit::Index p : circuit.parents(i)) {
        objective.Add(l(p), circuit.parents(i).size() == 1 ? 2 * scaled.k_m()
                                                           : scaled.k_m());
      }
    }
  }

  out << "Minimize\n cost: ";
  if (objective.empty() && !circuit.empty()) {
    out << "0 " << l(circuit.topo_order().front());
  } else {
    out << objective.Format();
  }
  out << "\nSubject To\n";
  const std::int64_t product_rhs =
      semantics.mode() == Semantics::Mode::kStandard ? -1 : 0;
  for (Circuit::Index i : circuit.topo_order()) {
    auto parents = circuit.parents(i);
    switch (circuit.kind(i)) {
      case VertexKind::kInput:
        break;
      case VertexKind::kMul:
      case VertexKind::kSquare: {
        LinearExpr row;
        row.Add(l(i), 1);
        row.Add(x(i), 1);
        for (Circuit::Index p : parents) {
          row.Add(l(p), parents.size() == 1 ? -2 : -1);
        }
        out << " prod_" << suffix[i] << ": " << row.Format() << " = "
            << product_rhs << "\n";
        break;
      }
      case VertexKind::kAdd:
        for (std::size_t k = 0; k < 2; ++k) {
          LinearExpr row;
          row.Add(l(i), 1);
          row.Add(x(i), 1);
          row.Add(l(parents[k]), -1);
          out << " add_" << suffix[i] << "_" << k + 1 << ": " << row.Format()
              << " >= 0\n";
        }
        break;
      case VertexKind::kOutput:
        for (std::size_t k = 0; k < parents.size(); ++k) {
          LinearExpr row;
          row.Add(l(i), 1);
          row.Add(l(parents[k]), -1);
          out << " out_" << suffix[i] << "_" << k + 1 << ": " << row.Format()
              << " >= 0\n";
        }
        break;
    }
  }

  out << "Bounds\n";
  for (Circuit::Index i : circuit.topo_order()) {
    if (circuit.kind(i) == VertexKind::kInput) {
      out << " " << l(i) << " = " << semantics.input_length() << "\n";
    } else {
      out << " " << l(i) << " >= " << semantics.min_length() << "\n";
    }
    if (has_x(i)) out << " " << x(i) << " >= 0\n";
  }
  out << "Generals\n";
  int on_line = 0;
  for (Circuit::Index i : circuit.topo_order()) {
    std::vector<std::string> vars = {l(i)};
    if (has_x(i)) vars.push_back(x(i));
    for (const std::string& v : vars) {
      out << " " << v;
      if (++on_line == 10) {
        out << "\n";
        on_line = 0;
      }
    }
  }
  if (on_line != 0) out << "\n";
  out << "End\n";
  return out.str();
}

}  // namespace relin
