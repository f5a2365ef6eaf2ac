// Copyright 2026 The qcmap Authors
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

#include "qcmap/decomposer.hpp"

#include "qcmap/errors.hpp"
#include "qcmap/simulator.hpp"
#include "qcmap/unitary.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace qcmap {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int kMaxDepth = 4;
constexpr double kRuleTolerance = 1e-12;

GateTemplate tmpl(GateKind kind, std::vector<int> slots, std::vector<ParamExpr> params = {}) {
  return {kind, std::move(slots), std::move(params)};
}

ParamExpr c(double v) { return ParamExpr::value(v); }
ParamExpr p(std::size_t k) { return ParamExpr::source(k); }

GateTemplate u3_on(int slot, ParamExpr theta, ParamExpr phi, ParamExpr lambda) {
  return tmpl(GateKind::U3, {slot}, {theta, phi, lambda});
}

std::vector<RewriteRule> build_table() {
  using K = GateKind;
  const auto exact = PhaseNote::Exact;
  const auto phase = PhaseNote::UpToGlobalPhase;
  std::vector<RewriteRule> t;

  // Euler (U3) family.
  t.push_back({K::H, {u3_on(0, c(pi / 2), c(0), c(pi))}, phase});
  t.push_back({K::X, {u3_on(0, c(pi), c(0), c(pi))}, phase});
  t.push_back({K::Y, {u3_on(0, c(pi), c(pi / 2), c(pi / 2))}, phase});
  t.push_back({K::Z, {u3_on(0, c(0), c(0), c(pi))}, phase});
  t.push_back({K::S, {u3_on(0, c(0), c(0), c(pi / 2))}, phase});
  t.push_back({K::SDG, {u3_on(0, c(0), c(0), c(-pi / 2))}, phase});
  t.push_back({K::T, {u3_on(0, c(0), c(0), c(pi / 4))}, phase});
  t.push_back({K::TDG, {u3_on(0, c(0), c(0), c(-pi / 4))}, phase});
  t.push_back({K::RX, {u3_on(0, p(0), c(-pi / 2), c(pi / 2))}, exact});
  t.push_back({K::RY, {u3_on(0, p(0), c(0), c(0))}, exact});
  t.push_back({K::RZ, {u3_on(0, c(0), c(0), p(0))}, exact});

  // X/Y rotation family.
  t.push_back({K::H, {tmpl(K::RY, {0}, {c(pi / 2)}), tmpl(K::RX, {0}, {c(pi)})}, phase});
  t.push_back({K::X, {tmpl(K::RX, {0}, {c(pi)})}, phase});
  t.push_back({K::Y, {tmpl(K::RY, {0}, {c(pi)})}, phase});
  t.push_back({K::Z, {tmpl(K::RX, {0}, {c(pi)}), tmpl(K::RY, {0}, {c(pi)})}, phase});
  t.push_back({K::S, {tmpl(K::RZ, {0}, {c(pi / 2)})}, phase});
  t.push_back({K::SDG, {tmpl(K::RZ, {0}, {c(-pi / 2)})}, phase});
  t.push_back({K::T, {tmpl(K::RZ, {0}, {c(pi / 4)})}, phase});
  t.push_back({K::TDG, {tmpl(K::RZ, {0}, {c(-pi / 4)})}, phase});
  t.push_back({K::RZ,
               {tmpl(K::RX, {0}, {c(-pi / 2)}), tmpl(K::RY, {0}, {p(0)}), tmpl(K::RX, {0}, {c(pi / 2)})},
               exact});
  t.push_back({K::U3,
               {tmpl(K::RZ, {0}, {p(2)}), tmpl(K::RY, {0}, {p(0)}), tmpl(K::RZ, {0}, {p(1)})},
               exact});
  t.push_back({K::RX, {tmpl(K::RZ, {0}, {c(pi / 2)}), tmpl(K::RY, {0}, {p(0)}), tmpl(K::RZ, {0}, {c(-pi / 2)})},
               exact});
  t.push_back({K::RY, {tmpl(K::RZ, {0}, {c(-pi / 2)}), tmpl(K::RX, {0}, {p(0)}), tmpl(K::RZ, {0}, {c(pi / 2)})},
               exact});

  // Two-qubit rules.
  t.push_back({K::CNOT, {tmpl(K::RY, {1}, {c(-pi / 2)}), tmpl(K::CZ, {0, 1}), tmpl(K::RY, {1}, {c(pi / 2)})},
               exact});
  t.push_back({K::CNOT, {tmpl(K::H, {1}), tmpl(K::CZ, {0, 1}), tmpl(K::H, {1})}, exact});
  t.push_back({K::CZ, {tmpl(K::H, {1}), tmpl(K::CNOT, {0, 1}), tmpl(K::H, {1})}, exact});
  t.push_back({K::SWAP, {tmpl(K::CNOT, {0, 1}), tmpl(K::CNOT, {1, 0}), tmpl(K::CNOT, {0, 1})}, exact});
  t.push_back({K::CNOT, {tmpl(K::H, {0}), tmpl(K::H, {1}), tmpl(K::CNOT, {1, 0}), tmpl(K::H, {0}), tmpl(K::H, {1})},
               exact});
  return t;
}

// Sample source parameters used by the oracle check.
const std::vector<std::vector<double>>& sample_params(GateKind kind) {
  static const std::vector<std::vector<double>> none{{}};
  static const std::vector<std::vector<double>> one{{0.0}, {0.3}, {-1.1}, {2.7}, {pi}, {-pi / 2}};
  static const std::vector<std::vector<double>> three{
      {0.0, 0.0, 0.0}, {0.3, -1.1, 2.7}, {pi / 2, 0.0, pi}, {-2.2, 0.9, 0.4}, {pi, pi / 2, -pi / 4}};
  switch (param_count(kind)) {
  case 1:
    return one;
  case 3:
    return three;
  default:
    return none;
  }
}

std::vector<RuleCheck> run_checks(const std::vector<RewriteRule>& table) {
  std::vector<RuleCheck> out;
  for (const auto& rule : table) {
    const int n = arity(rule.source);
    std::vector<Qubit> ops(n);
    for (int i = 0; i < n; ++i) {
      ops[i] = i;
    }
    RuleCheck check{&rule, 0.0, 0.0};
    for (const auto& params : sample_params(rule.source)) {
      const Gate source(rule.source, ops, params);
      Circuit src(n);
      src.add(source);
      Circuit dst(n);
      for (auto& g : rule.instantiate(source)) {
        dst.add(std::move(g));
      }
      const auto a = circuit_unitary<double>(src);
      const auto b = circuit_unitary<double>(dst);
      check.max_error = std::max(check.max_error, static_cast<double>(phase_aligned_distance(a, b)));
      check.max_error_no_phase = std::max(check.max_error_no_phase, static_cast<double>((a - b).cwiseAbs().maxCoeff()));
    }
    out.push_back(check);
  }
  return out;
}

void fail_rule(const RewriteRule& rule, double err) {
  throw std::logic_error("rewrite rule '" + format_rule(rule) + "' fails the unitary check (error " +
                         std::to_string(err) + ")");
}

std::vector<Gate> expand(const Gate& gate, const Device& device, int depth);

std::vector<Gate> expand_sequence(const std::vector<Gate>& seq, const Device& device, int depth) {
  std::vector<Gate> out;
  for (const auto& g : seq) {
    auto part = expand(g, device, depth);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

bool in_range(const Gate& gate, const Device& device) {
  for (const Qubit q : gate.operands) {
    if (q >= device.qubit_count()) {
      return false;
    }
  }
  return true;
}

struct Choice {
  const RewriteRule* rule;
  std::vector<Gate> gates;
};

// A rule landing directly in the native set wins; otherwise the shortest
// recursive expansion, earliest rule on ties.
std::optional<Choice> choose_rule(const Gate& gate, const Device& device, int depth) {
  for (const auto& rule : rewrite_rules()) {
    if (rule.source != gate.kind) {
      continue;
    }
    auto seq = rule.instantiate(gate);
    if (std::all_of(seq.begin(), seq.end(), [&](const Gate& g) { return device.is_native(g); })) {
      return Choice{&rule, std::move(seq)};
    }
  }
  std::optional<Choice> best;
  if (depth >= kMaxDepth) {
    return best;
  }
  for (const auto& rule : rewrite_rules()) {
    if (rule.source != gate.kind) {
      continue;
    }
    try {
      auto seq = expand_sequence(rule.instantiate(gate), device, depth + 1);
      if (!best || seq.size() < best->gates.size()) {
        best = Choice{&rule, std::move(seq)};
      }
    } catch (const NoRuleAvailable&) {
    }
  }
  return best;
}

std::vector<Gate> expand(const Gate& gate, const Device& device, int depth) {
  if (!in_range(gate, device)) {
    throw NoRuleAvailable(std::string(mnemonic(gate.kind)) + " on out-of-range qubit", device.name());
  }
  if (gate.kind == GateKind::MEASURE || device.is_native(gate)) {
    return {gate};
  }
  if (gate.kind == GateKind::SWAP && device.adjacent(gate.operands[0], gate.operands[1])) {
    return decompose_swap(gate.operands[0], gate.operands[1], device);
  }
  auto choice = choose_rule(gate, device, depth);
  if (!choice) {
    throw NoRuleAvailable(std::string(mnemonic(gate.kind)), device.name());
  }
  return std::move(choice->gates);
}

} // namespace

double ParamExpr::eval(std::span<const double> source) const {
  double v = constant;
  for (std::size_t k = 0; k < coeff.size(); ++k) {
    if (coeff[k] != 0.0) {
      v += coeff[k] * source[k];
    }
  }
  return v;
}

std::string ParamExpr::to_string() const {
  static constexpr const char* names[] = {"theta", "phi", "lambda"};
  std::string out;
  for (std::size_t k = 0; k < coeff.size(); ++k) {
    if (coeff[k] == 0.0) {
      continue;
    }
    if (!out.empty()) {
      out += coeff[k] < 0 ? " - " : " + ";
    } else if (coeff[k] < 0) {
      out += "-";
    }
    if (std::abs(coeff[k]) != 1.0) {
      out += format_angle(std::abs(coeff[k])) + "*";
    }
    out += names[k];
  }
  if (constant != 0.0 || out.empty()) {
    if (out.empty()) {
      out = format_angle(constant);
    } else {
      out += (constant < 0 ? " - " : " + ") + format_angle(std::abs(constant));
    }
  }
  return out;
}

std::vector<Gate> RewriteRule::instantiate(const Gate& gate) const {
  std::vector<Gate> out;
  out.reserve(target.size());
  for (const auto& t : target) {
    Gate g;
    g.kind = t.kind;
    for (const int slot : t.slots) {
      g.operands.push_back(gate.operands.at(slot));
    }
    for (const auto& e : t.params) {
      g.params.push_back(e.eval(gate.params));
    }
    out.push_back(std::move(g));
  }
  return out;
}

const std::vector<RewriteRule>& rewrite_rules() {
  static const std::vector<RewriteRule> table = [] {
    auto t = build_table();
    for (const auto& check : run_checks(t)) {
      const double err = check.rule->phase == PhaseNote::Exact ? check.max_error_no_phase : check.max_error;
      if (!(err < kRuleTolerance)) {
        fail_rule(*check.rule, err);
      }
    }
    return t;
  }();
  return table;
}

std::vector<RuleCheck> check_rule_table() { return run_checks(rewrite_rules()); }

std::vector<Gate> reverse_cnot(Qubit control, Qubit target) {
  return {gates::h(control), gates::h(target), gates::cnot(target, control), gates::h(control),
          gates::h(target)};
}

std::vector<Gate> decompose_swap(Qubit a, Qubit b, const Device& device) {
  if (!device.adjacent(a, b)) {
    throw NotCoupled(a, b);
  }
  if (device.native_2q() == GateKind::SWAP) {
    return {gates::swap(a, b)};
  }
  const bool cnot_native = device.native_2q() == GateKind::CNOT;
  Qubit x = a;
  Qubit y = b;
  if (cnot_native && !device.orientation_allowed(a, b)) {
    std::swap(x, y);
  }
  std::vector<Gate> seq;
  for (const auto& g : {gates::cnot(x, y), gates::cnot(y, x), gates::cnot(x, y)}) {
    if (cnot_native && !device.orientation_allowed(g.operands[0], g.operands[1])) {
      auto rev = reverse_cnot(g.operands[0], g.operands[1]);
      seq.insert(seq.end(), rev.begin(), rev.end());
    } else {
      seq.push_back(g);
    }
  }
  return expand_sequence(seq, device, 1);
}

std::vector<Gate> decompose_gate(const Gate& gate, const Device& device) { return expand(gate, device, 0); }

Decomposition decompose_with_provenance(const Circuit& circuit, const Device& device) {
  if (circuit.qubit_count() > device.qubit_count()) {
    throw TooManyQubits(circuit.qubit_count(), device.qubit_count());
  }
  Decomposition out{Circuit(circuit.qubit_count()), {}};
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    for (auto& g : decompose_gate(circuit[i], device)) {
      out.circuit.add(std::move(g));
      out.source_index.push_back(i);
    }
  }
  return out;
}

Circuit decompose_to_native(const Circuit& circuit, const Device& device) {
  return decompose_with_provenance(circuit, device).circuit;
}

std::vector<const RewriteRule*> rules_for(const Device& device) {
  std::vector<const RewriteRule*> out;
  for (const auto kind : kAllGateKinds) {
    if (kind == GateKind::MEASURE) {
      continue;
    }
    Gate probe;
    probe.kind = kind;
    probe.params.assign(static_cast<std::size_t>(param_count(kind)), 0.5);
    if (arity(kind) == 1) {
      probe.operands = {0};
    } else if (!device.skeleton().empty()) {
      probe.operands = {device.skeleton().front().first, device.skeleton().front().second};
    } else {
      continue;
    }
    if (device.is_native(probe)) {
      continue;
    }
    if (auto choice = choose_rule(probe, device, 0)) {
      out.push_back(choice->rule);
    }
  }
  return out;
}

std::string format_rule(const RewriteRule& rule) {
  static constexpr const char* slot_names[] = {"a", "b"};
  auto operands = [](const std::vector<int>& slots) {
    std::string s;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      s += (i == 0 ? " " : ", ");
      s += slot_names[slots[i]];
    }
    return s;
  };
  std::vector<int> src_slots(static_cast<std::size_t>(arity(rule.source)));
  for (std::size_t i = 0; i < src_slots.size(); ++i) {
    src_slots[i] = static_cast<int>(i);
  }
  std::string out(mnemonic(rule.source));
  out += operands(src_slots);
  static constexpr const char* names[] = {"theta", "phi", "lambda"};
  for (int k = 0; k < param_count(rule.source); ++k) {
    out += std::string(", ") + names[k];
  }
  out += " ->";
  for (std::size_t i = 0; i < rule.target.size(); ++i) {
    const auto& t = rule.target[i];
    out += i == 0 ? " " : "; ";
    out += mnemonic(t.kind);
    out += operands(t.slots);
    for (const auto& e : t.params) {
      out += ", " + e.to_string();
    }
  }
  out += rule.phase == PhaseNote::Exact ? "  [exact]" : "  [up to global phase]";
  return out;
}

} // namespace qcmap
