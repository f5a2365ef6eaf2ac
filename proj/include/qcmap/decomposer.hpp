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

#pragma once

#include "qcmap/circuit.hpp"
#include "qcmap/device.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qcmap {

/// constant + sum_k coeff[k] * source_param[k]
struct ParamExpr {
  double constant = 0.0;
  std::array<double, 3> coeff{};

  [[nodiscard]] double eval(std::span<const double> source) const;
  [[nodiscard]] std::string to_string() const;

  static ParamExpr value(double c) { return {c, {}}; }
  static ParamExpr source(std::size_t k) {
    ParamExpr e;
    e.coeff.at(k) = 1.0;
    return e;
  }
};

/// Target gate over the source gate's operand slots.
struct GateTemplate {
  GateKind kind;
  std::vector<int> slots;
  std::vector<ParamExpr> params;
};

enum class PhaseNote { Exact, UpToGlobalPhase };

struct RewriteRule {
  GateKind source;
  std::vector<GateTemplate> target;
  PhaseNote phase = PhaseNote::UpToGlobalPhase;

  [[nodiscard]] std::vector<Gate> instantiate(const Gate& gate) const;
};

/// The embedded rule table. The first call validates every rule against the
/// unitary oracle and throws std::logic_error if one fails.
const std::vector<RewriteRule>& rewrite_rules();

struct RuleCheck {
  const RewriteRule* rule;
  double max_error; // max-norm after best global phase, over sample angles
  double max_error_no_phase;
};

/// Re-runs the oracle over the table (independent of the startup cache).
std::vector<RuleCheck> check_rule_table();

/// H(c), H(t), CNOT(t, c), H(c), H(t): equal to CNOT(c, t).
std::vector<Gate> reverse_cnot(Qubit control, Qubit target);

/// SWAP on a coupled pair as native gates, orienting CNOTs on directed devices.
std::vector<Gate> decompose_swap(Qubit a, Qubit b, const Device& device);

/// Native expansion of a single gate (unchanged if already native).
std::vector<Gate> decompose_gate(const Gate& gate, const Device& device);

struct Decomposition {
  Circuit circuit;
  /// Index of the source gate each output gate came from.
  std::vector<std::size_t> source_index;
};

Decomposition decompose_with_provenance(const Circuit& circuit, const Device& device);
Circuit decompose_to_native(const Circuit& circuit, const Device& device);

/// Rules the decomposer picks on `device`, one per non-native gate kind.
std::vector<const RewriteRule*> rules_for(const Device& device);
std::string format_rule(const RewriteRule& rule);

} // namespace qcmap
