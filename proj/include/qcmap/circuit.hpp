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

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qcmap {

using Qubit = int;

enum class GateKind : std::uint8_t {
  H,
  X,
  Y,
  Z,
  S,
  SDG,
  T,
  TDG,
  RX,
  RY,
  RZ,
  U3,
  CNOT,
  CZ,
  SWAP,
  MEASURE,
};

inline constexpr std::size_t kGateKindCount = 16;

inline constexpr GateKind kAllGateKinds[] = {
    GateKind::H,  GateKind::X,  GateKind::Y,  GateKind::Z,    GateKind::S,  GateKind::SDG,
    GateKind::T,  GateKind::TDG, GateKind::RX, GateKind::RY,  GateKind::RZ, GateKind::U3,
    GateKind::CNOT, GateKind::CZ, GateKind::SWAP, GateKind::MEASURE,
};

constexpr int arity(GateKind kind) noexcept {
  switch (kind) {
  case GateKind::CNOT:
  case GateKind::CZ:
  case GateKind::SWAP:
    return 2;
  default:
    return 1;
  }
}

constexpr int param_count(GateKind kind) noexcept {
  switch (kind) {
  case GateKind::RX:
  case GateKind::RY:
  case GateKind::RZ:
    return 1;
  case GateKind::U3:
    return 3;
  default:
    return 0;
  }
}

/// Lower-case mnemonic used by the circuit and device languages.
std::string_view mnemonic(GateKind kind) noexcept;

/// Case-insensitive inverse of mnemonic(). Accepts "cx" as an alias of cnot.
std::optional<GateKind> gate_kind_from_mnemonic(std::string_view name);

/// A gate applied to indexed qubits. For CNOT operand 0 is the control.
struct Gate {
  GateKind kind{GateKind::H};
  std::vector<Qubit> operands;
  std::vector<double> params;

  Gate() = default;
  Gate(GateKind k, std::vector<Qubit> ops, std::vector<double> ps = {});

  [[nodiscard]] bool acts_on(Qubit q) const noexcept;
  [[nodiscard]] bool is_two_qubit() const noexcept { return arity(kind) == 2; }

  /// Same kind and bit-identical parameters; operands ignored.
  [[nodiscard]] bool same_operation(const Gate& other) const noexcept;

  friend bool operator==(const Gate&, const Gate&) = default;
};

namespace gates {
Gate h(Qubit q);
Gate x(Qubit q);
Gate y(Qubit q);
Gate z(Qubit q);
Gate s(Qubit q);
Gate sdg(Qubit q);
Gate t(Qubit q);
Gate tdg(Qubit q);
Gate rx(Qubit q, double theta);
Gate ry(Qubit q, double theta);
Gate rz(Qubit q, double theta);
Gate u3(Qubit q, double theta, double phi, double lambda);
Gate cnot(Qubit control, Qubit target);
Gate cz(Qubit a, Qubit b);
Gate swap(Qubit a, Qubit b);
Gate measure(Qubit q);
} // namespace gates

/// Ordered gate list over qubits 0..qubit_count-1.
///
/// add() rejects gates that break the circuit invariants: operands in range,
/// and nothing applied to a qubit after it was measured.
class Circuit {
public:
  Circuit() = default;
  explicit Circuit(int qubit_count);
  Circuit(int qubit_count, std::initializer_list<Gate> gates);

  [[nodiscard]] int qubit_count() const noexcept { return qubit_count_; }
  [[nodiscard]] const std::vector<Gate>& gates() const noexcept { return gates_; }
  [[nodiscard]] std::size_t size() const noexcept { return gates_.size(); }
  [[nodiscard]] bool empty() const noexcept { return gates_.empty(); }
  [[nodiscard]] const Gate& operator[](std::size_t i) const { return gates_[i]; }

  void add(Gate gate);
  Circuit& operator<<(Gate gate) {
    add(std::move(gate));
    return *this;
  }

  /// Appends every gate of `other`; qubit counts must agree.
  void append(const Circuit& other);

  [[nodiscard]] std::size_t two_qubit_gate_count() const noexcept;

  friend bool operator==(const Circuit&, const Circuit&) = default;

private:
  int qubit_count_ = 0;
  std::vector<Gate> gates_;
  std::vector<bool> measured_;
};

/// Throws InvalidGate when operands or parameters do not fit the kind.
void validate_gate(const Gate& gate);

Circuit parse_circuit(std::string_view text);
Circuit load_circuit_file(const std::string& path);

/// Text form accepted by parse_circuit; angles use 17 significant digits.
std::string print_circuit(const Circuit& circuit);

/// One statement, without the trailing newline ("cnot q0, q1").
std::string format_gate(const Gate& gate);

/// Shortest text that reads back to exactly `value` ("pi/2" etc. for exact constants).
std::string format_angle(double value);

} // namespace qcmap
