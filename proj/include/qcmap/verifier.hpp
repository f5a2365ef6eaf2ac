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
#include "qcmap/mapper.hpp"
#include "qcmap/scheduler.hpp"
#include "qcmap/simulator.hpp"
#include "qcmap/unitary.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qcmap {

enum class ViolationKind { Coupling, Orientation, NonNative, ReuseAfterMeasure, NotMeasurable, OutOfRange };

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::size_t gate_index;
  std::vector<int> qubits;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// `violation <kind> gate#<idx> qubits <i,j>`
std::string format_violation(const Violation& v);

/// Every hardware rule the circuit (on physical qubits) breaks, in gate order.
std::vector<Violation> check_constraints(const Circuit& circuit, const Device& device);

struct Equivalence {
  bool equivalent = false;
  double deficit = 1.0; // 1 - min fidelity over all inputs
};

inline constexpr int kMaxEquivalenceQubits = 12;
inline constexpr double kEquivalenceTolerance = 1e-10;

/// Compares `orig` (program qubits) with `mapped` (physical qubits) on 20
/// deterministic basis inputs and 5 seeded random states. Inputs enter
/// through `initial`; outputs are read back through `final`. Free physical
/// qubits start in |0> and must end in |0>. Throws TooManyQubits when orig
/// exceeds 12 qubits or the mapped register cannot be compacted to 16.
Equivalence equivalent(const Circuit& orig, const Circuit& mapped, const Placement& initial, const Placement& final,
                       std::uint64_t seed = 0);

/// Same, with program qubit k starting on physical qubit k.
Equivalence equivalent(const Circuit& orig, const Circuit& mapped, const Placement& final, std::uint64_t seed = 0);

struct MetricsReport {
  std::size_t gates_before = 0;
  std::size_t gates_after = 0;
  std::size_t swaps_added = 0;
  std::size_t direction_fixes = 0;
  int depth_cycles = 0;
  std::optional<double> reliability; // nullopt => no error data

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

/// `orig` is the native input before routing; `schedule` covers the final
/// native circuit.
MetricsReport metrics(const Circuit& orig, const RoutedResult& routed, const Schedule& schedule, const Device& device);

/// key=value lines in a fixed order.
std::string format_metrics(const MetricsReport& report);

} // namespace qcmap
