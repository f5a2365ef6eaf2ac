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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qcmap {

/// Physical -> program qubit array. Slot k holds the program qubit sitting on
/// physical qubit k, or kFree.
class Placement {
public:
  static constexpr int kFree = -1;

  Placement() = default;
  /// Throws Error if a program qubit repeats.
  explicit Placement(std::vector<int> slots);
  static Placement identity(int program_qubits, int physical_qubits);

  [[nodiscard]] const std::vector<int>& slots() const noexcept { return slots_; }
  [[nodiscard]] int physical_count() const noexcept { return static_cast<int>(slots_.size()); }
  [[nodiscard]] int program_at(int physical) const { return slots_.at(physical); }
  /// Physical qubit holding `program`, or kFree if unplaced.
  [[nodiscard]] int physical_of(int program) const;
  [[nodiscard]] int program_count() const noexcept;

  /// Exchanges slots i and j (no coupling check).
  void swap_slots(int i, int j);

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Placement&, const Placement&) = default;
  friend auto operator<=>(const Placement&, const Placement&) = default;

private:
  std::vector<int> slots_;
  std::vector<int> inverse_; // program -> physical
};

/// Throws NotCoupled unless (i, j) is an edge.
Placement apply_swap(const Placement& placement, int i, int j, const Device& device);

enum class PlacerStrategy { Identity, InteractionGreedy };

Placement initial_placement(const Circuit& circuit, const Device& device, PlacerStrategy strategy);

enum class RouterStrategy { Naive, Lookahead, Exact };
enum class CostMode { Hops, Reliability };

struct RouterConfig {
  RouterStrategy strategy = RouterStrategy::Lookahead;
  CostMode cost = CostMode::Hops;
  double w0 = 1.0;
  double w1 = 0.5;
  int window = 20;
  int exact_max_qubits = 5;
  int exact_max_two_qubit_gates = 8;
  std::uint64_t seed = 0; // routing is deterministic; kept for reproducible tie-breaks

  /// Throws Error when weights or limits are out of range.
  void validate() const;
};

struct RoutedResult {
  Circuit circuit; // over physical qubits
  Placement initial_placement;
  Placement final_placement;
  std::size_t swaps_added = 0;
  std::size_t direction_fixes = 0;

  friend bool operator==(const RoutedResult&, const RoutedResult&) = default;
};

/// Returns [gate] when its orientation is allowed, otherwise the H-conjugated
/// reversal; bumps `direction_fixes` on expansion. Throws NotCoupled.
std::vector<Gate> fix_direction(const Gate& gate, const Device& device, std::size_t& direction_fixes);

/// Routes a native circuit (program qubits) so every two-qubit gate acts on a
/// coupled physical pair. Emitted SWAPs stay SWAP gates; decompose afterwards.
RoutedResult route(const Circuit& circuit, const Device& device, const Placement& initial,
                   const RouterConfig& config = {});

/// Pairwise swap cost matrix used by the lookahead router: hop distance, or
/// the sum of -log(1 - error) edge weights in reliability mode.
std::vector<std::vector<double>> routing_distances(const Device& device, CostMode mode);

} // namespace qcmap
