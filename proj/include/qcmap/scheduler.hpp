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
#include "qcmap/dependency_graph.hpp"
#include "qcmap/device.hpp"
#include "qcmap/mapper.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace qcmap {

/// A gate placed in time; it occupies cycles [start, start + duration).
struct ScheduledGate {
  std::size_t index = 0; // position in the scheduled circuit
  Gate gate;
  int start = 0;
  int duration = 1;

  [[nodiscard]] int end() const noexcept { return start + duration; }

  friend bool operator==(const ScheduledGate&, const ScheduledGate&) = default;
};

/// Gates in the order they were scheduled (circuit order).
struct Schedule {
  std::vector<ScheduledGate> gates;

  /// Gates starting at each cycle, ordered by first operand.
  [[nodiscard]] std::map<int, std::vector<ScheduledGate>> cycle_table() const;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

/// max(start + duration); 0 for an empty schedule.
int depth(const Schedule& schedule);

/// One line per cycle: `cycle <n>: <gate>@<qubits>; ...`.
std::string dump_schedule(const Schedule& schedule);

/// Stable-sorts by start cycle and returns the gates as a circuit.
Circuit linearize(const Schedule& schedule, int qubit_count);

/// The operation a channel emits during a cycle.
struct Waveform {
  GateKind kind = GateKind::X;
  std::vector<double> params;

  friend bool operator==(const Waveform&, const Waveform&) = default;
  friend auto operator<=>(const Waveform&, const Waveform&) = default;
};

/// cycle -> channel id -> waveform
using ControlSettings = std::map<int, std::map<std::string, Waveform>>;

/// For each gate index, the coupled edge of the SWAP it completes (if any).
using SwapMarkers = std::vector<std::optional<std::pair<int, int>>>;

struct ExecutionSnapshot {
  DependencyGraph graph;
  Placement initial_placement;
  Placement current_placement;
  Schedule schedule;
  ControlSettings controls;
};

/// ASAP list scheduler that can stop after any number of gates and resume
/// from a snapshot.
class Scheduler {
public:
  /// Throws ConstraintViolation unless `circuit` is native and routed for
  /// `device`. An empty placement defaults to identity.
  Scheduler(const Circuit& circuit, const Device& device, Placement initial = {}, SwapMarkers markers = {});

  /// Continues from `snapshot`, which must come from the same circuit.
  Scheduler(const Circuit& circuit, const Device& device, const ExecutionSnapshot& snapshot, SwapMarkers markers = {});

  [[nodiscard]] bool done() const noexcept { return next_ == circuit_.size(); }
  [[nodiscard]] std::size_t steps() const noexcept { return next_; }

  /// Schedules the next gate; returns false when nothing is left.
  bool step();
  void run();

  [[nodiscard]] ExecutionSnapshot snapshot() const;
  [[nodiscard]] const Schedule& schedule() const noexcept { return schedule_; }

private:
  [[nodiscard]] bool channel_free(const Gate& gate, int start, int duration) const;

  Circuit circuit_;
  const Device* device_;
  SwapMarkers markers_;
  DependencyGraph graph_;
  Placement initial_;
  Placement current_;
  Schedule schedule_;
  ControlSettings controls_;
  std::vector<int> ready_; // per physical qubit
  std::size_t next_ = 0;
};

Schedule schedule_asap(const Circuit& circuit, const Device& device);

/// Swap markers from a decomposition's provenance: the last native gate of
/// each source SWAP carries its edge.
SwapMarkers swap_markers(const Circuit& routed, const std::vector<std::size_t>& source_index);

/// Native kinds each physical qubit could start at `cycle` given the
/// snapshot's busy intervals and channel settings. Busy qubits get {}.
std::vector<std::set<GateKind>> compatible_gates(const ExecutionSnapshot& snapshot, const Device& device, int cycle);

} // namespace qcmap
