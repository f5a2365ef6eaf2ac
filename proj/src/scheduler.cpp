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

#include "qcmap/scheduler.hpp"

#include "qcmap/errors.hpp"
#include "qcmap/verifier.hpp"

#include <algorithm>

namespace qcmap {

namespace {

Waveform waveform_of(const Gate& g) { return {g.kind, g.params}; }

bool uses_channel(const ControlChannel& ch, const Gate& g) {
  return ch.applies_to(g) && std::any_of(g.operands.begin(), g.operands.end(), [&](int q) { return ch.covers(q); });
}

std::string dump_gate(const Gate& g) {
  std::string out(mnemonic(g.kind));
  if (!g.params.empty()) {
    out += "(";
    for (std::size_t k = 0; k < g.params.size(); ++k) {
      out += (k ? "," : "") + format_angle(g.params[k]);
    }
    out += ")";
  }
  out += "@";
  for (std::size_t k = 0; k < g.operands.size(); ++k) {
    out += (k ? "," : "") + std::to_string(g.operands[k]);
  }
  return out;
}

} // namespace

std::map<int, std::vector<ScheduledGate>> Schedule::cycle_table() const {
  std::map<int, std::vector<ScheduledGate>> table;
  for (const auto& sg : gates) {
    table[sg.start].push_back(sg);
  }
  for (auto& [cycle, row] : table) {
    std::stable_sort(row.begin(), row.end(),
                     [](const ScheduledGate& a, const ScheduledGate& b) { return a.gate.operands[0] < b.gate.operands[0]; });
  }
  return table;
}

int depth(const Schedule& schedule) {
  int d = 0;
  for (const auto& sg : schedule.gates) {
    d = std::max(d, sg.end());
  }
  return d;
}

std::string dump_schedule(const Schedule& schedule) {
  const auto table = schedule.cycle_table();
  std::string out;
  for (int cycle = 0; cycle < depth(schedule); ++cycle) {
    out += "cycle " + std::to_string(cycle) + ":";
    if (auto it = table.find(cycle); it != table.end()) {
      for (std::size_t k = 0; k < it->second.size(); ++k) {
        out += (k ? "; " : " ") + dump_gate(it->second[k].gate);
      }
    }
    out += "\n";
  }
  return out;
}

Circuit linearize(const Schedule& schedule, int qubit_count) {
  auto sorted = schedule.gates;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ScheduledGate& a, const ScheduledGate& b) { return a.start < b.start; });
  Circuit out(qubit_count);
  for (const auto& sg : sorted) {
    out.add(sg.gate);
  }
  return out;
}

Scheduler::Scheduler(const Circuit& circuit, const Device& device, Placement initial, SwapMarkers markers)
    : circuit_(circuit), device_(&device), markers_(std::move(markers)), graph_(circuit) {
  if (circuit.qubit_count() != device.qubit_count()) {
    throw ConstraintViolation("circuit has " + std::to_string(circuit.qubit_count()) + " qubits, device '" +
                              device.name() + "' has " + std::to_string(device.qubit_count()));
  }
  if (const auto violations = check_constraints(circuit, device); !violations.empty()) {
    throw ConstraintViolation("circuit is not routed for device '" + device.name() +
                              "': " + format_violation(violations.front()));
  }
  if (initial.physical_count() == 0) {
    initial = Placement::identity(device.qubit_count(), device.qubit_count());
  }
  if (initial.physical_count() != device.qubit_count()) {
    throw Error("placement size does not match device");
  }
  markers_.resize(circuit.size());
  initial_ = initial;
  current_ = std::move(initial);
  ready_.assign(static_cast<std::size_t>(device.qubit_count()), 0);
}

Scheduler::Scheduler(const Circuit& circuit, const Device& device, const ExecutionSnapshot& snapshot,
                     SwapMarkers markers)
    : Scheduler(circuit, device, snapshot.initial_placement, std::move(markers)) {
  if (snapshot.graph.size() != circuit.size()) {
    throw Error("snapshot does not belong to this circuit");
  }
  // Scheduling is in circuit order, so the scheduled set is a prefix.
  for (const auto& sg : snapshot.schedule.gates) {
    if (sg.index != next_) {
      throw Error("snapshot schedule is not a circuit-order prefix");
    }
    for (const int q : sg.gate.operands) {
      ready_[q] = std::max(ready_[q], sg.end());
    }
    ++next_;
  }
  graph_ = snapshot.graph;
  current_ = snapshot.current_placement;
  schedule_ = snapshot.schedule;
  controls_ = snapshot.controls;
}

bool Scheduler::channel_free(const Gate& gate, int start, int duration) const {
  const auto wave = waveform_of(gate);
  for (int cycle = start; cycle < start + duration; ++cycle) {
    auto row = controls_.find(cycle);
    if (row == controls_.end()) {
      continue;
    }
    for (const auto& ch : device_->channels()) {
      if (!uses_channel(ch, gate)) {
        continue;
      }
      if (auto it = row->second.find(ch.id); it != row->second.end() && it->second != wave) {
        return false;
      }
    }
  }
  return true;
}

bool Scheduler::step() {
  if (done()) {
    return false;
  }
  const Gate& gate = circuit_[next_];
  const int duration = device_->duration(gate.kind);
  int start = 0;
  for (const int q : gate.operands) {
    start = std::max(start, ready_[q]);
  }
  while (!channel_free(gate, start, duration)) {
    ++start;
  }

  graph_.mark_scheduled(next_);
  schedule_.gates.push_back({next_, gate, start, duration});
  for (const int q : gate.operands) {
    ready_[q] = start + duration;
  }
  for (const auto& ch : device_->channels()) {
    if (uses_channel(ch, gate)) {
      for (int cycle = start; cycle < start + duration; ++cycle) {
        controls_[cycle][ch.id] = waveform_of(gate);
      }
    }
  }
  if (const auto& edge = markers_[next_]) {
    current_.swap_slots(edge->first, edge->second);
  }
  ++next_;
  return true;
}

void Scheduler::run() {
  while (step()) {
  }
}

ExecutionSnapshot Scheduler::snapshot() const { return {graph_, initial_, current_, schedule_, controls_}; }

Schedule schedule_asap(const Circuit& circuit, const Device& device) {
  Scheduler s(circuit, device);
  s.run();
  return s.schedule();
}

SwapMarkers swap_markers(const Circuit& routed, const std::vector<std::size_t>& source_index) {
  SwapMarkers markers(source_index.size());
  for (std::size_t k = 0; k < source_index.size(); ++k) {
    const bool last = k + 1 == source_index.size() || source_index[k + 1] != source_index[k];
    const Gate& src = routed[source_index[k]];
    if (last && src.kind == GateKind::SWAP) {
      markers[k] = std::pair{src.operands[0], src.operands[1]};
    }
  }
  return markers;
}

std::vector<std::set<GateKind>> compatible_gates(const ExecutionSnapshot& snapshot, const Device& device, int cycle) {
  std::vector<std::set<GateKind>> out(static_cast<std::size_t>(device.qubit_count()));
  std::vector<bool> busy(out.size(), false);
  for (const auto& sg : snapshot.schedule.gates) {
    if (sg.start <= cycle && cycle < sg.end()) {
      for (const int q : sg.gate.operands) {
        busy[q] = true;
      }
    }
  }
  const auto row = snapshot.controls.find(cycle);
  for (int q = 0; q < device.qubit_count(); ++q) {
    if (busy[q]) {
      continue;
    }
    for (const GateKind kind : device.native_kinds(q)) {
      bool ok = true;
      if (row != snapshot.controls.end()) {
        for (const auto& ch : device.channels()) {
          if (!ch.covers(q) || (ch.scope == ChannelScope::OneQubit) != (arity(kind) == 1)) {
            continue;
          }
          if (auto it = row->second.find(ch.id); it != row->second.end() && it->second.kind != kind) {
            ok = false;
          }
        }
      }
      if (ok) {
        out[q].insert(kind);
      }
    }
  }
  return out;
}

} // namespace qcmap
