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

#include "support.hpp"

#include "qcmap/errors.hpp"
#include "qcmap/pipeline.hpp"
#include "qcmap/scheduler.hpp"
#include "qcmap/simulator.hpp"

#include <gtest/gtest.h>

using namespace qcmap;
using fixtures::qx4;
using fixtures::surface17;

namespace {

const Device& open_line() {
  static const Device d = load_device("name line\nqubits 3\nedge q0 q1\nedge q1 q2\ngate1q h x y rx\n"
                                      "gate2q cnot symmetric\n");
  return d;
}

const Device& shared_drive() {
  static const Device d = load_device("name shared\nqubits 3\nedge q0 q1\nedge q1 q2\ngate1q h x y rx\n"
                                      "gate2q cnot symmetric\nchannel drive 1q: q0 q1\n");
  return d;
}

// Re-checks qubit exclusivity, dependency order and channel conflicts
// directly from the schedule entries.
void expect_valid(const Schedule& s, const Circuit& c, const Device& d) {
  ASSERT_EQ(s.gates.size(), c.size());
  const auto preds = fixtures::line_predecessors(c);
  for (std::size_t k = 0; k < s.gates.size(); ++k) {
    const auto& a = s.gates[k];
    EXPECT_EQ(a.gate, c[a.index]);
    EXPECT_EQ(a.duration, d.duration(a.gate.kind));
    for (const auto p : preds[a.index]) {
      EXPECT_GE(a.start, s.gates[p].end());
    }
    for (std::size_t m = k + 1; m < s.gates.size(); ++m) {
      const auto& b = s.gates[m];
      const bool overlap = a.start < b.end() && b.start < a.end();
      if (!overlap) {
        continue;
      }
      for (const int q : a.gate.operands) {
        EXPECT_FALSE(b.gate.acts_on(q));
      }
      EXPECT_FALSE(channel_conflict(d, a.gate, b.gate)) << format_gate(a.gate) << " / " << format_gate(b.gate);
    }
  }
}

} // namespace

TEST(Schedule, ParallelOneQubitGates) {
  const auto s = schedule_asap(Circuit(3, {gates::h(0), gates::h(1)}), open_line());
  EXPECT_EQ(s.gates[0].start, 0);
  EXPECT_EQ(s.gates[1].start, 0);
  EXPECT_EQ(depth(s), 1);
}

TEST(Schedule, DependencySerializes) {
  const auto s = schedule_asap(Circuit(3, {gates::h(0), gates::cnot(0, 1)}), open_line());
  EXPECT_EQ(s.gates[1].start, 1);
  EXPECT_EQ(depth(s), 2);
}

TEST(Schedule, SharedChannelConflict) {
  const auto s = schedule_asap(Circuit(3, {gates::x(0), gates::y(1)}), shared_drive());
  EXPECT_EQ(s.gates[0].start, 0);
  EXPECT_EQ(s.gates[1].start, 1);
  EXPECT_EQ(depth(s), 2);
  // Same waveform broadcasts.
  EXPECT_EQ(depth(schedule_asap(Circuit(3, {gates::x(0), gates::x(1)}), shared_drive())), 1);
  // Qubit 2 is off the channel.
  EXPECT_EQ(depth(schedule_asap(Circuit(3, {gates::x(0), gates::y(2)}), shared_drive())), 1);
}

TEST(Schedule, EmptyAndChain) {
  EXPECT_EQ(depth(schedule_asap(Circuit(3), open_line())), 0);
  EXPECT_EQ(dump_schedule(schedule_asap(Circuit(3), open_line())), "");
  Circuit chain(3);
  for (int k = 0; k < 7; ++k) {
    chain.add(gates::x(1));
  }
  EXPECT_EQ(depth(schedule_asap(chain, open_line())), 7);
}

TEST(Schedule, Durations) {
  const auto d = load_device("name slow\nqubits 2\nedge q0 q1\ngate1q x\ngate2q cz symmetric\n"
                             "duration x 20\nduration cz 60\nduration measure 100\n");
  const auto s = schedule_asap(Circuit(2, {gates::x(0), gates::cz(0, 1), gates::x(1), gates::measure(0)}), d);
  EXPECT_EQ(s.gates[1].start, 1);
  EXPECT_EQ(s.gates[1].duration, 3);
  EXPECT_EQ(s.gates[2].start, 4);
  EXPECT_EQ(s.gates[3].start, 4);
  EXPECT_EQ(depth(s), 9);
}

TEST(Schedule, DumpFormat) {
  const auto s = schedule_asap(Circuit(3, {gates::rx(2, 0.5), gates::h(0), gates::cnot(0, 1)}), open_line());
  EXPECT_EQ(dump_schedule(s), "cycle 0: h@0; rx(0.5)@2\ncycle 1: cnot@0,1\n");
}

TEST(Schedule, RejectsUnroutedInput) {
  EXPECT_THROW(schedule_asap(Circuit(3, {gates::cnot(0, 2)}), open_line()), ConstraintViolation);
  EXPECT_THROW(schedule_asap(Circuit(3, {gates::z(0)}), open_line()), ConstraintViolation);
  EXPECT_THROW(schedule_asap(Circuit(2), open_line()), ConstraintViolation);
}

TEST(Schedule, DepthIsCriticalPathWithoutChannels) {
  for (int seed = 0; seed < 50; ++seed) {
    std::mt19937_64 rng(seed);
    const auto r = map_circuit(fixtures::random_circuit(rng, 2 + seed % 7, 30, true), surface17());
    expect_valid(r.schedule, r.mapped, surface17());
    EXPECT_EQ(depth(r.schedule), fixtures::critical_path(r.mapped, surface17()));
  }
}

TEST(Schedule, ValidWithChannelsAndLinearizesEquivalently) {
  const auto d = load_device(serialize_device(qx4()) + "channel left 1q: q0 q1 q2\nchannel right 1q: q3 q4\n"
                                                        "channel pair 2q: q1 q2\n");
  for (int seed = 0; seed < 30; ++seed) {
    std::mt19937_64 rng(seed);
    const auto r = map_circuit(fixtures::random_circuit(rng, 4, 25), d);
    expect_valid(r.schedule, r.mapped, d);
    const auto lin = linearize(r.schedule, d.qubit_count());
    const auto a = simulate(r.mapped, std::uint64_t{5});
    const auto b = simulate(lin, std::uint64_t{5});
    EXPECT_NEAR(fidelity(a, b), 1.0, 1e-10);
  }
}

TEST(Snapshot, Endpoints) {
  const auto r = map_circuit(Circuit(3, {gates::cnot(0, 2), gates::h(1), gates::cnot(1, 2)}), qx4(),
                             {PlacerStrategy::Identity, {}});
  Scheduler s(r.mapped, qx4(), r.routed.initial_placement, r.markers);
  auto snap = s.snapshot();
  EXPECT_EQ(snap.graph.scheduled_count(), 0u);
  EXPECT_EQ(snap.current_placement, snap.initial_placement);
  EXPECT_TRUE(snap.schedule.gates.empty());
  EXPECT_TRUE(snap.controls.empty());
  s.run();
  snap = s.snapshot();
  EXPECT_EQ(snap.graph.scheduled_count(), r.mapped.size());
  EXPECT_TRUE(snap.graph.frontier().empty());
  EXPECT_EQ(snap.current_placement, r.routed.final_placement);
}

TEST(Snapshot, PlacementFollowsSwaps) {
  const auto d = load_device("name l\nqubits 3\nedge q0 q1\nedge q1 q2\ngate1q h\ngate2q cnot symmetric\n");
  Circuit routed(3, {gates::swap(1, 2)});
  auto lowered = decompose_with_provenance(routed, d);
  const auto markers = swap_markers(routed, lowered.source_index);
  const Placement p0({0, 1, Placement::kFree});
  Scheduler s(lowered.circuit, d, p0, markers);
  for (std::size_t k = 0; k + 1 < lowered.circuit.size(); ++k) {
    s.step();
    EXPECT_EQ(s.snapshot().current_placement, p0);
  }
  s.step();
  EXPECT_EQ(s.snapshot().current_placement, apply_swap(p0, 1, 2, d));
  EXPECT_FALSE(s.step());
}

TEST(Snapshot, ResumeGivesSameSchedule) {
  const auto d = load_device(serialize_device(surface17()) + "channel drive 1q: q0 q1 q2 q3 q4 q5 q6 q7 q8\n");
  for (int seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    const auto r = map_circuit(fixtures::random_circuit(rng, 6, 30), d);
    Scheduler full(r.mapped, d, r.routed.initial_placement, r.markers);
    full.run();
    const std::size_t cut = r.mapped.size() / 2;
    Scheduler part(r.mapped, d, r.routed.initial_placement, r.markers);
    for (std::size_t k = 0; k < cut; ++k) {
      part.step();
    }
    const auto snap = part.snapshot();
    EXPECT_EQ(snap.graph.scheduled_count(), cut);
    Scheduler resumed(r.mapped, d, snap, r.markers);
    resumed.run();
    EXPECT_EQ(resumed.schedule(), full.schedule());
    EXPECT_EQ(resumed.snapshot().current_placement, full.snapshot().current_placement);
    EXPECT_EQ(resumed.snapshot().controls, full.snapshot().controls);
  }
}

TEST(CompatibleGates, Cases) {
  // Idle cycle without channels: the full native set.
  Scheduler idle(Circuit(3), open_line());
  const auto all = compatible_gates(idle.snapshot(), open_line(), 0);
  EXPECT_EQ(all[0], open_line().native_kinds(0));

  // Busy qubit and broadcast restriction.
  Scheduler s(Circuit(3, {gates::x(0)}), shared_drive());
  s.run();
  const auto c = compatible_gates(s.snapshot(), shared_drive(), 0);
  EXPECT_TRUE(c[0].empty());
  EXPECT_TRUE(c[1].contains(GateKind::X));
  EXPECT_FALSE(c[1].contains(GateKind::Y));
  EXPECT_TRUE(c[1].contains(GateKind::CNOT));
  EXPECT_TRUE(c[2].contains(GateKind::Y));
  EXPECT_EQ(compatible_gates(s.snapshot(), shared_drive(), 1)[1], shared_drive().native_kinds(1));
}
