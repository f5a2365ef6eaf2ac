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

#include "qcmap/verifier.hpp"

#include "qcmap/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

namespace qcmap {

std::string to_string(ViolationKind kind) {
  switch (kind) {
  case ViolationKind::Coupling:
    return "coupling";
  case ViolationKind::Orientation:
    return "orientation";
  case ViolationKind::NonNative:
    return "non-native";
  case ViolationKind::ReuseAfterMeasure:
    return "reuse-after-measure";
  case ViolationKind::NotMeasurable:
    return "not-measurable";
  case ViolationKind::OutOfRange:
    return "out-of-range";
  }
  return "unknown";
}

std::string format_violation(const Violation& v) {
  std::string qubits;
  for (std::size_t k = 0; k < v.qubits.size(); ++k) {
    qubits += (k ? "," : "") + std::to_string(v.qubits[k]);
  }
  return "violation " + to_string(v.kind) + " gate#" + std::to_string(v.gate_index) + " qubits " + qubits;
}

std::vector<Violation> check_constraints(const Circuit& circuit, const Device& device) {
  std::vector<Violation> out;
  std::vector<bool> measured(static_cast<std::size_t>(device.qubit_count()), false);
  for (std::size_t idx = 0; idx < circuit.size(); ++idx) {
    const Gate& g = circuit[idx];
    const auto& ops = g.operands;
    if (std::any_of(ops.begin(), ops.end(), [&](int q) { return q >= device.qubit_count(); })) {
      out.push_back({ViolationKind::OutOfRange, idx, ops});
      continue;
    }
    if (std::any_of(ops.begin(), ops.end(), [&](int q) { return measured[q]; })) {
      out.push_back({ViolationKind::ReuseAfterMeasure, idx, ops});
    }
    if (g.kind == GateKind::MEASURE) {
      if (!device.is_measurable(ops[0])) {
        out.push_back({ViolationKind::NotMeasurable, idx, ops});
      }
      measured[ops[0]] = true;
      continue;
    }
    if (!device.is_native(g)) {
      out.push_back({ViolationKind::NonNative, idx, ops});
    }
    if (g.is_two_qubit()) {
      if (!device.adjacent(ops[0], ops[1])) {
        out.push_back({ViolationKind::Coupling, idx, ops});
      } else if (g.kind == GateKind::CNOT && device.native_2q() == GateKind::CNOT && !device.symmetric_2q() &&
                 !device.orientation_allowed(ops[0], ops[1])) {
        out.push_back({ViolationKind::Orientation, idx, ops});
      }
    }
  }
  return out;
}

namespace {

// Simulates a physical-qubit circuit on a small register. Physical qubits get
// a register slot when first used; SWAP gates only relabel slots. When the
// register is full, slots whose qubit is exactly |0> are recycled.
class CompactSimulator {
public:
  CompactSimulator(int physical_count, int width, const Placement& initial, int program_count)
      : slot_of_(static_cast<std::size_t>(physical_count), -1), owner_(static_cast<std::size_t>(width), -1) {
    for (int p = 0; p < program_count; ++p) {
      bind(initial.physical_of(p), p);
    }
    for (int s = width - 1; s >= program_count; --s) {
      free_.push_back(s);
    }
  }

  void run(const Circuit& mapped, StateVector<double>& state) {
    for (const auto& g : mapped.gates()) {
      if (g.kind == GateKind::MEASURE) {
        continue;
      }
      if (g.kind == GateKind::SWAP) {
        const int a = g.operands[0];
        const int b = g.operands[1];
        const int sa = slot_of_[a];
        const int sb = slot_of_[b];
        slot_of_[a] = sb;
        slot_of_[b] = sa;
        if (sa >= 0) {
          owner_[sa] = b;
        }
        if (sb >= 0) {
          owner_[sb] = a;
        }
        continue;
      }
      Gate local = g;
      for (auto& q : local.operands) {
        if (slot_of_[q] < 0) {
          allocate(q, g, state);
        }
        q = slot_of_[q];
      }
      state.apply(local);
    }
  }

  [[nodiscard]] int slot_of(int physical) const { return slot_of_[physical]; }

private:
  void bind(int physical, int slot) {
    slot_of_[physical] = slot;
    owner_[slot] = physical;
  }

  void allocate(int physical, const Gate& current, const StateVector<double>& state) {
    if (free_.empty()) {
      recycle(current, state);
    }
    if (free_.empty()) {
      throw TooManyQubits(static_cast<int>(owner_.size()) + 1, kMaxSimulatedQubits);
    }
    const int slot = free_.back();
    free_.pop_back();
    bind(physical, slot);
  }

  void recycle(const Gate& current, const StateVector<double>& state) {
    const auto& amps = state.amplitudes();
    for (int s = static_cast<int>(owner_.size()) - 1; s >= 0; --s) {
      const int phys = owner_[s];
      if (phys < 0 || current.acts_on(phys)) {
        continue;
      }
      double excited = 0.0;
      for (Eigen::Index i = 0; i < amps.size(); ++i) {
        if ((i >> s) & 1) {
          excited += std::norm(amps(i));
        }
      }
      if (excited < 1e-26) {
        slot_of_[phys] = -1;
        owner_[s] = -1;
        free_.push_back(s);
      }
    }
  }

  std::vector<int> slot_of_; // physical -> register slot
  std::vector<int> owner_;   // register slot -> physical
  std::vector<int> free_;    // popped from the back
};

std::vector<std::uint64_t> basis_inputs(int n) {
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::vector<std::uint64_t> out;
  if (dim <= 20) {
    for (std::uint64_t b = 0; b < dim; ++b) {
      out.push_back(b);
    }
    return out;
  }
  for (std::uint64_t k = 0; k < 20; ++k) {
    out.push_back(k * (dim - 1) / 19);
  }
  return out;
}

} // namespace

Equivalence equivalent(const Circuit& orig, const Circuit& mapped, const Placement& initial, const Placement& final,
                       std::uint64_t seed) {
  const int n = orig.qubit_count();
  if (n > kMaxEquivalenceQubits) {
    throw TooManyQubits(n, kMaxEquivalenceQubits);
  }
  const int m = mapped.qubit_count();
  if (initial.physical_count() != m || final.physical_count() != m) {
    throw Error("placement size does not match the mapped circuit");
  }
  for (int p = 0; p < n; ++p) {
    if (initial.physical_of(p) == Placement::kFree || final.physical_of(p) == Placement::kFree) {
      throw Error("program qubit " + std::to_string(p) + " is not placed");
    }
  }

  std::vector<bool> touched(static_cast<std::size_t>(m), false);
  for (int p = 0; p < n; ++p) {
    touched[initial.physical_of(p)] = true;
  }
  for (const auto& g : mapped.gates()) {
    if (g.kind != GateKind::SWAP) {
      for (const int q : g.operands) {
        touched[q] = true;
      }
    }
  }
  const int width =
      std::min<int>(kMaxSimulatedQubits, static_cast<int>(std::count(touched.begin(), touched.end(), true)));

  std::vector<StateVector<double>> inputs;
  for (const auto b : basis_inputs(n)) {
    inputs.emplace_back(n, b);
  }
  std::mt19937_64 rng(seed);
  for (int k = 0; k < 5; ++k) {
    inputs.push_back(StateVector<double>::random(n, rng));
  }

  double min_fidelity = 1.0;
  for (const auto& input : inputs) {
    const auto expected = simulate(orig, input);

    StateVector<double>::Vector padded = StateVector<double>::Vector::Zero(Eigen::Index(1) << width);
    padded.head(input.amplitudes().size()) = input.amplitudes();
    StateVector<double> state(width, std::move(padded));
    CompactSimulator sim(m, width, initial, n);
    sim.run(mapped, state);

    // Read program qubit p from the slot of its final physical qubit; a
    // recycled (unbound) qubit is |0>, so only bit 0 contributes.
    std::vector<int> slot(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) {
      slot[p] = sim.slot_of(final.physical_of(p));
    }
    Complex<double> overlap = 0.0;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
      std::uint64_t idx = 0;
      bool reachable = true;
      for (int p = 0; p < n; ++p) {
        if ((b >> p) & 1) {
          if (slot[p] < 0) {
            reachable = false;
            break;
          }
          idx |= std::uint64_t{1} << slot[p];
        }
      }
      if (reachable) {
        overlap += std::conj(expected[b]) * state[idx];
      }
    }
    min_fidelity = std::min(min_fidelity, std::abs(overlap));
  }
  const double deficit = std::max(0.0, 1.0 - min_fidelity);
  return {deficit < kEquivalenceTolerance, deficit};
}

Equivalence equivalent(const Circuit& orig, const Circuit& mapped, const Placement& final, std::uint64_t seed) {
  return equivalent(orig, mapped, Placement::identity(orig.qubit_count(), mapped.qubit_count()), final, seed);
}

MetricsReport metrics(const Circuit& orig, const RoutedResult& routed, const Schedule& schedule, const Device& device) {
  MetricsReport r;
  r.gates_before = orig.size();
  r.gates_after = schedule.gates.size();
  r.swaps_added = routed.swaps_added;
  r.direction_fixes = routed.direction_fixes;
  r.depth_cycles = depth(schedule);
  if (device.has_error_data()) {
    double product = 1.0;
    for (const auto& sg : schedule.gates) {
      product *= 1.0 - device.error_rate(sg.gate).value_or(0.0);
    }
    r.reliability = product;
  }
  return r;
}

std::string format_metrics(const MetricsReport& report) {
  std::string reliability = "no-data";
  if (report.reliability) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", *report.reliability);
    reliability = buf;
  }
  return "gates_before=" + std::to_string(report.gates_before) + "\n" +
         "gates_after=" + std::to_string(report.gates_after) + "\n" +
         "swaps_added=" + std::to_string(report.swaps_added) + "\n" +
         "direction_fixes=" + std::to_string(report.direction_fixes) + "\n" +
         "depth_cycles=" + std::to_string(report.depth_cycles) + "\n" + "reliability=" + reliability + "\n";
}

} // namespace qcmap
