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

#include <algorithm>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace qcmap::fixtures {

inline std::string source_path(const std::string& relative) {
  return std::string(QCMAP_SOURCE_DIR) + "/" + relative;
}

inline const Device& qx4() {
  static const Device d = load_device_file(source_path("devices/ibm_qx4.dev"));
  return d;
}

inline const Device& surface17() {
  static const Device d = load_device_file(source_path("devices/surface17.dev"));
  return d;
}

/// Mixed-kind random circuit; measurements, when present, close each line.
inline Circuit random_circuit(std::mt19937_64& rng, int qubits, int gate_count, bool with_measure = false) {
  static constexpr GateKind kinds[] = {GateKind::H,  GateKind::X,   GateKind::Y,  GateKind::Z,    GateKind::S,
                                       GateKind::SDG, GateKind::T, GateKind::TDG, GateKind::RX, GateKind::RY,
                                       GateKind::RZ, GateKind::U3, GateKind::CNOT, GateKind::CZ, GateKind::SWAP,
                                       GateKind::CNOT, GateKind::CNOT, GateKind::CZ};
  std::uniform_int_distribution<std::size_t> pick_kind(0, std::size(kinds) - 1);
  std::uniform_int_distribution<int> pick_qubit(0, qubits - 1);
  std::uniform_real_distribution<double> angle(-3.2, 3.2);
  Circuit c(qubits);
  for (int k = 0; k < gate_count; ++k) {
    GateKind kind = kinds[pick_kind(rng)];
    while (qubits < 2 && arity(kind) == 2) {
      kind = kinds[pick_kind(rng)];
    }
    std::vector<Qubit> ops{pick_qubit(rng)};
    if (arity(kind) == 2) {
      int b = pick_qubit(rng);
      while (b == ops[0]) {
        b = pick_qubit(rng);
      }
      ops.push_back(b);
    }
    std::vector<double> params;
    for (int p = 0; p < param_count(kind); ++p) {
      params.push_back(angle(rng));
    }
    c.add(Gate(kind, ops, params));
  }
  if (with_measure) {
    for (int q = 0; q < qubits; ++q) {
      if (rng() % 2) {
        c.add(gates::measure(q));
      }
    }
  }
  return c;
}

/// Random circuit with only CNOT/CZ and some one-qubit gates, at most
/// `max_two_qubit` two-qubit gates.
inline Circuit random_small_circuit(std::mt19937_64& rng, int qubits, int max_two_qubit) {
  std::uniform_int_distribution<int> pick_qubit(0, qubits - 1);
  std::uniform_int_distribution<int> count(1, max_two_qubit);
  Circuit c(qubits);
  const int two = count(rng);
  for (int k = 0; k < two; ++k) {
    if (rng() % 3 == 0) {
      c.add(rng() % 2 ? gates::h(pick_qubit(rng)) : gates::t(pick_qubit(rng)));
    }
    const int a = pick_qubit(rng);
    int b = pick_qubit(rng);
    while (b == a) {
      b = pick_qubit(rng);
    }
    c.add(gates::cnot(a, b));
  }
  return c;
}

/// Predecessors by scanning qubit lines, written without the library graph.
inline std::vector<std::vector<std::size_t>> line_predecessors(const Circuit& c) {
  std::vector<std::vector<std::size_t>> preds(c.size());
  std::vector<long> last(static_cast<std::size_t>(c.qubit_count()), -1);
  for (std::size_t k = 0; k < c.size(); ++k) {
    for (const int q : c[k].operands) {
      if (last[q] >= 0 && std::find(preds[k].begin(), preds[k].end(), std::size_t(last[q])) == preds[k].end()) {
        preds[k].push_back(static_cast<std::size_t>(last[q]));
      }
      last[q] = static_cast<long>(k);
    }
  }
  return preds;
}

/// Duration-weighted longest path through the line-order DAG.
inline int critical_path(const Circuit& c, const Device& d) {
  const auto preds = line_predecessors(c);
  std::vector<int> finish(c.size(), 0);
  int best = 0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    int start = 0;
    for (const auto p : preds[k]) {
      start = std::max(start, finish[p]);
    }
    finish[k] = start + d.duration(c[k].kind);
    best = std::max(best, finish[k]);
  }
  return best;
}

/// Does this SWAP sequence let every gate run, executing gates eagerly
/// whenever their predecessors are done and operands are adjacent?
inline bool swap_sequence_works(const Circuit& c, const Device& d, std::vector<int> slots,
                                const std::vector<std::pair<int, int>>& swaps) {
  const auto preds = line_predecessors(c);
  std::vector<bool> done(c.size(), false);
  auto where = [&](int program) {
    return static_cast<int>(std::find(slots.begin(), slots.end(), program) - slots.begin());
  };
  auto drain = [&] {
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (done[k] || std::any_of(preds[k].begin(), preds[k].end(), [&](std::size_t p) { return !done[p]; })) {
          continue;
        }
        const auto& g = c[k];
        if (g.operands.size() == 2 && !d.adjacent(where(g.operands[0]), where(g.operands[1]))) {
          continue;
        }
        done[k] = true;
        progress = true;
      }
    }
  };
  drain();
  for (const auto& [i, j] : swaps) {
    std::swap(slots[i], slots[j]);
    drain();
  }
  return std::all_of(done.begin(), done.end(), [](bool b) { return b; });
}

/// Fewest SWAPs that route `c`, by breadth-first enumeration of every SWAP
/// sequence up to `max_len`. Returns -1 if none works.
inline int brute_force_min_swaps(const Circuit& c, const Device& d, const Placement& initial, int max_len) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < d.qubit_count(); ++i) {
    for (int j = i + 1; j < d.qubit_count(); ++j) {
      if (d.adjacent(i, j)) {
        edges.emplace_back(i, j);
      }
    }
  }
  std::deque<std::vector<std::pair<int, int>>> queue{{}};
  while (!queue.empty()) {
    auto seq = std::move(queue.front());
    queue.pop_front();
    if (swap_sequence_works(c, d, initial.slots(), seq)) {
      return static_cast<int>(seq.size());
    }
    if (static_cast<int>(seq.size()) == max_len) {
      continue;
    }
    for (const auto& e : edges) {
      auto next = seq;
      next.push_back(e);
      queue.push_back(std::move(next));
    }
  }
  return -1;
}

} // namespace qcmap::fixtures
