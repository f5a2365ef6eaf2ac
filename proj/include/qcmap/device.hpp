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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qcmap {

enum class Coupling { No, YesSymmetric, YesIToJOnly, YesJToIOnly };

/// Coupling-graph edge; when `directed` only from -> to is allowed.
struct Edge {
  int from = 0;
  int to = 0;
  bool directed = false;

  friend bool operator==(const Edge&, const Edge&) = default;
};

enum class ChannelScope { OneQubit, TwoQubit };

/// Shared control instrument (waveform generator) driving several qubits.
struct ControlChannel {
  std::string id;
  std::vector<int> qubits; // sorted
  ChannelScope scope = ChannelScope::OneQubit;

  [[nodiscard]] bool covers(int q) const;
  [[nodiscard]] bool applies_to(const Gate& gate) const;

  friend bool operator==(const ControlChannel&, const ControlChannel&) = default;
};

/// Immutable hardware description plus precomputed graph queries.
class Device {
public:
  struct Spec {
    std::string name;
    int qubit_count = 0;
    std::vector<Edge> edges;
    std::set<GateKind> native_1q;                   // device-wide
    std::map<int, std::set<GateKind>> native_1q_overrides; // per physical qubit
    GateKind native_2q = GateKind::CNOT;
    bool symmetric_2q = true;
    std::map<GateKind, int> durations;              // empty => every gate takes 1
    std::map<GateKind, double> error_rates;
    std::map<std::pair<int, int>, double> edge_error_rates; // key (min, max)
    std::vector<ControlChannel> channels;
    std::vector<bool> measurable;                   // empty => all measurable

    friend bool operator==(const Spec&, const Spec&) = default;
  };

  /// Validates every invariant; throws DisconnectedGraph, MissingDuration
  /// or Error on violation.
  explicit Device(Spec spec);

  [[nodiscard]] const std::string& name() const noexcept { return spec_.name; }
  [[nodiscard]] int qubit_count() const noexcept { return spec_.qubit_count; }
  [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return spec_.edges; }
  [[nodiscard]] const Spec& spec() const noexcept { return spec_; }

  [[nodiscard]] Coupling are_coupled(int i, int j) const;
  /// True when a 2-qubit gate on (i, j) is possible in some orientation.
  [[nodiscard]] bool adjacent(int i, int j) const { return are_coupled(i, j) != Coupling::No; }
  /// True when native_2q with operand order (control, target) is allowed.
  [[nodiscard]] bool orientation_allowed(int control, int target) const;

  [[nodiscard]] int distance(int i, int j) const;
  [[nodiscard]] std::vector<int> shortest_path(int i, int j) const;
  [[nodiscard]] const std::vector<int>& neighbors(int q) const { return neighbors_.at(q); }
  [[nodiscard]] int degree(int q) const { return static_cast<int>(neighbors_.at(q).size()); }
  /// Undirected skeleton edges as (min, max), sorted lexicographically.
  [[nodiscard]] const std::vector<std::pair<int, int>>& skeleton() const noexcept { return skeleton_; }

  [[nodiscard]] const std::set<GateKind>& native_1q(int q) const;
  [[nodiscard]] GateKind native_2q() const noexcept { return spec_.native_2q; }
  [[nodiscard]] bool symmetric_2q() const noexcept { return spec_.symmetric_2q; }
  [[nodiscard]] bool is_measurable(int q) const;
  /// Kind is in the native set of every operand (MEASURE: measurable qubit).
  [[nodiscard]] bool is_native(const Gate& gate) const;
  /// All gate kinds usable on physical qubit q.
  [[nodiscard]] std::set<GateKind> native_kinds(int q) const;

  /// Duration in clock cycles, normalized by the GCD of all native durations.
  [[nodiscard]] int duration(GateKind kind) const;
  [[nodiscard]] bool has_error_data() const noexcept;
  /// Error probability of `gate` (edge override first, then kind), or nullopt.
  [[nodiscard]] std::optional<double> error_rate(const Gate& gate) const;

  [[nodiscard]] const std::vector<ControlChannel>& channels() const noexcept { return spec_.channels; }

  friend bool operator==(const Device& a, const Device& b) { return a.spec_ == b.spec_; }

private:
  void check_index(int q) const;

  Spec spec_;
  std::vector<std::vector<Coupling>> coupling_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<std::vector<int>> dist_;
  std::vector<std::pair<int, int>> skeleton_;
  int cycle_ = 1;
};

Device load_device(std::string_view text);
Device load_device_file(const std::string& path);
std::string serialize_device(const Device& device);

inline Coupling are_coupled(const Device& d, int i, int j) { return d.are_coupled(i, j); }
inline int distance(const Device& d, int i, int j) { return d.distance(i, j); }
inline std::vector<int> shortest_path(const Device& d, int i, int j) { return d.shortest_path(i, j); }

/// Two gates running in overlapping cycles on distinct qubits conflict when a
/// channel of matching scope covers a qubit of each and they are not the same
/// operation (identical kind and parameters broadcast on one waveform).
bool channel_conflict(const Device& device, const Gate& a, const Gate& b);

} // namespace qcmap
