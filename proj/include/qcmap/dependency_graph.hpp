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

#include <cstddef>
#include <utility>
#include <vector>

namespace qcmap {

enum class NodeStatus { Scheduled, Pending, Frontier };

/// Gate dependency DAG under strict qubit-line order: each gate depends on
/// the most recent earlier gate touching each of its qubits.
///
/// Nodes are gate indices of the source circuit. Frontier is derived: a
/// pending node whose predecessors are all scheduled.
class DependencyGraph {
public:
  DependencyGraph() = default;
  explicit DependencyGraph(const Circuit& circuit);

  [[nodiscard]] std::size_t size() const noexcept { return preds_.size(); }
  [[nodiscard]] const std::vector<std::size_t>& predecessors(std::size_t node) const { return preds_[node]; }
  [[nodiscard]] const std::vector<std::size_t>& successors(std::size_t node) const { return succs_[node]; }
  [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  [[nodiscard]] NodeStatus status(std::size_t node) const;
  [[nodiscard]] bool is_scheduled(std::size_t node) const { return scheduled_[node]; }
  [[nodiscard]] std::size_t scheduled_count() const noexcept { return scheduled_count_; }

  /// Frontier nodes in increasing index order.
  [[nodiscard]] std::vector<std::size_t> frontier() const;

  /// Throws NotSchedulable unless `node` is in the frontier.
  void mark_scheduled(std::size_t node);

private:
  std::vector<std::vector<std::size_t>> preds_;
  std::vector<std::vector<std::size_t>> succs_;
  std::vector<bool> scheduled_;
  std::vector<std::size_t> waiting_on_;
  std::size_t scheduled_count_ = 0;
};

DependencyGraph build_dependency_graph(const Circuit& circuit);

inline std::vector<std::size_t> frontier(const DependencyGraph& graph) { return graph.frontier(); }

} // namespace qcmap
