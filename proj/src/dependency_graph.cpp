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

#include "qcmap/dependency_graph.hpp"

#include "qcmap/errors.hpp"

#include <algorithm>
#include <limits>

namespace qcmap {

DependencyGraph::DependencyGraph(const Circuit& circuit)
    : preds_(circuit.size()), succs_(circuit.size()), scheduled_(circuit.size(), false),
      waiting_on_(circuit.size(), 0) {
  constexpr auto none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> last(static_cast<std::size_t>(circuit.qubit_count()), none);
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    for (const Qubit q : circuit[i].operands) {
      const auto prev = last[q];
      if (prev != none && std::find(preds_[i].begin(), preds_[i].end(), prev) == preds_[i].end()) {
        preds_[i].push_back(prev);
        succs_[prev].push_back(i);
      }
      last[q] = i;
    }
    std::sort(preds_[i].begin(), preds_[i].end());
    waiting_on_[i] = preds_[i].size();
  }
}

std::vector<std::pair<std::size_t, std::size_t>> DependencyGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < size(); ++i) {
    for (const auto p : preds_[i]) {
      out.emplace_back(p, i);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

NodeStatus DependencyGraph::status(std::size_t node) const {
  if (scheduled_[node]) {
    return NodeStatus::Scheduled;
  }
  return waiting_on_[node] == 0 ? NodeStatus::Frontier : NodeStatus::Pending;
}

std::vector<std::size_t> DependencyGraph::frontier() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!scheduled_[i] && waiting_on_[i] == 0) {
      out.push_back(i);
    }
  }
  return out;
}

void DependencyGraph::mark_scheduled(std::size_t node) {
  if (node >= size() || status(node) != NodeStatus::Frontier) {
    throw NotSchedulable(node);
  }
  scheduled_[node] = true;
  ++scheduled_count_;
  for (const auto s : succs_[node]) {
    --waiting_on_[s];
  }
}

DependencyGraph build_dependency_graph(const Circuit& circuit) { return DependencyGraph(circuit); }

} // namespace qcmap
