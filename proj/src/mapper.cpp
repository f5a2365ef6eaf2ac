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

#include "qcmap/mapper.hpp"

#include "qcmap/decomposer.hpp"
#include "qcmap/dependency_graph.hpp"
#include "qcmap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <tuple>

namespace qcmap {

Placement::Placement(std::vector<int> slots) : slots_(std::move(slots)) {
  int max_program = -1;
  for (const int p : slots_) {
    if (p < kFree) {
      throw Error("placement entries must be program indices or FREE");
    }
    max_program = std::max(max_program, p);
  }
  inverse_.assign(static_cast<std::size_t>(max_program + 1), kFree);
  for (int k = 0; k < static_cast<int>(slots_.size()); ++k) {
    const int p = slots_[k];
    if (p == kFree) {
      continue;
    }
    if (inverse_[p] != kFree) {
      throw Error("program qubit " + std::to_string(p) + " placed twice");
    }
    inverse_[p] = k;
  }
}

Placement Placement::identity(int program_qubits, int physical_qubits) {
  if (program_qubits > physical_qubits) {
    throw TooManyQubits(program_qubits, physical_qubits);
  }
  std::vector<int> slots(static_cast<std::size_t>(physical_qubits), kFree);
  for (int k = 0; k < program_qubits; ++k) {
    slots[k] = k;
  }
  return Placement(std::move(slots));
}

int Placement::physical_of(int program) const {
  if (program < 0 || program >= static_cast<int>(inverse_.size())) {
    return kFree;
  }
  return inverse_[program];
}

int Placement::program_count() const noexcept {
  return static_cast<int>(std::count_if(slots_.begin(), slots_.end(), [](int p) { return p != kFree; }));
}

void Placement::swap_slots(int i, int j) {
  std::swap(slots_.at(i), slots_.at(j));
  if (slots_[i] != kFree) {
    inverse_[slots_[i]] = i;
  }
  if (slots_[j] != kFree) {
    inverse_[slots_[j]] = j;
  }
}

std::string Placement::to_string() const {
  std::string out = "[";
  for (std::size_t k = 0; k < slots_.size(); ++k) {
    if (k > 0) {
      out += ",";
    }
    out += slots_[k] == kFree ? std::string("FREE") : std::to_string(slots_[k]);
  }
  return out + "]";
}

Placement apply_swap(const Placement& placement, int i, int j, const Device& device) {
  if (!device.adjacent(i, j)) {
    throw NotCoupled(i, j);
  }
  Placement out = placement;
  out.swap_slots(i, j);
  return out;
}

Placement initial_placement(const Circuit& circuit, const Device& device, PlacerStrategy strategy) {
  const int n = circuit.qubit_count();
  const int m = device.qubit_count();
  if (n > m) {
    throw TooManyQubits(n, m);
  }
  if (strategy == PlacerStrategy::Identity) {
    return Placement::identity(n, m);
  }

  // Interaction counts over unordered program pairs.
  std::map<std::pair<int, int>, int> counts;
  for (const auto& g : circuit.gates()) {
    if (g.is_two_qubit()) {
      const auto [a, b] = std::minmax(g.operands[0], g.operands[1]);
      ++counts[{a, b}];
    }
  }
  std::vector<std::tuple<int, int, int>> pairs; // (-count, a, b)
  for (const auto& [ab, cnt] : counts) {
    pairs.emplace_back(-cnt, ab.first, ab.second);
  }
  std::sort(pairs.begin(), pairs.end());

  // Physical edges ranked by degree sum, then lowest index.
  std::vector<std::tuple<int, int, int>> edges; // (-degree sum, i, j)
  for (const auto& [i, j] : device.skeleton()) {
    edges.emplace_back(-(device.degree(i) + device.degree(j)), i, j);
  }
  std::sort(edges.begin(), edges.end());

  std::vector<int> slots(static_cast<std::size_t>(m), Placement::kFree);
  std::vector<int> where(static_cast<std::size_t>(n), Placement::kFree);
  auto place = [&](int program, int physical) {
    slots[physical] = program;
    where[program] = physical;
  };

  for (const auto& [neg, a, b] : pairs) {
    const bool a_placed = where[a] != Placement::kFree;
    const bool b_placed = where[b] != Placement::kFree;
    if (a_placed && b_placed) {
      continue;
    }
    if (!a_placed && !b_placed) {
      for (const auto& [deg, i, j] : edges) {
        if (slots[i] == Placement::kFree && slots[j] == Placement::kFree) {
          place(a, i);
          place(b, j);
          break;
        }
      }
      continue;
    }
    const int anchor = a_placed ? where[a] : where[b];
    const int loose = a_placed ? b : a;
    int best = -1;
    for (const int nb : device.neighbors(anchor)) {
      if (slots[nb] == Placement::kFree && (best < 0 || device.degree(nb) > device.degree(best))) {
        best = nb;
      }
    }
    if (best >= 0) {
      place(loose, best);
    }
  }
  for (int program = 0; program < n; ++program) {
    if (where[program] != Placement::kFree) {
      continue;
    }
    for (int k = 0; k < m; ++k) {
      if (slots[k] == Placement::kFree) {
        place(program, k);
        break;
      }
    }
  }
  return Placement(std::move(slots));
}

void RouterConfig::validate() const {
  if (!(w0 > 0.0)) {
    throw Error("lookahead weight w0 must be positive");
  }
  if (!(w1 >= 0.0)) {
    throw Error("lookahead weight w1 must be non-negative");
  }
  if (window <= 0 || exact_max_qubits <= 0 || exact_max_two_qubit_gates <= 0) {
    throw Error("router limits must be positive");
  }
  if (exact_max_two_qubit_gates > 63) {
    throw Error("exact router supports at most 63 two-qubit gates");
  }
}

std::vector<Gate> fix_direction(const Gate& gate, const Device& device, std::size_t& direction_fixes) {
  const int c = gate.operands.at(0);
  const int t = gate.operands.at(1);
  if (!device.adjacent(c, t)) {
    throw NotCoupled(c, t);
  }
  if (device.symmetric_2q() || gate.kind != device.native_2q() || device.orientation_allowed(c, t)) {
    return {gate};
  }
  if (gate.kind == GateKind::CNOT) {
    ++direction_fixes;
    return reverse_cnot(c, t);
  }
  if (gate.kind == GateKind::CZ || gate.kind == GateKind::SWAP) {
    return {Gate(gate.kind, {t, c})};
  }
  return {gate};
}

std::vector<std::vector<double>> routing_distances(const Device& device, CostMode mode) {
  const int n = device.qubit_count();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  const bool weighted = mode == CostMode::Reliability && device.has_error_data();
  for (int i = 0; i < n; ++i) {
    d[i][i] = 0.0;
  }
  for (const auto& [i, j] : device.skeleton()) {
    double w = 1.0;
    if (weighted) {
      const auto eps = device.error_rate(Gate(device.native_2q(), {i, j})).value_or(0.0);
      // A SWAP costs three two-qubit gates; the epsilon keeps perfect edges
      // from becoming free moves.
      w = -3.0 * std::log1p(-eps) + 1e-6;
    }
    d[i][j] = d[j][i] = w;
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
  }
  return d;
}

namespace {

class Emitter {
public:
  Emitter(const Device& device, const Placement& initial)
      : device_(device), placement_(initial), out_(device.qubit_count()) {}

  [[nodiscard]] const Placement& placement() const { return placement_; }
  [[nodiscard]] std::size_t swaps() const { return swaps_; }

  [[nodiscard]] std::pair<int, int> physical_pair(const Gate& g) const {
    return {placement_.physical_of(g.operands[0]), placement_.physical_of(g.operands[1])};
  }

  [[nodiscard]] bool executable(const Gate& g) const {
    if (!g.is_two_qubit()) {
      return true;
    }
    const auto [a, b] = physical_pair(g);
    return device_.adjacent(a, b);
  }

  void emit(const Gate& g) {
    Gate phys = g;
    for (auto& q : phys.operands) {
      q = placement_.physical_of(q);
    }
    if (phys.is_two_qubit()) {
      for (auto& part : fix_direction(phys, device_, fixes_)) {
        out_.add(std::move(part));
      }
    } else {
      out_.add(std::move(phys));
    }
  }

  void swap(int i, int j) {
    out_.add(gates::swap(i, j));
    placement_.swap_slots(i, j);
    ++swaps_;
  }

  RoutedResult finish(const Placement& initial) && {
    return {std::move(out_), initial, placement_, swaps_, fixes_};
  }

private:
  const Device& device_;
  Placement placement_;
  Circuit out_;
  std::size_t swaps_ = 0;
  std::size_t fixes_ = 0;
};

RoutedResult route_naive(const Circuit& circuit, const Device& device, const Placement& initial) {
  Emitter em(device, initial);
  for (const auto& g : circuit.gates()) {
    if (!em.executable(g)) {
      const auto [a, b] = em.physical_pair(g);
      const auto path = device.shortest_path(a, b);
      for (std::size_t k = 0; k + 2 < path.size(); ++k) {
        em.swap(path[k], path[k + 1]);
      }
    }
    em.emit(g);
  }
  return std::move(em).finish(initial);
}

// Executes every frontier gate that can run under the current placement,
// repeating until nothing changes. Returns true if anything ran.
bool drain_frontier(const Circuit& circuit, DependencyGraph& dag, Emitter& em) {
  bool any = false;
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto node : dag.frontier()) {
      if (em.executable(circuit[node])) {
        em.emit(circuit[node]);
        dag.mark_scheduled(node);
        progress = true;
        any = true;
      }
    }
  }
  return any;
}

RoutedResult route_lookahead(const Circuit& circuit, const Device& device, const Placement& initial,
                             const RouterConfig& config) {
  const auto dist = routing_distances(device, config.cost);
  int diameter = 0;
  for (int i = 0; i < device.qubit_count(); ++i) {
    for (int j = 0; j < device.qubit_count(); ++j) {
      diameter = std::max(diameter, device.distance(i, j));
    }
  }
  const int stall_limit = 2 * diameter + 2;

  DependencyGraph dag(circuit);
  Emitter em(device, initial);
  std::optional<std::pair<int, int>> last_swap;
  int stalled = 0;

  auto gate_distance = [&](const Gate& g, int si, int sj) {
    auto [a, b] = em.physical_pair(g);
    auto moved = [&](int q) { return q == si ? sj : (q == sj ? si : q); };
    return dist[moved(a)][moved(b)];
  };

  while (dag.scheduled_count() < dag.size()) {
    if (drain_frontier(circuit, dag, em)) {
      stalled = 0;
      last_swap.reset();
      continue;
    }
    const auto front = dag.frontier(); // all blocked two-qubit gates

    if (stalled >= stall_limit) {
      // Force progress on the oldest blocked gate along a shortest path.
      const auto [a, b] = em.physical_pair(circuit[front.front()]);
      const auto path = device.shortest_path(a, b);
      em.swap(path[0], path[1]);
      last_swap = std::minmax(path[0], path[1]);
      continue;
    }

    std::vector<std::size_t> window;
    for (std::size_t node = 0; node < circuit.size() && static_cast<int>(window.size()) < config.window; ++node) {
      if (!dag.is_scheduled(node) && circuit[node].is_two_qubit() &&
          !std::binary_search(front.begin(), front.end(), node)) {
        window.push_back(node);
      }
    }

    std::vector<bool> active(static_cast<std::size_t>(device.qubit_count()), false);
    for (const auto node : front) {
      const auto [a, b] = em.physical_pair(circuit[node]);
      active[a] = active[b] = true;
    }

    std::optional<std::pair<int, int>> best;
    double best_cost = 0.0;
    for (const auto& [i, j] : device.skeleton()) {
      if (!active[i] && !active[j]) {
        continue;
      }
      if (last_swap && *last_swap == std::pair{i, j}) {
        continue;
      }
      // In reliability mode the SWAP's own edge is part of the price.
      double cost = config.cost == CostMode::Reliability ? config.w0 * dist[i][j] : 0.0;
      for (const auto node : front) {
        cost += config.w0 * (gate_distance(circuit[node], i, j) - gate_distance(circuit[node], -1, -1));
      }
      for (const auto node : window) {
        cost += config.w1 * (gate_distance(circuit[node], i, j) - gate_distance(circuit[node], -1, -1));
      }
      if (!best || cost < best_cost - 1e-12) {
        best = {i, j};
        best_cost = cost;
      }
    }
    em.swap(best->first, best->second);
    last_swap = best;
    ++stalled;
  }
  return std::move(em).finish(initial);
}

RoutedResult route_exact(const Circuit& circuit, const Device& device, const Placement& initial,
                         const RouterConfig& config) {
  if (circuit.qubit_count() > config.exact_max_qubits) {
    throw ExactLimitExceeded("exact router: " + std::to_string(circuit.qubit_count()) +
                             " program qubits exceed the limit of " + std::to_string(config.exact_max_qubits));
  }
  if (static_cast<int>(circuit.two_qubit_gate_count()) > config.exact_max_two_qubit_gates) {
    throw ExactLimitExceeded("exact router: " + std::to_string(circuit.two_qubit_gate_count()) +
                             " two-qubit gates exceed the limit of " +
                             std::to_string(config.exact_max_two_qubit_gates));
  }

  // Two-qubit gates and, for each, the two-qubit gates it transitively waits on.
  const DependencyGraph dag(circuit);
  std::vector<std::size_t> two_q;
  std::vector<int> bit_of(circuit.size(), -1);
  for (std::size_t node = 0; node < circuit.size(); ++node) {
    if (circuit[node].is_two_qubit()) {
      bit_of[node] = static_cast<int>(two_q.size());
      two_q.push_back(node);
    }
  }
  std::vector<std::uint64_t> ancestors(circuit.size(), 0);
  for (std::size_t node = 0; node < circuit.size(); ++node) {
    for (const auto p : dag.predecessors(node)) {
      ancestors[node] |= ancestors[p];
      if (bit_of[p] >= 0) {
        ancestors[node] |= std::uint64_t{1} << bit_of[p];
      }
    }
  }
  const std::uint64_t goal = two_q.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << two_q.size()) - 1;

  using State = std::pair<std::uint64_t, std::vector<int>>; // executed set, slots
  auto close = [&](std::uint64_t done, const Placement& p) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t k = 0; k < two_q.size(); ++k) {
        const std::uint64_t bit = std::uint64_t{1} << k;
        if ((done & bit) || (ancestors[two_q[k]] & ~done)) {
          continue;
        }
        const auto& g = circuit[two_q[k]];
        if (device.adjacent(p.physical_of(g.operands[0]), p.physical_of(g.operands[1]))) {
          done |= bit;
          progress = true;
        }
      }
    }
    return done;
  };

  struct Visit {
    std::size_t cost;
    std::optional<State> parent;
    std::pair<int, int> swap;
  };
  std::map<State, Visit> visited;
  // (cost, insertion order) keeps expansion order deterministic.
  using Entry = std::tuple<std::size_t, std::size_t, State>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::size_t order = 0;

  const State start{close(0, initial), initial.slots()};
  visited.emplace(start, Visit{0, std::nullopt, {-1, -1}});
  open.emplace(0, order++, start);
  std::optional<State> found;
  while (!open.empty()) {
    auto [cost, seq, state] = open.top();
    open.pop();
    if (visited.at(state).cost < cost) {
      continue;
    }
    if (state.first == goal) {
      found = state;
      break;
    }
    for (const auto& [i, j] : device.skeleton()) {
      Placement next(state.second);
      if (next.program_at(i) == Placement::kFree && next.program_at(j) == Placement::kFree) {
        continue;
      }
      next.swap_slots(i, j);
      State succ{close(state.first, next), next.slots()};
      auto it = visited.find(succ);
      if (it == visited.end() || it->second.cost > cost + 1) {
        visited.insert_or_assign(succ, Visit{cost + 1, state, {i, j}});
        open.emplace(cost + 1, order++, std::move(succ));
      }
    }
  }
  if (!found) {
    throw Error("exact router found no solution");
  }

  std::vector<std::pair<int, int>> swaps;
  for (State s = *found; visited.at(s).parent; s = *visited.at(s).parent) {
    swaps.push_back(visited.at(s).swap);
  }
  std::reverse(swaps.begin(), swaps.end());

  DependencyGraph replay(circuit);
  Emitter em(device, initial);
  drain_frontier(circuit, replay, em);
  for (const auto& [i, j] : swaps) {
    em.swap(i, j);
    drain_frontier(circuit, replay, em);
  }
  if (replay.scheduled_count() != replay.size()) {
    throw Error("exact router replay did not complete");
  }
  return std::move(em).finish(initial);
}

} // namespace

RoutedResult route(const Circuit& circuit, const Device& device, const Placement& initial,
                   const RouterConfig& config) {
  config.validate();
  if (initial.physical_count() != device.qubit_count()) {
    throw Error("placement size " + std::to_string(initial.physical_count()) + " does not match device '" +
                device.name() + "'");
  }
  for (int q = 0; q < circuit.qubit_count(); ++q) {
    if (initial.physical_of(q) == Placement::kFree) {
      throw Error("program qubit " + std::to_string(q) + " has no physical qubit");
    }
  }
  // Measurements are terminal, so they move to the end; no SWAP may then pass
  // through a measured qubit.
  Circuit body(circuit.qubit_count());
  std::vector<Gate> measures;
  for (const auto& g : circuit.gates()) {
    if (g.kind == GateKind::MEASURE) {
      measures.push_back(g);
    } else {
      body.add(g);
    }
  }

  RoutedResult result;
  switch (config.strategy) {
  case RouterStrategy::Naive:
    result = route_naive(body, device, initial);
    break;
  case RouterStrategy::Lookahead: {
    result = route_lookahead(body, device, initial, config);
    auto naive = route_naive(body, device, initial);
    if (naive.swaps_added < result.swaps_added) {
      result = std::move(naive);
    }
    break;
  }
  case RouterStrategy::Exact:
    result = route_exact(body, device, initial, config);
    break;
  }
  for (const auto& m : measures) {
    result.circuit.add(gates::measure(result.final_placement.physical_of(m.operands[0])));
  }
  return result;
}

} // namespace qcmap
