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

#include "qcmap/device.hpp"

#include "qcmap/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>

namespace qcmap {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) {
    out.push_back(tok);
  }
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    return std::nullopt;
  }
  return v;
}

std::optional<double> parse_real(std::string_view s) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    return std::nullopt;
  }
  return v;
}

// "q3" or "3"
std::optional<int> parse_qubit_token(std::string_view s) {
  if (!s.empty() && (s.front() == 'q' || s.front() == 'Q')) {
    s.remove_prefix(1);
  }
  auto v = parse_int(s);
  if (!v || *v < 0) {
    return std::nullopt;
  }
  return v;
}

std::pair<int, int> key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

bool ControlChannel::covers(int q) const { return std::binary_search(qubits.begin(), qubits.end(), q); }

bool ControlChannel::applies_to(const Gate& gate) const {
  return (scope == ChannelScope::OneQubit) == (arity(gate.kind) == 1);
}

Device::Device(Spec spec) : spec_(std::move(spec)) {
  const int n = spec_.qubit_count;
  if (n <= 0) {
    throw Error("device must have at least one qubit");
  }
  if (spec_.measurable.empty()) {
    spec_.measurable.assign(static_cast<std::size_t>(n), true);
  }
  if (static_cast<int>(spec_.measurable.size()) != n) {
    throw Error("measurable list does not match qubit count");
  }
  if (arity(spec_.native_2q) != 2) {
    throw Error("native two-qubit gate must have arity 2");
  }
  for (const auto k : spec_.native_1q) {
    if (arity(k) != 1 || k == GateKind::MEASURE) {
      throw Error("native one-qubit set contains '" + std::string(mnemonic(k)) + "'");
    }
  }
  for (const auto& [q, kinds] : spec_.native_1q_overrides) {
    check_index(q);
    for (const auto k : kinds) {
      if (arity(k) != 1 || k == GateKind::MEASURE) {
        throw Error("native one-qubit set contains '" + std::string(mnemonic(k)) + "'");
      }
    }
  }

  coupling_.assign(n, std::vector<Coupling>(n, Coupling::No));
  neighbors_.assign(n, {});
  for (const auto& e : spec_.edges) {
    check_index(e.from);
    check_index(e.to);
    if (e.from == e.to) {
      throw Error("self-loop on q" + std::to_string(e.from));
    }
    if (coupling_[e.from][e.to] != Coupling::No) {
      throw Error("duplicate edge q" + std::to_string(e.from) + " q" + std::to_string(e.to));
    }
    if (e.directed) {
      coupling_[e.from][e.to] = Coupling::YesIToJOnly;
      coupling_[e.to][e.from] = Coupling::YesJToIOnly;
    } else {
      coupling_[e.from][e.to] = Coupling::YesSymmetric;
      coupling_[e.to][e.from] = Coupling::YesSymmetric;
    }
    neighbors_[e.from].push_back(e.to);
    neighbors_[e.to].push_back(e.from);
    skeleton_.push_back(key(e.from, e.to));
  }
  for (auto& nb : neighbors_) {
    std::sort(nb.begin(), nb.end());
  }
  std::sort(skeleton_.begin(), skeleton_.end());

  dist_.assign(n, std::vector<int>(n, -1));
  for (int src = 0; src < n; ++src) {
    auto& d = dist_[src];
    std::queue<int> frontier;
    d[src] = 0;
    frontier.push(src);
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop();
      for (const int v : neighbors_[u]) {
        if (d[v] < 0) {
          d[v] = d[u] + 1;
          frontier.push(v);
        }
      }
    }
    if (std::find(d.begin(), d.end(), -1) != d.end()) {
      throw DisconnectedGraph();
    }
  }

  for (const auto& [kind, p] : spec_.error_rates) {
    if (!(p >= 0.0 && p < 1.0)) {
      throw Error("error rate for '" + std::string(mnemonic(kind)) + "' outside [0, 1)");
    }
  }
  for (const auto& [edge, p] : spec_.edge_error_rates) {
    if (coupling_.at(edge.first).at(edge.second) == Coupling::No) {
      throw Error("error rate given for uncoupled pair");
    }
    if (!(p >= 0.0 && p < 1.0)) {
      throw Error("edge error rate outside [0, 1)");
    }
  }

  for (auto& ch : spec_.channels) {
    if (ch.qubits.empty()) {
      throw Error("channel '" + ch.id + "' has no qubits");
    }
    std::sort(ch.qubits.begin(), ch.qubits.end());
    ch.qubits.erase(std::unique(ch.qubits.begin(), ch.qubits.end()), ch.qubits.end());
    for (const int q : ch.qubits) {
      check_index(q);
    }
  }

  if (!spec_.durations.empty()) {
    std::set<GateKind> required = spec_.native_1q;
    for (const auto& [q, kinds] : spec_.native_1q_overrides) {
      required.insert(kinds.begin(), kinds.end());
    }
    required.insert(spec_.native_2q);
    if (std::find(spec_.measurable.begin(), spec_.measurable.end(), true) != spec_.measurable.end()) {
      required.insert(GateKind::MEASURE);
    }
    for (const auto k : required) {
      if (!spec_.durations.contains(k)) {
        throw MissingDuration(std::string(mnemonic(k)));
      }
    }
    int g = 0;
    for (const auto& [kind, cycles] : spec_.durations) {
      if (cycles <= 0) {
        throw Error("duration of '" + std::string(mnemonic(kind)) + "' must be positive");
      }
      g = std::gcd(g, cycles);
    }
    cycle_ = g;
  }
}

void Device::check_index(int q) const {
  if (q < 0 || q >= spec_.qubit_count) {
    throw IndexOutOfRange(q, spec_.qubit_count);
  }
}

Coupling Device::are_coupled(int i, int j) const {
  check_index(i);
  check_index(j);
  return coupling_[i][j];
}

bool Device::orientation_allowed(int control, int target) const {
  const auto c = are_coupled(control, target);
  if (c == Coupling::No) {
    return false;
  }
  return spec_.symmetric_2q || c != Coupling::YesJToIOnly;
}

int Device::distance(int i, int j) const {
  check_index(i);
  check_index(j);
  return dist_[i][j];
}

std::vector<int> Device::shortest_path(int i, int j) const {
  check_index(i);
  check_index(j);
  // Walk back from j choosing, at each layer, the lowest-index node one hop
  // closer to i.
  std::vector<int> path{j};
  int v = j;
  while (v != i) {
    for (const int u : neighbors_[v]) { // sorted ascending
      if (dist_[i][u] == dist_[i][v] - 1) {
        v = u;
        break;
      }
    }
    path.push_back(v);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

const std::set<GateKind>& Device::native_1q(int q) const {
  check_index(q);
  if (auto it = spec_.native_1q_overrides.find(q); it != spec_.native_1q_overrides.end()) {
    return it->second;
  }
  return spec_.native_1q;
}

bool Device::is_measurable(int q) const {
  check_index(q);
  return spec_.measurable[q];
}

bool Device::is_native(const Gate& gate) const {
  for (const int q : gate.operands) {
    if (q < 0 || q >= spec_.qubit_count) {
      return false;
    }
  }
  if (gate.kind == GateKind::MEASURE) {
    return is_measurable(gate.operands[0]);
  }
  if (arity(gate.kind) == 2) {
    return gate.kind == spec_.native_2q;
  }
  return native_1q(gate.operands[0]).contains(gate.kind);
}

std::set<GateKind> Device::native_kinds(int q) const {
  std::set<GateKind> kinds = native_1q(q);
  if (!neighbors_[q].empty()) {
    kinds.insert(spec_.native_2q);
  }
  if (is_measurable(q)) {
    kinds.insert(GateKind::MEASURE);
  }
  return kinds;
}

int Device::duration(GateKind kind) const {
  if (spec_.durations.empty()) {
    return 1;
  }
  auto it = spec_.durations.find(kind);
  return it == spec_.durations.end() ? 1 : it->second / cycle_;
}

bool Device::has_error_data() const noexcept {
  return !spec_.error_rates.empty() || !spec_.edge_error_rates.empty();
}

std::optional<double> Device::error_rate(const Gate& gate) const {
  if (gate.operands.size() == 2) {
    auto it = spec_.edge_error_rates.find(key(gate.operands[0], gate.operands[1]));
    if (it != spec_.edge_error_rates.end()) {
      return it->second;
    }
  }
  if (auto it = spec_.error_rates.find(gate.kind); it != spec_.error_rates.end()) {
    return it->second;
  }
  return std::nullopt;
}

Device load_device(std::string_view text) {
  Device::Spec spec;
  std::optional<int> declared_qubits;
  std::set<std::pair<int, int>> seen_edges;
  bool saw_gate2q = false;
  bool saw_measurable = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  auto require_qubits = [&](std::size_t line) {
    if (!declared_qubits) {
      throw SyntaxError(line, "'qubits' must be declared before this statement");
    }
  };
  auto qubit = [&](std::size_t line, std::string_view tok) {
    require_qubits(line);
    auto q = parse_qubit_token(tok);
    if (!q) {
      throw SyntaxError(line, "bad qubit '" + std::string(tok) + "'");
    }
    if (*q >= *declared_qubits) {
      throw SyntaxError(line, "qubit '" + std::string(tok) + "' out of range");
    }
    return *q;
  };
  auto kind_of = [&](std::size_t line, const std::string& name) {
    auto k = gate_kind_from_mnemonic(name);
    if (!k) {
      throw UnknownGateKind(line, name);
    }
    return *k;
  };

  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    auto toks = tokens(line);
    const std::string head = lower(toks[0]);

    if (head == "name") {
      if (toks.size() != 2) {
        throw SyntaxError(line_no, "expected 'name <identifier>'");
      }
      spec.name = toks[1];
    } else if (head == "qubits") {
      auto n = toks.size() == 2 ? parse_int(toks[1]) : std::nullopt;
      if (!n || *n <= 0) {
        throw SyntaxError(line_no, "expected a positive qubit count");
      }
      if (declared_qubits) {
        throw SyntaxError(line_no, "duplicate qubits declaration");
      }
      declared_qubits = *n;
      spec.qubit_count = *n;
    } else if (head == "edge") {
      Edge e;
      if (toks.size() == 4 && (toks[2] == "->" || toks[2] == "--")) {
        e = {qubit(line_no, toks[1]), qubit(line_no, toks[3]), toks[2] == "->"};
      } else if (toks.size() == 3) {
        e = {qubit(line_no, toks[1]), qubit(line_no, toks[2]), false};
      } else {
        throw SyntaxError(line_no, "expected 'edge q<i> -> q<j>' or 'edge q<i> -- q<j>'");
      }
      if (e.from == e.to) {
        throw SyntaxError(line_no, "self-loop edge");
      }
      if (!seen_edges.insert(key(e.from, e.to)).second) {
        throw SyntaxError(line_no, "duplicate edge");
      }
      spec.edges.push_back(e);
    } else if (head == "gate1q") {
      if (toks.size() < 2) {
        throw SyntaxError(line_no, "expected at least one gate kind");
      }
      std::set<GateKind>* target = &spec.native_1q;
      std::size_t first = 1;
      if (toks[1].back() == ':') {
        const int q = qubit(line_no, std::string_view(toks[1]).substr(0, toks[1].size() - 1));
        target = &spec.native_1q_overrides[q];
        target->clear();
        first = 2;
      }
      for (std::size_t i = first; i < toks.size(); ++i) {
        const auto k = kind_of(line_no, toks[i]);
        if (arity(k) != 1 || k == GateKind::MEASURE) {
          throw SyntaxError(line_no, "'" + toks[i] + "' is not a one-qubit unitary gate");
        }
        target->insert(k);
      }
    } else if (head == "gate2q") {
      if (toks.size() != 3) {
        throw SyntaxError(line_no, "expected 'gate2q <kind> directed|symmetric'");
      }
      const auto k = kind_of(line_no, toks[1]);
      if (arity(k) != 2) {
        throw SyntaxError(line_no, "'" + toks[1] + "' is not a two-qubit gate");
      }
      const auto mode = lower(toks[2]);
      if (mode != "directed" && mode != "symmetric") {
        throw SyntaxError(line_no, "expected 'directed' or 'symmetric'");
      }
      spec.native_2q = k;
      spec.symmetric_2q = mode == "symmetric";
      saw_gate2q = true;
    } else if (head == "duration") {
      auto cycles = toks.size() == 3 ? parse_int(toks[2]) : std::nullopt;
      if (!cycles || *cycles <= 0) {
        throw SyntaxError(line_no, "expected 'duration <kind> <positive integer>'");
      }
      spec.durations[kind_of(line_no, toks[1])] = *cycles;
    } else if (head == "error") {
      if (toks.size() != 3 && toks.size() != 5) {
        throw SyntaxError(line_no, "expected 'error <kind> [q<i> q<j>] <probability>'");
      }
      const auto k = kind_of(line_no, toks[1]);
      auto p = parse_real(toks.back());
      if (!p || !(*p >= 0.0 && *p < 1.0)) {
        throw SyntaxError(line_no, "error rate must lie in [0, 1)");
      }
      if (toks.size() == 3) {
        spec.error_rates[k] = *p;
      } else {
        if (arity(k) != 2) {
          throw SyntaxError(line_no, "per-edge error rates apply to two-qubit gates");
        }
        const int a = qubit(line_no, toks[2]);
        const int b = qubit(line_no, toks[3]);
        if (!seen_edges.contains(key(a, b))) {
          throw SyntaxError(line_no, "per-edge error rate on an undeclared edge");
        }
        spec.edge_error_rates[key(a, b)] = *p;
      }
    } else if (head == "channel") {
      if (toks.size() < 4) {
        throw SyntaxError(line_no, "expected 'channel <id> 1q|2q: q<i> ...'");
      }
      ControlChannel ch;
      ch.id = toks[1];
      const auto scope = lower(toks[2]);
      if (scope == "1q:") {
        ch.scope = ChannelScope::OneQubit;
      } else if (scope == "2q:") {
        ch.scope = ChannelScope::TwoQubit;
      } else {
        throw SyntaxError(line_no, "channel scope must be '1q:' or '2q:'");
      }
      for (std::size_t i = 3; i < toks.size(); ++i) {
        ch.qubits.push_back(qubit(line_no, toks[i]));
      }
      for (const auto& other : spec.channels) {
        if (other.id == ch.id) {
          throw SyntaxError(line_no, "duplicate channel id '" + ch.id + "'");
        }
      }
      spec.channels.push_back(std::move(ch));
    } else if (head == "measurable") {
      require_qubits(line_no);
      if (toks.size() < 2) {
        throw SyntaxError(line_no, "expected 'measurable all' or a qubit list");
      }
      saw_measurable = true;
      if (toks.size() == 2 && lower(toks[1]) == "all") {
        spec.measurable.assign(static_cast<std::size_t>(*declared_qubits), true);
      } else if (toks.size() == 2 && lower(toks[1]) == "none") {
        spec.measurable.assign(static_cast<std::size_t>(*declared_qubits), false);
      } else {
        spec.measurable.assign(static_cast<std::size_t>(*declared_qubits), false);
        for (std::size_t i = 1; i < toks.size(); ++i) {
          spec.measurable[qubit(line_no, toks[i])] = true;
        }
      }
    } else {
      throw SyntaxError(line_no, "unknown statement '" + toks[0] + "'");
    }
  }

  if (!declared_qubits) {
    throw SyntaxError(line_no, "missing 'qubits' declaration");
  }
  if (spec.name.empty()) {
    throw SyntaxError(line_no, "missing 'name' declaration");
  }
  if (!saw_gate2q && !spec.edges.empty()) {
    throw SyntaxError(line_no, "missing 'gate2q' declaration");
  }
  if (!saw_measurable) {
    spec.measurable.assign(static_cast<std::size_t>(*declared_qubits), true);
  }
  return Device(std::move(spec));
}

Device load_device_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot read device file '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_device(buffer.str());
}

std::string serialize_device(const Device& device) {
  const auto& s = device.spec();
  std::ostringstream out;
  out << "name " << s.name << "\n";
  out << "qubits " << s.qubit_count << "\n";
  for (const auto& e : s.edges) {
    out << "edge q" << e.from << (e.directed ? " -> q" : " -- q") << e.to << "\n";
  }
  if (!s.native_1q.empty()) {
    out << "gate1q";
    for (const auto k : s.native_1q) {
      out << ' ' << mnemonic(k);
    }
    out << "\n";
  }
  for (const auto& [q, kinds] : s.native_1q_overrides) {
    out << "gate1q q" << q << ":";
    for (const auto k : kinds) {
      out << ' ' << mnemonic(k);
    }
    out << "\n";
  }
  out << "gate2q " << mnemonic(s.native_2q) << (s.symmetric_2q ? " symmetric" : " directed") << "\n";
  for (const auto& [kind, cycles] : s.durations) {
    out << "duration " << mnemonic(kind) << ' ' << cycles << "\n";
  }
  for (const auto& [kind, p] : s.error_rates) {
    out << "error " << mnemonic(kind) << ' ' << format_real(p) << "\n";
  }
  for (const auto& [edge, p] : s.edge_error_rates) {
    out << "error " << mnemonic(s.native_2q) << " q" << edge.first << " q" << edge.second << ' '
        << format_real(p) << "\n";
  }
  for (const auto& ch : s.channels) {
    out << "channel " << ch.id << (ch.scope == ChannelScope::OneQubit ? " 1q:" : " 2q:");
    for (const int q : ch.qubits) {
      out << " q" << q;
    }
    out << "\n";
  }
  if (std::all_of(s.measurable.begin(), s.measurable.end(), [](bool b) { return b; })) {
    out << "measurable all\n";
  } else if (std::any_of(s.measurable.begin(), s.measurable.end(), [](bool b) { return b; })) {
    out << "measurable";
    for (std::size_t q = 0; q < s.measurable.size(); ++q) {
      if (s.measurable[q]) {
        out << " q" << q;
      }
    }
    out << "\n";
  } else {
    out << "measurable none\n";
  }
  return out.str();
}

bool channel_conflict(const Device& device, const Gate& a, const Gate& b) {
  if (a.same_operation(b)) {
    return false;
  }
  for (const auto& ch : device.channels()) {
    if (!ch.applies_to(a) || !ch.applies_to(b)) {
      continue;
    }
    const bool covers_a = std::any_of(a.operands.begin(), a.operands.end(), [&](int q) { return ch.covers(q); });
    const bool covers_b = std::any_of(b.operands.begin(), b.operands.end(), [&](int q) { return ch.covers(q); });
    if (covers_a && covers_b) {
      return true;
    }
  }
  return false;
}

} // namespace qcmap
