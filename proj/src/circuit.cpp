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

#include "qcmap/circuit.hpp"

#include "qcmap/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace qcmap {

namespace {

constexpr std::string_view kMnemonics[] = {
    "h", "x", "y", "z", "s", "sdg", "t", "tdg", "rx", "ry", "rz", "u3", "cnot", "cz", "swap", "measure",
};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    parts.push_back(trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start)));
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  return parts;
}

std::optional<long> parse_integer(std::string_view s) {
  if (s.empty()) {
    return std::nullopt;
  }
  long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    return std::nullopt;
  }
  return value;
}

std::optional<double> parse_double(std::string_view s) {
  if (s.empty()) {
    return std::nullopt;
  }
  if (s.front() == '+') {
    s.remove_prefix(1);
  }
  double value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    return std::nullopt;
  }
  return value;
}

// Accepts a decimal literal or [-]pi[/N] / [-]K*pi[/N].
std::optional<double> parse_angle(std::string_view text) {
  const std::string s = lower(trim(text));
  if (auto v = parse_double(s)) {
    return v;
  }
  std::string_view rest = s;
  double sign = 1.0;
  if (!rest.empty() && rest.front() == '-') {
    sign = -1.0;
    rest.remove_prefix(1);
  }
  double factor = 1.0;
  if (const auto star = rest.find('*'); star != std::string_view::npos) {
    auto k = parse_double(trim(rest.substr(0, star)));
    if (!k) {
      return std::nullopt;
    }
    factor = *k;
    rest = trim(rest.substr(star + 1));
  }
  if (rest.substr(0, 2) != "pi") {
    return std::nullopt;
  }
  rest.remove_prefix(2);
  double divisor = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/') {
      return std::nullopt;
    }
    auto d = parse_double(trim(rest.substr(1)));
    if (!d || *d == 0.0) {
      return std::nullopt;
    }
    divisor = *d;
  }
  return sign * factor * std::numbers::pi / divisor;
}

std::optional<Qubit> parse_qubit(std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || (text.front() != 'q' && text.front() != 'Q')) {
    return std::nullopt;
  }
  text.remove_prefix(1);
  if (!std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); })) {
    return std::nullopt;
  }
  auto v = parse_integer(text);
  if (!v || *v > 1'000'000) {
    return std::nullopt;
  }
  return static_cast<Qubit>(*v);
}

} // namespace

std::string_view mnemonic(GateKind kind) noexcept {
  return kMnemonics[static_cast<std::size_t>(kind)];
}

std::optional<GateKind> gate_kind_from_mnemonic(std::string_view name) {
  const std::string key = lower(name);
  if (key == "cx") {
    return GateKind::CNOT;
  }
  for (std::size_t i = 0; i < kGateKindCount; ++i) {
    if (kMnemonics[i] == key) {
      return static_cast<GateKind>(i);
    }
  }
  return std::nullopt;
}

Gate::Gate(GateKind k, std::vector<Qubit> ops, std::vector<double> ps)
    : kind(k), operands(std::move(ops)), params(std::move(ps)) {}

bool Gate::acts_on(Qubit q) const noexcept {
  return std::find(operands.begin(), operands.end(), q) != operands.end();
}

bool Gate::same_operation(const Gate& other) const noexcept {
  return kind == other.kind && params == other.params;
}

namespace gates {
Gate h(Qubit q) { return {GateKind::H, {q}}; }
Gate x(Qubit q) { return {GateKind::X, {q}}; }
Gate y(Qubit q) { return {GateKind::Y, {q}}; }
Gate z(Qubit q) { return {GateKind::Z, {q}}; }
Gate s(Qubit q) { return {GateKind::S, {q}}; }
Gate sdg(Qubit q) { return {GateKind::SDG, {q}}; }
Gate t(Qubit q) { return {GateKind::T, {q}}; }
Gate tdg(Qubit q) { return {GateKind::TDG, {q}}; }
Gate rx(Qubit q, double theta) { return {GateKind::RX, {q}, {theta}}; }
Gate ry(Qubit q, double theta) { return {GateKind::RY, {q}, {theta}}; }
Gate rz(Qubit q, double theta) { return {GateKind::RZ, {q}, {theta}}; }
Gate u3(Qubit q, double theta, double phi, double lambda) {
  return {GateKind::U3, {q}, {theta, phi, lambda}};
}
Gate cnot(Qubit control, Qubit target) { return {GateKind::CNOT, {control, target}}; }
Gate cz(Qubit a, Qubit b) { return {GateKind::CZ, {a, b}}; }
Gate swap(Qubit a, Qubit b) { return {GateKind::SWAP, {a, b}}; }
Gate measure(Qubit q) { return {GateKind::MEASURE, {q}}; }
} // namespace gates

void validate_gate(const Gate& gate) {
  if (static_cast<int>(gate.operands.size()) != arity(gate.kind)) {
    throw InvalidGate(std::string(mnemonic(gate.kind)) + ": wrong operand count");
  }
  if (static_cast<int>(gate.params.size()) != param_count(gate.kind)) {
    throw InvalidGate(std::string(mnemonic(gate.kind)) + ": wrong parameter count");
  }
  if (gate.operands.size() == 2 && gate.operands[0] == gate.operands[1]) {
    throw InvalidGate(std::string(mnemonic(gate.kind)) + ": operands must be distinct");
  }
  for (const Qubit q : gate.operands) {
    if (q < 0) {
      throw InvalidGate("negative qubit index");
    }
  }
}

Circuit::Circuit(int qubit_count) : qubit_count_(qubit_count), measured_(qubit_count, false) {
  if (qubit_count < 0) {
    throw InvalidGate("negative qubit count");
  }
}

Circuit::Circuit(int qubit_count, std::initializer_list<Gate> gates) : Circuit(qubit_count) {
  for (const auto& g : gates) {
    add(g);
  }
}

void Circuit::add(Gate gate) {
  validate_gate(gate);
  for (const Qubit q : gate.operands) {
    if (q >= qubit_count_) {
      throw InvalidGate("qubit q" + std::to_string(q) + " out of range");
    }
    if (measured_[q]) {
      throw InvalidGate("gate on q" + std::to_string(q) + " after its measurement");
    }
  }
  if (gate.kind == GateKind::MEASURE) {
    measured_[gate.operands[0]] = true;
  }
  gates_.push_back(std::move(gate));
}

void Circuit::append(const Circuit& other) {
  if (other.qubit_count_ != qubit_count_) {
    throw InvalidGate("appending circuits with different qubit counts");
  }
  for (const auto& g : other.gates_) {
    add(g);
  }
}

std::size_t Circuit::two_qubit_gate_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(gates_.begin(), gates_.end(), [](const Gate& g) { return g.is_two_qubit(); }));
}

Circuit parse_circuit(std::string_view text) {
  std::optional<Circuit> circuit;
  std::vector<bool> measured;
  std::size_t line_no = 0;
  std::size_t pos = 0;
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

    const auto space = line.find_first_of(" \t");
    const std::string head = lower(line.substr(0, space));
    const std::string_view rest = space == std::string_view::npos ? std::string_view{} : trim(line.substr(space));

    if (head == "qubits") {
      if (circuit) {
        throw SyntaxError(line_no, "duplicate qubits declaration");
      }
      auto n = parse_integer(rest);
      if (!n || *n < 0 || *n > 1'000'000) {
        throw SyntaxError(line_no, "expected a non-negative qubit count");
      }
      circuit.emplace(static_cast<int>(*n));
      measured.assign(static_cast<std::size_t>(*n), false);
      continue;
    }
    if (!circuit) {
      throw MissingQubitsDecl();
    }

    const auto kind = gate_kind_from_mnemonic(head);
    if (!kind) {
      throw SyntaxError(line_no, "unknown gate '" + head + "'");
    }
    if (rest.empty()) {
      throw SyntaxError(line_no, "missing operands");
    }
    const auto args = split_commas(rest);
    const auto n_ops = static_cast<std::size_t>(arity(*kind));
    if (args.size() < n_ops) {
      throw SyntaxError(line_no, "expected " + std::to_string(n_ops) + " qubit operand(s)");
    }
    std::vector<Qubit> operands;
    for (std::size_t i = 0; i < n_ops; ++i) {
      auto q = parse_qubit(args[i]);
      if (!q) {
        throw SyntaxError(line_no, "bad qubit operand '" + std::string(args[i]) + "'");
      }
      if (*q >= circuit->qubit_count()) {
        throw QubitOutOfRange(line_no);
      }
      operands.push_back(*q);
    }
    if (n_ops == 2 && operands[0] == operands[1]) {
      throw SyntaxError(line_no, "operands must be distinct");
    }
    if (args.size() - n_ops != static_cast<std::size_t>(param_count(*kind))) {
      throw ParamArityMismatch(line_no);
    }
    std::vector<double> params;
    for (std::size_t i = n_ops; i < args.size(); ++i) {
      auto angle = parse_angle(args[i]);
      if (!angle) {
        throw SyntaxError(line_no, "bad angle '" + std::string(args[i]) + "'");
      }
      params.push_back(*angle);
    }
    for (const Qubit q : operands) {
      if (measured[q]) {
        throw SyntaxError(line_no, "mid-circuit measurement: q" + std::to_string(q) + " used after measure");
      }
    }
    if (*kind == GateKind::MEASURE) {
      measured[operands[0]] = true;
    }
    circuit->add(Gate(*kind, std::move(operands), std::move(params)));
  }
  if (!circuit) {
    throw MissingQubitsDecl();
  }
  return std::move(*circuit);
}

Circuit load_circuit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot read circuit file '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_circuit(buffer.str());
}

std::string format_angle(double value) {
  constexpr double pi = std::numbers::pi;
  struct Named {
    double value;
    const char* text;
  };
  static constexpr Named named[] = {
      {pi, "pi"},          {-pi, "-pi"},         {pi / 2, "pi/2"},   {-pi / 2, "-pi/2"},
      {pi / 4, "pi/4"},    {-pi / 4, "-pi/4"},
  };
  for (const auto& n : named) {
    if (value == n.value) {
      return n.text;
    }
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string format_gate(const Gate& gate) {
  std::string out(mnemonic(gate.kind));
  for (std::size_t i = 0; i < gate.operands.size(); ++i) {
    out += i == 0 ? " q" : ", q";
    out += std::to_string(gate.operands[i]);
  }
  for (const double p : gate.params) {
    out += ", ";
    out += format_angle(p);
  }
  return out;
}

std::string print_circuit(const Circuit& circuit) {
  std::string out = "qubits " + std::to_string(circuit.qubit_count()) + "\n";
  for (const auto& g : circuit.gates()) {
    out += format_gate(g);
    out += '\n';
  }
  return out;
}

} // namespace qcmap
