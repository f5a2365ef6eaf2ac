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

#include "qcmap/dependency_graph.hpp"
#include "qcmap/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace qcmap;

TEST(ParseCircuit, EmptyProgram) {
  const auto c = parse_circuit("qubits 1");
  EXPECT_EQ(c.qubit_count(), 1);
  EXPECT_TRUE(c.empty());
}

TEST(ParseCircuit, SingleCnot) {
  const auto c = parse_circuit("qubits 2\ncnot q0, q1");
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0], gates::cnot(0, 1));
}

TEST(ParseCircuit, OutOfRangeReportsLine) {
  try {
    parse_circuit("qubits 2\ncnot q0, q2");
    FAIL() << "expected QubitOutOfRange";
  } catch (const QubitOutOfRange& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ParseCircuit, AnglesCommentsAndCase) {
  const auto c = parse_circuit("# header\nqubits 1\nRX q0, -pi/2  # rotate\nrz q0, 3*pi/4\nu3 q0, 0.25, pi, -pi\n");
  ASSERT_EQ(c.size(), 3u);
  EXPECT_DOUBLE_EQ(c[0].params[0], -std::numbers::pi / 2);
  EXPECT_DOUBLE_EQ(c[1].params[0], 3 * std::numbers::pi / 4);
  EXPECT_DOUBLE_EQ(c[2].params[0], 0.25);
  EXPECT_DOUBLE_EQ(c[2].params[2], -std::numbers::pi);
}

TEST(ParseCircuit, CxAlias) {
  EXPECT_EQ(parse_circuit("qubits 2\ncx q1, q0")[0], gates::cnot(1, 0));
}

TEST(ParseCircuit, Errors) {
  EXPECT_THROW(parse_circuit("h q0"), MissingQubitsDecl);
  EXPECT_THROW(parse_circuit(""), MissingQubitsDecl);
  EXPECT_THROW(parse_circuit("qubits 1\nrx q0"), ParamArityMismatch);
  EXPECT_THROW(parse_circuit("qubits 1\nh q0, 1.0"), ParamArityMismatch);
  EXPECT_THROW(parse_circuit("qubits 1\nfoo q0"), SyntaxError);
  EXPECT_THROW(parse_circuit("qubits 2\ncnot q0, q0"), SyntaxError);
  EXPECT_THROW(parse_circuit("qubits 1\nmeasure q0\nh q0"), SyntaxError);
  EXPECT_THROW(parse_circuit("qubits 1\nrx q0, pie"), SyntaxError);
}

TEST(ParseCircuit, MeasureClosesOnlyItsLine) {
  const auto c = parse_circuit("qubits 2\nmeasure q0\nh q1\nmeasure q1");
  EXPECT_EQ(c.size(), 3u);
}

TEST(PrintCircuit, Examples) {
  EXPECT_EQ(print_circuit(Circuit(1)), "qubits 1\n");
  EXPECT_EQ(print_circuit(Circuit(2, {gates::cnot(0, 1)})), "qubits 2\ncnot q0, q1\n");
  EXPECT_EQ(format_gate(gates::rx(0, std::numbers::pi / 2)), "rx q0, pi/2");
  EXPECT_EQ(format_angle(-std::numbers::pi / 4), "-pi/4");
}

TEST(PrintCircuit, RoundTripRandom) {
  for (int seed = 0; seed < 200; ++seed) {
    std::mt19937_64 rng(seed);
    const auto c = fixtures::random_circuit(rng, 1 + seed % 6, seed % 30, seed % 2 == 0);
    const auto back = parse_circuit(print_circuit(c));
    ASSERT_EQ(back, c) << print_circuit(c);
  }
}

TEST(Circuit, RejectsInvalidGates) {
  Circuit c(2);
  EXPECT_THROW(c.add(gates::cnot(0, 2)), InvalidGate);
  EXPECT_THROW(c.add(Gate(GateKind::RX, {0})), InvalidGate);
  EXPECT_THROW(c.add(Gate(GateKind::CNOT, {1, 1})), InvalidGate);
  c.add(gates::measure(0));
  EXPECT_THROW(c.add(gates::x(0)), InvalidGate);
  EXPECT_NO_THROW(c.add(gates::x(1)));
}

TEST(DependencyGraph, Empty) {
  const auto g = build_dependency_graph(Circuit(3));
  EXPECT_EQ(g.size(), 0u);
  EXPECT_TRUE(frontier(g).empty());
}

TEST(DependencyGraph, CnotThenTwoX) {
  auto g = build_dependency_graph(Circuit(2, {gates::cnot(0, 1), gates::x(1), gates::x(0)}));
  using E = std::pair<std::size_t, std::size_t>;
  EXPECT_EQ(g.edges(), (std::vector<E>{{0, 1}, {0, 2}}));
  EXPECT_EQ(frontier(g), (std::vector<std::size_t>{0}));
  g.mark_scheduled(0);
  EXPECT_EQ(frontier(g), (std::vector<std::size_t>{1, 2}));
  EXPECT_THROW(g.mark_scheduled(0), NotSchedulable);
}

TEST(DependencyGraph, TwoHadamardsThenCnot) {
  auto g = build_dependency_graph(Circuit(2, {gates::h(0), gates::h(1), gates::cnot(0, 1)}));
  EXPECT_EQ(frontier(g), (std::vector<std::size_t>{0, 1}));
  EXPECT_THROW(g.mark_scheduled(2), NotSchedulable);
  g.mark_scheduled(0);
  EXPECT_EQ(g.status(2), NodeStatus::Pending);
  g.mark_scheduled(1);
  EXPECT_EQ(frontier(g), (std::vector<std::size_t>{2}));
  g.mark_scheduled(2);
  EXPECT_TRUE(frontier(g).empty());
  EXPECT_EQ(g.scheduled_count(), 3u);
}

TEST(DependencyGraph, MatchesLineScanOracle) {
  for (int seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    const auto c = fixtures::random_circuit(rng, 2 + seed % 5, 30);
    const DependencyGraph g(c);
    const auto oracle = fixtures::line_predecessors(c);
    for (std::size_t k = 0; k < c.size(); ++k) {
      auto want = oracle[k];
      std::sort(want.begin(), want.end());
      EXPECT_EQ(g.predecessors(k), want);
    }
  }
}
