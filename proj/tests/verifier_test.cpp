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

#include "qcmap/decomposer.hpp"
#include "qcmap/errors.hpp"
#include "qcmap/pipeline.hpp"
#include "qcmap/simulator.hpp"
#include "qcmap/unitary.hpp"
#include "qcmap/verifier.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qcmap;
using fixtures::qx4;
using fixtures::surface17;

namespace {

const double r2 = 1.0 / std::sqrt(2.0);

} // namespace

TEST(GateUnitary, AllKindsAreUnitary) {
  for (const auto kind : kAllGateKinds) {
    if (kind == GateKind::MEASURE) {
      EXPECT_THROW(gate_unitary(gates::measure(0)), MeasureHasNoUnitary);
      continue;
    }
    std::vector<Qubit> ops{0};
    if (arity(kind) == 2) {
      ops.push_back(1);
    }
    const Gate g(kind, ops, std::vector<double>(param_count(kind), 0.37));
    const auto u = gate_unitary(g);
    const auto id = Matrix<double>::Identity(u.rows(), u.cols());
    EXPECT_LT((u.adjoint() * u - id).cwiseAbs().maxCoeff(), 1e-12) << mnemonic(kind);
  }
}

TEST(GateUnitary, U3IsEulerProduct) {
  const auto u = gate_unitary(gates::u3(0, 0.3, 0.7, -1.1));
  const Matrix2<double> v = unitaries::rz<double>(0.7) * unitaries::ry<double>(0.3) * unitaries::rz<double>(-1.1);
  EXPECT_LT((u - v).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Simulate, Examples) {
  const auto plus = simulate(Circuit(1, {gates::h(0)}));
  EXPECT_NEAR(plus[0].real(), r2, 1e-15);
  EXPECT_NEAR(plus[1].real(), r2, 1e-15);

  // q0 = 1 is basis index 1; CNOT flips q1 to give index 3.
  const auto flipped = simulate(Circuit(2, {gates::cnot(0, 1)}), std::uint64_t{1});
  EXPECT_NEAR(std::abs(flipped[3]), 1.0, 1e-15);

  const auto bell = simulate(Circuit(2, {gates::h(0), gates::cnot(0, 1)}));
  EXPECT_NEAR(bell[0].real(), r2, 1e-15);
  EXPECT_NEAR(bell[3].real(), r2, 1e-15);
  EXPECT_NEAR(std::abs(bell[1]) + std::abs(bell[2]), 0.0, 1e-15);
}

TEST(Simulate, TooManyQubits) {
  EXPECT_THROW(simulate(Circuit(17)), TooManyQubits);
}

TEST(Simulate, NormAndComposition) {
  for (int seed = 0; seed < 50; ++seed) {
    std::mt19937_64 rng(seed);
    const int n = 1 + seed % 6;
    const auto c1 = fixtures::random_circuit(rng, n, 20);
    const auto c2 = fixtures::random_circuit(rng, n, 20);
    Circuit both = c1;
    both.append(c2);
    const auto psi = StateVector<double>::random(n, rng);
    const auto whole = simulate(both, psi);
    const auto staged = simulate(c2, simulate(c1, psi));
    EXPECT_NEAR(whole.norm(), 1.0, 1e-10);
    EXPECT_LT((whole.amplitudes() - staged.amplitudes()).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Simulate, FloatScalar) {
  const auto s = simulate<float>(Circuit(2, {gates::h(0), gates::cnot(0, 1)}));
  EXPECT_NEAR(s[3].real(), static_cast<float>(r2), 1e-6f);
}

TEST(CheckConstraints, Examples) {
  EXPECT_EQ(format_violation(check_constraints(Circuit(17, {gates::cz(1, 7)}), surface17()).at(0)),
            "violation coupling gate#0 qubits 1,7");
  const auto v = check_constraints(Circuit(5, {gates::cnot(2, 3)}), qx4());
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, ViolationKind::Orientation);
  EXPECT_EQ(check_constraints(Circuit(5, {gates::h(0)}), qx4()).at(0).kind, ViolationKind::NonNative);
  EXPECT_EQ(check_constraints(Circuit(6, {gates::h(5)}), qx4()).at(0).kind, ViolationKind::OutOfRange);

  const auto d = load_device("name m\nqubits 2\nedge q0 q1\ngate1q x\ngate2q cz symmetric\nmeasurable q1\n");
  EXPECT_EQ(check_constraints(Circuit(2, {gates::measure(0)}), d).at(0).kind, ViolationKind::NotMeasurable);
  EXPECT_TRUE(check_constraints(Circuit(2, {gates::x(0), gates::cz(0, 1), gates::measure(1)}), d).empty());
}

TEST(CheckConstraints, RoutedOutputIsClean) {
  for (int seed = 0; seed < 40; ++seed) {
    std::mt19937_64 rng(seed);
    const auto c = fixtures::random_circuit(rng, 5, 30, true);
    for (const Device* d : {&qx4(), &surface17()}) {
      EXPECT_TRUE(check_constraints(map_circuit(c, *d).mapped, *d).empty());
    }
  }
}

TEST(Equivalent, Examples) {
  std::mt19937_64 rng(1);
  const auto c = fixtures::random_circuit(rng, 4, 25);
  const auto same = equivalent(c, c, Placement::identity(4, 4));
  EXPECT_TRUE(same.equivalent);
  EXPECT_LT(same.deficit, 1e-12);

  Circuit extra = c;
  extra.add(gates::x(2));
  EXPECT_FALSE(equivalent(c, extra, Placement::identity(4, 4)).equivalent);

  const auto r = map_circuit(c, qx4(), {PlacerStrategy::Identity, {RouterStrategy::Naive}});
  EXPECT_TRUE(equivalent(c, r.mapped, r.routed.initial_placement, r.routed.final_placement).equivalent);
  EXPECT_TRUE(equivalent(c, r.routed.circuit, r.routed.initial_placement, r.routed.final_placement).equivalent);
}

TEST(Equivalent, DetectsWrongFinalPlacement) {
  const Circuit c(2, {gates::x(0)});
  const Circuit mapped(3, {gates::x(0), gates::swap(0, 2)});
  const Placement initial({0, 1, Placement::kFree});
  EXPECT_TRUE(equivalent(c, mapped, initial, Placement({Placement::kFree, 1, 0})).equivalent);
  EXPECT_FALSE(equivalent(c, mapped, initial, initial).equivalent);
}

TEST(Equivalent, DetectsDirtyFreeQubit) {
  const Circuit c(1);
  const Circuit mapped(2, {gates::x(1)});
  EXPECT_FALSE(equivalent(c, mapped, Placement({0, Placement::kFree})).equivalent);
}

TEST(Equivalent, RecyclesIdleQubitsOnWideRegisters) {
  // Twelve program qubits on surface17; two of them walk through all five
  // free qubits with native SWAPs, so all 17 physical qubits get touched.
  Circuit orig(12);
  for (int q = 0; q < 12; ++q) {
    orig.add(q % 3 ? gates::h(q) : gates::x(q));
  }
  orig.add(gates::cnot(9, 11));
  Circuit mapped(17);
  for (const auto& g : orig.gates()) {
    mapped.add(g);
  }
  const std::pair<int, int> walk[] = {{11, 14}, {14, 16}, {16, 13}, {9, 12}, {12, 15}};
  for (const auto& [a, b] : walk) {
    for (const auto& g : decompose_swap(a, b, surface17())) {
      mapped.add(g);
    }
  }
  const auto initial = Placement::identity(12, 17);
  auto slots = initial.slots();
  slots[11] = slots[9] = Placement::kFree;
  slots[13] = 11;
  slots[15] = 9;
  const auto eq = equivalent(orig, mapped, initial, Placement(slots));
  EXPECT_TRUE(eq.equivalent) << eq.deficit;
  slots[13] = 9;
  slots[15] = 11;
  EXPECT_FALSE(equivalent(orig, mapped, initial, Placement(slots)).equivalent);
}

TEST(Equivalent, TooManyProgramQubits) {
  EXPECT_THROW(equivalent(Circuit(13), Circuit(13), Placement::identity(13, 13)), TooManyQubits);
}

TEST(Metrics, Examples) {
  const auto bell = parse_circuit("qubits 2\nh q0\ncnot q0, q1\n");
  const auto r = map_circuit(bell, qx4(), {PlacerStrategy::Identity, {}});
  EXPECT_EQ(r.metrics.swaps_added, 0u);
  EXPECT_FALSE(r.metrics.reliability.has_value());
  EXPECT_EQ(r.metrics.gates_after, r.metrics.gates_before + 4 * r.metrics.direction_fixes);
  EXPECT_EQ(format_metrics(r.metrics), "gates_before=2\ngates_after=6\nswaps_added=0\ndirection_fixes=1\n"
                                       "depth_cycles=4\nreliability=no-data\n");

  const auto d = load_device("name e\nqubits 2\nedge q0 q1\ngate1q x\ngate2q cnot symmetric\nerror cnot 0.02\n");
  Circuit ten(2);
  for (int k = 0; k < 10; ++k) {
    ten.add(gates::cnot(0, 1));
  }
  const auto m = map_circuit(ten, d).metrics;
  ASSERT_TRUE(m.reliability.has_value());
  EXPECT_NEAR(*m.reliability, std::pow(0.98, 10), 1e-15);
}

TEST(Metrics, ReliabilityNeverIncreases) {
  const auto d = load_device(serialize_device(qx4()) + "error cnot 0.03\nerror u3 0.001\n");
  double last = 1.0;
  Circuit c(3);
  for (int k = 0; k < 15; ++k) {
    c.add(k % 2 ? gates::cnot(0, 2) : gates::h(1));
    const auto m = map_circuit(c, d, {PlacerStrategy::Identity, {}}).metrics;
    EXPECT_LE(*m.reliability, last + 1e-15);
    last = *m.reliability;
  }
}
