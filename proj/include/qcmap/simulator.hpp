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
#include "qcmap/errors.hpp"
#include "qcmap/unitary.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>

namespace qcmap {

/// Hard cap on simulated register size (2^16 amplitudes).
inline constexpr int kMaxSimulatedQubits = 16;

/// Dense state over n qubits. Basis index bit k is qubit k (qubit 0 least
/// significant).
template <typename Scalar = double>
class StateVector {
public:
  using Vector = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1>;

  explicit StateVector(int qubit_count, std::uint64_t basis = 0) : qubit_count_(qubit_count) {
    check_size(qubit_count);
    amps_ = Vector::Zero(Eigen::Index(1) << qubit_count);
    amps_(static_cast<Eigen::Index>(basis)) = Complex<Scalar>(1);
  }

  StateVector(int qubit_count, Vector amplitudes) : qubit_count_(qubit_count), amps_(std::move(amplitudes)) {
    check_size(qubit_count);
    if (amps_.size() != (Eigen::Index(1) << qubit_count)) {
      throw Error("amplitude vector has wrong length");
    }
  }

  /// Haar-like random state from normally distributed amplitudes.
  template <typename Rng>
  static StateVector random(int qubit_count, Rng& rng) {
    check_size(qubit_count);
    std::normal_distribution<Scalar> normal;
    Vector v(Eigen::Index(1) << qubit_count);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const Scalar re = normal(rng);
      const Scalar im = normal(rng);
      v(i) = Complex<Scalar>(re, im);
    }
    v.normalize();
    return StateVector(qubit_count, std::move(v));
  }

  [[nodiscard]] int qubit_count() const noexcept { return qubit_count_; }
  [[nodiscard]] const Vector& amplitudes() const noexcept { return amps_; }
  [[nodiscard]] Complex<Scalar> operator[](std::uint64_t basis) const { return amps_(static_cast<Eigen::Index>(basis)); }
  [[nodiscard]] Scalar norm() const { return amps_.norm(); }

  void apply(const Gate& gate) {
    if (gate.kind == GateKind::MEASURE) {
      return;
    }
    for (const Qubit q : gate.operands) {
      if (q < 0 || q >= qubit_count_) {
        throw Error("gate operand outside simulated register");
      }
    }
    const auto u = gate_unitary<Scalar>(gate);
    if (gate.operands.size() == 1) {
      apply_1q(u, gate.operands[0]);
    } else {
      apply_2q(u, gate.operands[0], gate.operands[1]);
    }
  }

private:
  static void check_size(int n) {
    if (n < 0 || n > kMaxSimulatedQubits) {
      throw TooManyQubits(n, kMaxSimulatedQubits);
    }
  }

  void apply_1q(const Matrix<Scalar>& u, Qubit q) {
    const Eigen::Index bit = Eigen::Index(1) << q;
    for (Eigen::Index i = 0; i < amps_.size(); ++i) {
      if (i & bit) {
        continue;
      }
      const auto a0 = amps_(i);
      const auto a1 = amps_(i | bit);
      amps_(i) = u(0, 0) * a0 + u(0, 1) * a1;
      amps_(i | bit) = u(1, 0) * a0 + u(1, 1) * a1;
    }
  }

  // Local index = 2 * bit(op0) + bit(op1), matching gate_unitary.
  void apply_2q(const Matrix<Scalar>& u, Qubit op0, Qubit op1) {
    const Eigen::Index hi = Eigen::Index(1) << op0;
    const Eigen::Index lo = Eigen::Index(1) << op1;
    Eigen::Matrix<Complex<Scalar>, 4, 1> in;
    for (Eigen::Index i = 0; i < amps_.size(); ++i) {
      if ((i & hi) || (i & lo)) {
        continue;
      }
      const Eigen::Index idx[4] = {i, i | lo, i | hi, i | hi | lo};
      for (int k = 0; k < 4; ++k) {
        in(k) = amps_(idx[k]);
      }
      for (int r = 0; r < 4; ++r) {
        Complex<Scalar> acc(0);
        for (int c = 0; c < 4; ++c) {
          acc += u(r, c) * in(c);
        }
        amps_(idx[r]) = acc;
      }
    }
  }

  int qubit_count_;
  Vector amps_;
};

/// Applies every gate in order; MEASURE is skipped (pre-measurement state).
template <typename Scalar = double>
StateVector<Scalar> simulate(const Circuit& circuit, StateVector<Scalar> state) {
  if (circuit.qubit_count() > kMaxSimulatedQubits) {
    throw TooManyQubits(circuit.qubit_count(), kMaxSimulatedQubits);
  }
  if (state.qubit_count() != circuit.qubit_count()) {
    throw Error("state and circuit qubit counts differ");
  }
  for (const auto& g : circuit.gates()) {
    state.apply(g);
  }
  return state;
}

template <typename Scalar = double>
StateVector<Scalar> simulate(const Circuit& circuit, std::uint64_t basis = 0) {
  if (circuit.qubit_count() > kMaxSimulatedQubits) {
    throw TooManyQubits(circuit.qubit_count(), kMaxSimulatedQubits);
  }
  return simulate<Scalar>(circuit, StateVector<Scalar>(circuit.qubit_count(), basis));
}

/// |<a|b>|
template <typename Scalar>
Scalar fidelity(const StateVector<Scalar>& a, const StateVector<Scalar>& b) {
  return std::abs(a.amplitudes().dot(b.amplitudes()));
}

/// Full 2^n x 2^n unitary of a circuit; column k is the image of basis k.
template <typename Scalar = double>
Matrix<Scalar> circuit_unitary(const Circuit& circuit) {
  const Eigen::Index dim = Eigen::Index(1) << circuit.qubit_count();
  Matrix<Scalar> u(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    u.col(col) = simulate<Scalar>(circuit, static_cast<std::uint64_t>(col)).amplitudes();
  }
  return u;
}

} // namespace qcmap
