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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace qcmap {

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Matrix2 = Eigen::Matrix<Complex<Scalar>, 2, 2>;

template <typename Scalar>
using Matrix4 = Eigen::Matrix<Complex<Scalar>, 4, 4>;

namespace unitaries {

template <typename Scalar = double>
Matrix2<Scalar> rx(Scalar theta) {
  using C = Complex<Scalar>;
  const Scalar c = std::cos(theta / 2);
  const Scalar s = std::sin(theta / 2);
  Matrix2<Scalar> m;
  m << C(c, 0), C(0, -s), C(0, -s), C(c, 0);
  return m;
}

template <typename Scalar = double>
Matrix2<Scalar> ry(Scalar theta) {
  using C = Complex<Scalar>;
  const Scalar c = std::cos(theta / 2);
  const Scalar s = std::sin(theta / 2);
  Matrix2<Scalar> m;
  m << C(c, 0), C(-s, 0), C(s, 0), C(c, 0);
  return m;
}

template <typename Scalar = double>
Matrix2<Scalar> rz(Scalar theta) {
  using C = Complex<Scalar>;
  Matrix2<Scalar> m;
  m << std::polar(Scalar(1), -theta / 2), C(0), C(0), std::polar(Scalar(1), theta / 2);
  return m;
}

/// U(theta, phi, lambda) = RZ(phi) RY(theta) RZ(lambda).
template <typename Scalar = double>
Matrix2<Scalar> u3(Scalar theta, Scalar phi, Scalar lambda) {
  return rz<Scalar>(phi) * ry<Scalar>(theta) * rz<Scalar>(lambda);
}

} // namespace unitaries

/// Unitary of a gate. Two-qubit matrices use the basis |op0 op1> with op0 as
/// the high bit, so CNOT is the textbook CX with operand 0 as control.
template <typename Scalar = double>
Matrix<Scalar> gate_unitary(const Gate& gate) {
  using C = Complex<Scalar>;
  const Scalar r = std::numbers::sqrt2_v<Scalar> / Scalar(2);
  const C i(0, 1);
  switch (gate.kind) {
  case GateKind::H: {
    Matrix<Scalar> m(2, 2);
    m << C(r), C(r), C(r), C(-r);
    return m;
  }
  case GateKind::X: {
    Matrix<Scalar> m(2, 2);
    m << C(0), C(1), C(1), C(0);
    return m;
  }
  case GateKind::Y: {
    Matrix<Scalar> m(2, 2);
    m << C(0), -i, i, C(0);
    return m;
  }
  case GateKind::Z: {
    Matrix<Scalar> m(2, 2);
    m << C(1), C(0), C(0), C(-1);
    return m;
  }
  case GateKind::S: {
    Matrix<Scalar> m(2, 2);
    m << C(1), C(0), C(0), i;
    return m;
  }
  case GateKind::SDG: {
    Matrix<Scalar> m(2, 2);
    m << C(1), C(0), C(0), -i;
    return m;
  }
  case GateKind::T: {
    Matrix<Scalar> m(2, 2);
    m << C(1), C(0), C(0), std::polar(Scalar(1), std::numbers::pi_v<Scalar> / 4);
    return m;
  }
  case GateKind::TDG: {
    Matrix<Scalar> m(2, 2);
    m << C(1), C(0), C(0), std::polar(Scalar(1), -std::numbers::pi_v<Scalar> / 4);
    return m;
  }
  case GateKind::RX:
    return unitaries::rx<Scalar>(static_cast<Scalar>(gate.params.at(0)));
  case GateKind::RY:
    return unitaries::ry<Scalar>(static_cast<Scalar>(gate.params.at(0)));
  case GateKind::RZ:
    return unitaries::rz<Scalar>(static_cast<Scalar>(gate.params.at(0)));
  case GateKind::U3:
    return unitaries::u3<Scalar>(static_cast<Scalar>(gate.params.at(0)), static_cast<Scalar>(gate.params.at(1)),
                                 static_cast<Scalar>(gate.params.at(2)));
  case GateKind::CNOT: {
    Matrix<Scalar> m = Matrix<Scalar>::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = C(1);
    return m;
  }
  case GateKind::CZ: {
    Matrix<Scalar> m = Matrix<Scalar>::Identity(4, 4);
    m(3, 3) = C(-1);
    return m;
  }
  case GateKind::SWAP: {
    // Exchanges |01> and |10>.
    Matrix<Scalar> m = Matrix<Scalar>::Zero(4, 4);
    m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = C(1);
    return m;
  }
  case GateKind::MEASURE:
    break;
  }
  throw MeasureHasNoUnitary();
}

/// max |a - e^{i phi} b| over entries for the phase phi aligning the
/// largest-magnitude entry of b with a.
template <typename Derived1, typename Derived2>
auto phase_aligned_distance(const Eigen::MatrixBase<Derived1>& a, const Eigen::MatrixBase<Derived2>& b) {
  using Cplx = typename Derived1::Scalar;
  using Real = typename Cplx::value_type;
  Eigen::Index row = 0;
  Eigen::Index col = 0;
  b.cwiseAbs().maxCoeff(&row, &col);
  const Cplx ref = b(row, col);
  Cplx phase(1);
  if (std::abs(ref) > Real(0)) {
    const Cplx ratio = a(row, col) / ref;
    phase = std::abs(ratio) > Real(0) ? ratio / std::abs(ratio) : Cplx(1);
  }
  return (a - phase * b).cwiseAbs().maxCoeff();
}

} // namespace qcmap
