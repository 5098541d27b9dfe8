// Copyright 2026 The qsac Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace qsac {

using Complex = std::complex<double>;

inline constexpr int kMaxQubits = 12;
inline constexpr int kMaxOracleQubits = 4;

/// Dense statevector of an n-qubit register.
///
/// Qubit 0 is the most significant bit of the basis index, so for n = 2 the
/// amplitudes are ordered |00>, |01>, |10>, |11> with the left digit being
/// qubit 0. Values are immutable; gate functions return a fresh state.
class StateVector {
 public:
  /// Throws std::invalid_argument when the length is not a power of two in
  /// [2, 2^kMaxQubits].
  explicit StateVector(std::vector<Complex> amplitudes);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

  double norm_squared() const;

 private:
  int n_qubits_;
  std::vector<Complex> amplitudes_;
};

enum class GateKind { RX, ROT, CNOT };

/// One gate of a circuit. RX uses angles[0]; ROT uses (alpha, beta, gamma)
/// and applies RZ(alpha), then RY(beta), then RZ(gamma).
struct GateOp {
  GateKind kind = GateKind::RX;
  int target = 0;
  std::optional<int> control;
  double angles[3] = {0.0, 0.0, 0.0};

  static GateOp rx(int target, double angle);
  static GateOp rot(int target, double alpha, double beta, double gamma);
  static GateOp cnot(int control, int target);
};

/// Row-major square complex matrix.
struct ComplexMatrix {
  std::size_t dim = 0;
  std::vector<Complex> data;

  Complex& operator()(std::size_t r, std::size_t c) { return data[r * dim + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data[r * dim + c];
  }
};

StateVector init_zero(int n_qubits);

StateVector apply_rx(StateVector state, int qubit, double angle);
StateVector apply_ry(StateVector state, int qubit, double angle);
StateVector apply_rz(StateVector state, int qubit, double angle);
StateVector apply_rot(StateVector state, int qubit, double alpha, double beta,
                      double gamma);
StateVector apply_cnot(StateVector state, int control, int target);
StateVector apply_gate(StateVector state, const GateOp& op);
StateVector apply_circuit(StateVector state, std::span<const GateOp> ops);

/// Pauli-Z expectation of one wire, in [-1, 1].
double expect_z(const StateVector& state, int qubit);

/// Dense unitary of a gate sequence (first op applied first). Brute-force
/// Kronecker construction; limited to kMaxOracleQubits.
ComplexMatrix circuit_unitary(std::span<const GateOp> ops, int n_qubits);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<Complex> matvec(const ComplexMatrix& m, std::span<const Complex> v);

/// In-place kernels used by the circuit evaluators. No validation beyond
/// what the public wrappers perform.
namespace kernels {

/// cos and sin of half a rotation angle; negate sin for the inverse gate.
struct HalfAngle {
  double c = 1.0;
  double s = 0.0;
  static HalfAngle of(double angle);
  HalfAngle inverse() const { return {c, -s}; }
};

void rx(std::span<Complex> amps, int n_qubits, int qubit, double angle);
void ry(std::span<Complex> amps, int n_qubits, int qubit, double angle);
void rz(std::span<Complex> amps, int n_qubits, int qubit, double angle);
void rx(std::span<Complex> amps, int n_qubits, int qubit, HalfAngle h);
void ry(std::span<Complex> amps, int n_qubits, int qubit, HalfAngle h);
void rz(std::span<Complex> amps, int n_qubits, int qubit, HalfAngle h);
void cnot(std::span<Complex> amps, int n_qubits, int control, int target);

/// Multiplies amplitudes in place by the Pauli generator of a rotation.
void pauli_x(std::span<Complex> amps, int n_qubits, int qubit);
void pauli_y(std::span<Complex> amps, int n_qubits, int qubit);
void pauli_z(std::span<Complex> amps, int n_qubits, int qubit);

double expect_z(std::span<const Complex> amps, int n_qubits, int qubit);

}  // namespace kernels

}  // namespace qsac
