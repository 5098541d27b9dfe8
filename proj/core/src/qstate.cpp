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

#include "qsac/qstate.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qsac {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_qubit(int n_qubits, int qubit) {
  if (qubit < 0 || qubit >= n_qubits) {
    throw std::out_of_range("qubit index " + std::to_string(qubit) +
                            " out of range for " + std::to_string(n_qubits) +
                            "-qubit register");
  }
}

std::size_t mask_of(int n_qubits, int qubit) {
  return std::size_t{1} << (n_qubits - 1 - qubit);
}

using Mat2 = std::array<Complex, 4>;

Mat2 rx_matrix(double angle) {
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  return {c, -kI * s, -kI * s, c};
}

Mat2 ry_matrix(double angle) {
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  return {c, -s, s, c};
}

Mat2 rz_matrix(double angle) {
  return {std::polar(1.0, -angle / 2), 0.0, 0.0, std::polar(1.0, angle / 2)};
}

Mat2 mul2(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

void validate(const GateOp& op, int n_qubits) {
  check_qubit(n_qubits, op.target);
  if (op.kind == GateKind::CNOT) {
    if (!op.control) throw std::invalid_argument("CNOT requires a control qubit");
    check_qubit(n_qubits, *op.control);
    if (*op.control == op.target) {
      throw std::invalid_argument("CNOT control and target must differ");
    }
  } else if (op.control) {
    throw std::invalid_argument("only CNOT carries a control qubit");
  }
}

// Kronecker product of per-wire 2x2 factors, wire 0 leftmost.
ComplexMatrix kron_wires(const std::vector<Mat2>& factors) {
  ComplexMatrix out{1, {Complex{1.0}}};
  for (const Mat2& f : factors) {
    ComplexMatrix next{out.dim * 2, std::vector<Complex>(out.dim * out.dim * 4)};
    for (std::size_t r = 0; r < out.dim; ++r) {
      for (std::size_t c = 0; c < out.dim; ++c) {
        for (std::size_t fr = 0; fr < 2; ++fr) {
          for (std::size_t fc = 0; fc < 2; ++fc) {
            next(r * 2 + fr, c * 2 + fc) = out(r, c) * f[fr * 2 + fc];
          }
        }
      }
    }
    out = std::move(next);
  }
  return out;
}

ComplexMatrix gate_matrix(const GateOp& op, int n_qubits) {
  const Mat2 identity{1.0, 0.0, 0.0, 1.0};
  std::vector<Mat2> factors(n_qubits, identity);
  switch (op.kind) {
    case GateKind::RX:
      factors[op.target] = rx_matrix(op.angles[0]);
      return kron_wires(factors);
    case GateKind::ROT:
      factors[op.target] = mul2(rz_matrix(op.angles[2]),
                                mul2(ry_matrix(op.angles[1]), rz_matrix(op.angles[0])));
      return kron_wires(factors);
    case GateKind::CNOT: {
      // |0><0|_c (x) I  +  |1><1|_c (x) X_t
      factors[*op.control] = {1.0, 0.0, 0.0, 0.0};
      ComplexMatrix m = kron_wires(factors);
      factors[*op.control] = {0.0, 0.0, 0.0, 1.0};
      factors[op.target] = {0.0, 1.0, 1.0, 0.0};
      const ComplexMatrix flip = kron_wires(factors);
      for (std::size_t i = 0; i < m.data.size(); ++i) m.data[i] += flip.data[i];
      return m;
    }
  }
  throw std::logic_error("unknown gate kind");
}

}  // namespace

StateVector::StateVector(std::vector<Complex> amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  const std::size_t n = amplitudes_.size();
  if (n < 2 || !std::has_single_bit(n) ||
      n > (std::size_t{1} << kMaxQubits)) {
    throw std::invalid_argument("statevector length must be 2^n with 1 <= n <= " +
                                std::to_string(kMaxQubits));
  }
  n_qubits_ = std::countr_zero(n);
}

double StateVector::norm_squared() const {
  double total = 0.0;
  for (const Complex& a : amplitudes_) total += std::norm(a);
  return total;
}

GateOp GateOp::rx(int target, double angle) {
  GateOp op;
  op.kind = GateKind::RX;
  op.target = target;
  op.angles[0] = angle;
  return op;
}

GateOp GateOp::rot(int target, double alpha, double beta, double gamma) {
  GateOp op;
  op.kind = GateKind::ROT;
  op.target = target;
  op.angles[0] = alpha;
  op.angles[1] = beta;
  op.angles[2] = gamma;
  return op;
}

GateOp GateOp::cnot(int control, int target) {
  GateOp op;
  op.kind = GateKind::CNOT;
  op.target = target;
  op.control = control;
  return op;
}

StateVector init_zero(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::length_error("register size " + std::to_string(n_qubits) +
                            " outside [1, " + std::to_string(kMaxQubits) + "]");
  }
  std::vector<Complex> amps(std::size_t{1} << n_qubits);
  amps[0] = 1.0;
  return StateVector(std::move(amps));
}

namespace {

template <typename Kernel>
StateVector transformed(const StateVector& state, Kernel&& kernel) {
  std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
  kernel(std::span<Complex>(amps));
  return StateVector(std::move(amps));
}

}  // namespace

StateVector apply_rx(StateVector state, int qubit, double angle) {
  check_qubit(state.n_qubits(), qubit);
  const int n = state.n_qubits();
  return transformed(state, [&](std::span<Complex> a) { kernels::rx(a, n, qubit, angle); });
}

StateVector apply_ry(StateVector state, int qubit, double angle) {
  check_qubit(state.n_qubits(), qubit);
  const int n = state.n_qubits();
  return transformed(state, [&](std::span<Complex> a) { kernels::ry(a, n, qubit, angle); });
}

StateVector apply_rz(StateVector state, int qubit, double angle) {
  check_qubit(state.n_qubits(), qubit);
  const int n = state.n_qubits();
  return transformed(state, [&](std::span<Complex> a) { kernels::rz(a, n, qubit, angle); });
}

StateVector apply_rot(StateVector state, int qubit, double alpha, double beta,
                      double gamma) {
  check_qubit(state.n_qubits(), qubit);
  const int n = state.n_qubits();
  return transformed(state, [&](std::span<Complex> a) {
    kernels::rz(a, n, qubit, alpha);
    kernels::ry(a, n, qubit, beta);
    kernels::rz(a, n, qubit, gamma);
  });
}

StateVector apply_cnot(StateVector state, int control, int target) {
  const int n = state.n_qubits();
  check_qubit(n, control);
  check_qubit(n, target);
  if (control == target) {
    throw std::invalid_argument("CNOT control and target must differ");
  }
  return transformed(state, [&](std::span<Complex> a) { kernels::cnot(a, n, control, target); });
}

StateVector apply_gate(StateVector state, const GateOp& op) {
  validate(op, state.n_qubits());
  switch (op.kind) {
    case GateKind::RX:
      return apply_rx(std::move(state), op.target, op.angles[0]);
    case GateKind::ROT:
      return apply_rot(std::move(state), op.target, op.angles[0], op.angles[1],
                       op.angles[2]);
    case GateKind::CNOT:
      return apply_cnot(std::move(state), *op.control, op.target);
  }
  throw std::logic_error("unknown gate kind");
}

StateVector apply_circuit(StateVector state, std::span<const GateOp> ops) {
  for (const GateOp& op : ops) state = apply_gate(std::move(state), op);
  return state;
}

double expect_z(const StateVector& state, int qubit) {
  check_qubit(state.n_qubits(), qubit);
  return kernels::expect_z(state.amplitudes(), state.n_qubits(), qubit);
}

ComplexMatrix circuit_unitary(std::span<const GateOp> ops, int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxOracleQubits) {
    throw std::length_error("circuit_unitary supports 1 to " +
                            std::to_string(kMaxOracleQubits) + " qubits");
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  ComplexMatrix u{dim, std::vector<Complex>(dim * dim)};
  for (std::size_t i = 0; i < dim; ++i) u(i, i) = 1.0;
  for (const GateOp& op : ops) {
    validate(op, n_qubits);
    u = matmul(gate_matrix(op, n_qubits), u);
  }
  return u;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim != b.dim) throw std::invalid_argument("matmul dimension mismatch");
  ComplexMatrix out{a.dim, std::vector<Complex>(a.dim * a.dim)};
  for (std::size_t r = 0; r < a.dim; ++r) {
    for (std::size_t k = 0; k < a.dim; ++k) {
      const Complex ark = a(r, k);
      for (std::size_t c = 0; c < a.dim; ++c) out(r, c) += ark * b(k, c);
    }
  }
  return out;
}

std::vector<Complex> matvec(const ComplexMatrix& m, std::span<const Complex> v) {
  if (v.size() != m.dim) throw std::invalid_argument("matvec dimension mismatch");
  std::vector<Complex> out(m.dim);
  for (std::size_t r = 0; r < m.dim; ++r) {
    for (std::size_t c = 0; c < m.dim; ++c) out[r] += m(r, c) * v[c];
  }
  return out;
}

namespace kernels {

HalfAngle HalfAngle::of(double angle) {
  return {std::cos(angle / 2), std::sin(angle / 2)};
}

// Rotation kernels spell out the complex arithmetic; std::complex products
// carry NaN-recovery branches that dominate these tiny loops.
void rx(std::span<Complex> amps, int n_qubits, int qubit, double angle) {
  rx(amps, n_qubits, qubit, HalfAngle::of(angle));
}

void rx(std::span<Complex> amps, int n_qubits, int qubit, HalfAngle h) {
  const std::size_t mask = mask_of(n_qubits, qubit);
  const double c = h.c, s = h.s;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & mask) continue;
    const double ar = amps[i].real(), ai = amps[i].imag();
    const double br = amps[i | mask].real(), bi = amps[i | mask].imag();
    amps[i] = {c * ar + s * bi, c * ai - s * br};
    amps[i | mask] = {s * ai + c * br, c * bi - s * ar};
  }
}

void ry(std::span<Complex> amps, int n_qubits, int qubit, double angle) {
  ry(amps, n_qubits, qubit, HalfAngle::of(angle));
}

void ry(std::span<Complex> amps, int n_qubits, int qubit, HalfAngle h) {
  const std::size_t mask = mask_of(n_qubits, qubit);
  const double c = h.c, s = h.s;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & mask) continue;
    const Complex a = amps[i], b = amps[i | mask];
    amps[i] = {c * a.real() - s * b.real(), c * a.imag() - s * b.imag()};
    amps[i | mask] = {s * a.real() + c * b.real(), s * a.imag() + c * b.imag()};
  }
}

void rz(std::span<Complex> amps, int n_qubits, int qubit, double angle) {
  rz(amps, n_qubits, qubit, HalfAngle::of(angle));
}

void rz(std::span<Complex> amps, int n_qubits, int qubit, HalfAngle h) {
  const std::size_t mask = mask_of(n_qubits, qubit);
  const double c = h.c, s = h.s;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    // e^{-i angle/2} on |0>, e^{+i angle/2} on |1>.
    const double si = (i & mask) ? s : -s;
    const double re = amps[i].real(), im = amps[i].imag();
    amps[i] = {c * re - si * im, c * im + si * re};
  }
}

void cnot(std::span<Complex> amps, int n_qubits, int control, int target) {
  const std::size_t cmask = mask_of(n_qubits, control);
  const std::size_t tmask = mask_of(n_qubits, target);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & cmask) && !(i & tmask)) std::swap(amps[i], amps[i | tmask]);
  }
}

void pauli_x(std::span<Complex> amps, int n_qubits, int qubit) {
  const std::size_t mask = mask_of(n_qubits, qubit);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (!(i & mask)) std::swap(amps[i], amps[i | mask]);
  }
}

void pauli_y(std::span<Complex> amps, int n_qubits, int qubit) {
  const std::size_t mask = mask_of(n_qubits, qubit);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & mask) continue;
    const Complex a0 = amps[i];
    const Complex a1 = amps[i | mask];
    amps[i] = -kI * a1;
    amps[i | mask] = kI * a0;
  }
}

void pauli_z(std::span<Complex> amps, int n_qubits, int qubit) {
  const std::size_t mask = mask_of(n_qubits, qubit);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & mask) amps[i] = -amps[i];
  }
}

double expect_z(std::span<const Complex> amps, int n_qubits, int qubit) {
  const std::size_t mask = mask_of(n_qubits, qubit);
  double total = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    total += (i & mask) ? -p : p;
  }
  return total;
}

}  // namespace kernels

}  // namespace qsac
