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

#include "qsac/vqc.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace qsac {

namespace {

enum class PrimKind { RX, RY, RZ, CNOT };

// A Pauli rotation or CNOT of the decomposed circuit. Trainable rotations
// record which flat parameter drives them and d(angle)/d(param).
struct Primitive {
  PrimKind kind;
  int qubit;
  int control = -1;
  double angle = 0.0;
  int param = -1;
  double scale = 1.0;
  kernels::HalfAngle half;
};

void set_angle(Primitive& op, double angle) {
  op.angle = angle;
  if (op.kind != PrimKind::CNOT) op.half = kernels::HalfAngle::of(angle);
}

Primitive rotation(PrimKind kind, int qubit, double angle, int param = -1, double scale = 1.0) {
  Primitive op{kind, qubit, -1, 0.0, param, scale, {}};
  set_angle(op, angle);
  return op;
}

void check_dims(const VqcArch& arch, std::span<const double> s) {
  if (s.size() != static_cast<std::size_t>(arch.n_qubits)) {
    throw std::invalid_argument("circuit input has " + std::to_string(s.size()) +
                                " components, expected " +
                                std::to_string(arch.n_qubits));
  }
}

void push_rot(std::vector<Primitive>& ops, int qubit, std::span<const double> flat,
              std::size_t base) {
  const int p = static_cast<int>(base);
  ops.push_back(rotation(PrimKind::RZ, qubit, flat[base], p));
  ops.push_back(rotation(PrimKind::RY, qubit, flat[base + 1], p + 1));
  ops.push_back(rotation(PrimKind::RZ, qubit, flat[base + 2], p + 2));
}

void push_ring(std::vector<Primitive>& ops, int n_qubits) {
  if (n_qubits < 2) return;
  for (int q = 0; q < n_qubits; ++q) {
    ops.push_back({PrimKind::CNOT, (q + 1) % n_qubits, q, 0.0, -1, 1.0, {}});
  }
}

std::vector<Primitive> compile(const VqcParams& params, std::span<const double> s) {
  std::vector<Primitive> ops;
  if (const auto* v = std::get_if<VanillaVqcParams>(&params)) {
    const VqcArch arch = v->arch();
    check_dims(arch, s);
    ops.reserve(arch.n_qubits * (1 + 4 * arch.n_layers));
    for (int q = 0; q < arch.n_qubits; ++q) ops.push_back(rotation(PrimKind::RX, q, s[q]));
    for (int l = 0; l < arch.n_layers; ++l) {
      for (int q = 0; q < arch.n_qubits; ++q) {
        push_rot(ops, q, v->flat(), (static_cast<std::size_t>(l) * arch.n_qubits + q) * 3);
      }
      push_ring(ops, arch.n_qubits);
    }
    return ops;
  }
  const auto& r = std::get<ReuploadVqcParams>(params);
  const VqcArch arch = r.arch();
  check_dims(arch, s);
  const auto flat = r.flat();
  ops.reserve(arch.n_qubits * (5 * arch.n_layers + 4));
  for (int l = 0; l < arch.n_layers; ++l) {
    for (int q = 0; q < arch.n_qubits; ++q) push_rot(ops, q, flat, r.angle_index(l, q, 0));
    push_ring(ops, arch.n_qubits);
    for (int q = 0; q < arch.n_qubits; ++q) {
      const std::size_t li = r.lambda_index(l, q);
      ops.push_back(rotation(PrimKind::RX, q, flat[li] * s[q], static_cast<int>(li), s[q]));
    }
  }
  for (int q = 0; q < arch.n_qubits; ++q) push_rot(ops, q, flat, r.final_index(q, 0));
  push_ring(ops, arch.n_qubits);
  return ops;
}

void apply(std::span<Complex> amps, int n, const Primitive& op, kernels::HalfAngle h) {
  switch (op.kind) {
    case PrimKind::RX: kernels::rx(amps, n, op.qubit, h); break;
    case PrimKind::RY: kernels::ry(amps, n, op.qubit, h); break;
    case PrimKind::RZ: kernels::rz(amps, n, op.qubit, h); break;
    case PrimKind::CNOT: kernels::cnot(amps, n, op.control, op.qubit); break;
  }
}

void apply_inverse(std::span<Complex> amps, int n, const Primitive& op) {
  // Rotations invert by negating the angle; CNOT is self-inverse.
  apply(amps, n, op, op.half.inverse());
}

// Im <lambda| P |psi> for the rotation generator P, without materialising P psi.
double generator_overlap_imag(std::span<const Complex> lambda, std::span<const Complex> psi,
                              int n, const Primitive& op) {
  const std::size_t mask = std::size_t{1} << (n - 1 - op.qubit);
  auto im_dot = [](Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); };
  auto re_dot = [](Complex a, Complex b) { return a.real() * b.real() + a.imag() * b.imag(); };
  double total = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    switch (op.kind) {
      case PrimKind::RX: total += im_dot(lambda[i], psi[i ^ mask]); break;
      // Y|0> = i|1>, Y|1> = -i|0>; Im(conj(l) * (+-i) p) = +-Re(conj(l) p).
      case PrimKind::RY:
        total += (i & mask) ? re_dot(lambda[i], psi[i ^ mask]) : -re_dot(lambda[i], psi[i ^ mask]);
        break;
      case PrimKind::RZ:
        total += (i & mask) ? -im_dot(lambda[i], psi[i]) : im_dot(lambda[i], psi[i]);
        break;
      case PrimKind::CNOT: throw std::logic_error("CNOT has no rotation generator");
    }
  }
  return total;
}

std::vector<Complex> run(const std::vector<Primitive>& ops, int n) {
  std::vector<Complex> amps(std::size_t{1} << n);
  amps[0] = 1.0;
  for (const Primitive& op : ops) apply(amps, n, op, op.half);
  return amps;
}

std::vector<double> measure(std::span<const Complex> amps, int n) {
  std::vector<double> out(n);
  for (int q = 0; q < n; ++q) out[q] = kernels::expect_z(amps, n, q);
  return out;
}

double weighted_z(std::span<const Complex> amps, int n, std::span<const double> w) {
  double total = 0.0;
  for (int q = 0; q < n; ++q) total += w[q] * kernels::expect_z(amps, n, q);
  return total;
}

void check_upstream(const VqcArch& arch, std::span<const double> upstream) {
  if (upstream.size() != static_cast<std::size_t>(arch.n_qubits)) {
    throw std::invalid_argument("upstream gradient has " +
                                std::to_string(upstream.size()) +
                                " components, expected " +
                                std::to_string(arch.n_qubits));
  }
}

}  // namespace

void VqcArch::validate() const {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("circuit qubit count " + std::to_string(n_qubits) +
                                " out of range");
  }
  if (n_layers < 1) throw std::invalid_argument("circuit needs at least one layer");
}

std::size_t count_params(const VqcArch& arch) {
  const std::size_t q = arch.n_qubits, l = arch.n_layers;
  switch (arch.kind) {
    case VqcKind::Vanilla: return 3 * q * l;
    case VqcKind::Reuploading: return l * (3 * q + q) + 3 * q;
  }
  return 0;
}

VanillaVqcParams::VanillaVqcParams(int n_qubits, int n_layers)
    : n_qubits_(n_qubits), n_layers_(n_layers) {
  arch().validate();
  values_.assign(count_params(arch()), 0.0);
}

VanillaVqcParams::VanillaVqcParams(const VqcArch& arch, std::vector<double> flat)
    : n_qubits_(arch.n_qubits), n_layers_(arch.n_layers), values_(std::move(flat)) {
  if (arch.kind != VqcKind::Vanilla) throw std::invalid_argument("expected a vanilla arch");
  arch.validate();
  if (values_.size() != count_params(arch)) {
    throw std::invalid_argument("vanilla circuit parameter count mismatch");
  }
}

ReuploadVqcParams::ReuploadVqcParams(int n_qubits, int n_layers)
    : n_qubits_(n_qubits), n_layers_(n_layers) {
  arch().validate();
  values_.assign(count_params(arch()), 0.0);
}

ReuploadVqcParams::ReuploadVqcParams(const VqcArch& arch, std::vector<double> flat)
    : n_qubits_(arch.n_qubits), n_layers_(arch.n_layers), values_(std::move(flat)) {
  if (arch.kind != VqcKind::Reuploading) {
    throw std::invalid_argument("expected a re-uploading arch");
  }
  arch.validate();
  if (values_.size() != count_params(arch)) {
    throw std::invalid_argument("re-uploading circuit parameter count mismatch");
  }
}

VqcArch arch_of(const VqcParams& params) {
  return std::visit([](const auto& p) { return p.arch(); }, params);
}

std::span<const double> flat_of(const VqcParams& params) {
  return std::visit([](const auto& p) { return p.flat(); }, params);
}

std::span<double> flat_of(VqcParams& params) {
  return std::visit([](auto& p) { return p.flat(); }, params);
}

VqcParams make_params(const VqcArch& arch, std::vector<double> flat) {
  if (arch.kind == VqcKind::Vanilla) return VanillaVqcParams(arch, std::move(flat));
  return ReuploadVqcParams(arch, std::move(flat));
}

VqcParams init_params(const VqcArch& arch, std::mt19937_64& rng) {
  arch.validate();
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  if (arch.kind == VqcKind::Vanilla) {
    VanillaVqcParams p(arch.n_qubits, arch.n_layers);
    for (double& v : p.flat()) v = angle(rng);
    return p;
  }
  ReuploadVqcParams p(arch.n_qubits, arch.n_layers);
  for (double& v : p.flat()) v = angle(rng);
  for (int l = 0; l < arch.n_layers; ++l) {
    for (int q = 0; q < arch.n_qubits; ++q) p.lambda(l, q) = 1.0;
  }
  return p;
}

std::vector<double> forward_vanilla(const VanillaVqcParams& params,
                                    std::span<const double> s) {
  return forward(VqcParams(params), s);
}

std::vector<double> forward_reuploading(const ReuploadVqcParams& params,
                                        std::span<const double> s) {
  return forward(VqcParams(params), s);
}

std::vector<double> forward(const VqcParams& params, std::span<const double> s) {
  const int n = arch_of(params).n_qubits;
  return measure(run(compile(params, s), n), n);
}

std::vector<GateOp> to_gate_ops(const VqcParams& params, std::span<const double> s) {
  const VqcArch arch = arch_of(params);
  check_dims(arch, s);
  const int n = arch.n_qubits;
  std::vector<GateOp> ops;
  auto ring = [&] {
    if (n < 2) return;
    for (int q = 0; q < n; ++q) ops.push_back(GateOp::cnot(q, (q + 1) % n));
  };
  if (const auto* v = std::get_if<VanillaVqcParams>(&params)) {
    for (int q = 0; q < n; ++q) ops.push_back(GateOp::rx(q, s[q]));
    for (int l = 0; l < arch.n_layers; ++l) {
      for (int q = 0; q < n; ++q) {
        ops.push_back(GateOp::rot(q, v->angle(l, q, 0), v->angle(l, q, 1), v->angle(l, q, 2)));
      }
      ring();
    }
    return ops;
  }
  const auto& r = std::get<ReuploadVqcParams>(params);
  for (int l = 0; l < arch.n_layers; ++l) {
    for (int q = 0; q < n; ++q) {
      ops.push_back(GateOp::rot(q, r.layer_angle(l, q, 0), r.layer_angle(l, q, 1),
                                r.layer_angle(l, q, 2)));
    }
    ring();
    for (int q = 0; q < n; ++q) ops.push_back(GateOp::rx(q, r.lambda(l, q) * s[q]));
  }
  for (int q = 0; q < n; ++q) {
    ops.push_back(GateOp::rot(q, r.final_angle(q, 0), r.final_angle(q, 1), r.final_angle(q, 2)));
  }
  ring();
  return ops;
}

VqcGradient grad_parameter_shift(const VqcParams& params, std::span<const double> s,
                                 std::span<const double> upstream) {
  const VqcArch arch = arch_of(params);
  check_upstream(arch, upstream);
  std::vector<Primitive> ops = compile(params, s);
  const int n = arch.n_qubits;
  VqcGradient grad(count_params(arch), 0.0);
  constexpr double kShift = std::numbers::pi / 2;
  for (Primitive& op : ops) {
    if (op.param < 0) continue;
    const double original = op.angle;
    set_angle(op, original + kShift);
    const double plus = weighted_z(run(ops, n), n, upstream);
    set_angle(op, original - kShift);
    const double minus = weighted_z(run(ops, n), n, upstream);
    set_angle(op, original);
    grad[op.param] += op.scale * 0.5 * (plus - minus);
  }
  return grad;
}

VqcGradient grad_adjoint(const VqcParams& params, std::span<const double> s,
                         std::span<const double> upstream) {
  const VqcArch arch = arch_of(params);
  check_upstream(arch, upstream);
  const std::vector<Primitive> ops = compile(params, s);
  const int n = arch.n_qubits;
  const std::size_t dim = std::size_t{1} << n;

  std::vector<Complex> psi = run(ops, n);
  // lambda = H psi with H = sum_j upstream_j Z_j, diagonal in the basis.
  std::vector<Complex> lambda(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    double h = 0.0;
    for (int q = 0; q < n; ++q) {
      const bool one = (i >> (n - 1 - q)) & 1U;
      h += one ? -upstream[q] : upstream[q];
    }
    lambda[i] = h * psi[i];
  }

  VqcGradient grad(count_params(arch), 0.0);
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    const Primitive& op = *it;
    if (op.param >= 0) {
      // d/dtheta <psi|H|psi> = Im <lambda| P |psi> for exp(-i theta P / 2).
      grad[op.param] += op.scale * generator_overlap_imag(lambda, psi, n, op);
    }
    apply_inverse(psi, n, op);
    apply_inverse(lambda, n, op);
  }
  return grad;
}

}  // namespace qsac
