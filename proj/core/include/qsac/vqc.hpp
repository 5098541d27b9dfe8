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

#include <cstddef>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include "qsac/qstate.hpp"

namespace qsac {

enum class VqcKind { Vanilla, Reuploading };

/// Circuit shape. For Vanilla, n_layers counts variational layers after the
/// encoder; for Reuploading it counts encoding+variational blocks, with one
/// extra closing variational layer on top.
struct VqcArch {
  VqcKind kind = VqcKind::Reuploading;
  int n_qubits = 3;
  int n_layers = 2;

  void validate() const;
  bool operator==(const VqcArch&) const = default;
};

std::size_t count_params(const VqcArch& arch);

/// Angles [n_layers][n_qubits][3], flattened row-major.
class VanillaVqcParams {
 public:
  VanillaVqcParams(int n_qubits, int n_layers);
  VanillaVqcParams(const VqcArch& arch, std::vector<double> flat);

  VqcArch arch() const { return {VqcKind::Vanilla, n_qubits_, n_layers_}; }
  double& angle(int layer, int qubit, int k) { return values_[index(layer, qubit, k)]; }
  double angle(int layer, int qubit, int k) const { return values_[index(layer, qubit, k)]; }

  std::span<const double> flat() const { return values_; }
  std::span<double> flat() { return values_; }

 private:
  std::size_t index(int layer, int qubit, int k) const {
    return (static_cast<std::size_t>(layer) * n_qubits_ + qubit) * 3 + k;
  }

  int n_qubits_;
  int n_layers_;
  std::vector<double> values_;
};

/// Flat layout: all layer angles [n_layers][n_qubits][3], then the input
/// scales [n_layers][n_qubits], then the closing layer's angles
/// [n_qubits][3].
class ReuploadVqcParams {
 public:
  ReuploadVqcParams(int n_qubits, int n_layers);
  ReuploadVqcParams(const VqcArch& arch, std::vector<double> flat);

  VqcArch arch() const { return {VqcKind::Reuploading, n_qubits_, n_layers_}; }

  double& layer_angle(int layer, int qubit, int k) { return values_[angle_index(layer, qubit, k)]; }
  double layer_angle(int layer, int qubit, int k) const { return values_[angle_index(layer, qubit, k)]; }
  double& lambda(int layer, int qubit) { return values_[lambda_index(layer, qubit)]; }
  double lambda(int layer, int qubit) const { return values_[lambda_index(layer, qubit)]; }
  double& final_angle(int qubit, int k) { return values_[final_index(qubit, k)]; }
  double final_angle(int qubit, int k) const { return values_[final_index(qubit, k)]; }

  std::span<const double> flat() const { return values_; }
  std::span<double> flat() { return values_; }

  std::size_t angle_index(int layer, int qubit, int k) const {
    return (static_cast<std::size_t>(layer) * n_qubits_ + qubit) * 3 + k;
  }
  std::size_t lambda_index(int layer, int qubit) const {
    return static_cast<std::size_t>(n_layers_) * n_qubits_ * 3 +
           static_cast<std::size_t>(layer) * n_qubits_ + qubit;
  }
  std::size_t final_index(int qubit, int k) const {
    return static_cast<std::size_t>(n_layers_) * n_qubits_ * 4 +
           static_cast<std::size_t>(qubit) * 3 + k;
  }

 private:
  int n_qubits_;
  int n_layers_;
  std::vector<double> values_;
};

using VqcParams = std::variant<VanillaVqcParams, ReuploadVqcParams>;

/// Gradient aligned with the owning params' flat layout.
using VqcGradient = std::vector<double>;

VqcArch arch_of(const VqcParams& params);
std::span<const double> flat_of(const VqcParams& params);
std::span<double> flat_of(VqcParams& params);
VqcParams make_params(const VqcArch& arch, std::vector<double> flat);

/// Rotation angles uniform on [-pi, pi]; input scales start at 1.
VqcParams init_params(const VqcArch& arch, std::mt19937_64& rng);

/// Encoder RX(s_i) on every wire, then per layer a ROT on every wire and a
/// CNOT ring i -> (i+1) mod n; returns <Z_i> for every wire.
std::vector<double> forward_vanilla(const VanillaVqcParams& params,
                                    std::span<const double> s);

/// Per block: ROT layer, CNOT ring, RX(lambda_i * s_i); then a closing ROT
/// layer and CNOT ring; returns <Z_i> for every wire.
std::vector<double> forward_reuploading(const ReuploadVqcParams& params,
                                        std::span<const double> s);

std::vector<double> forward(const VqcParams& params, std::span<const double> s);

/// The same circuits expressed as qstate gate ops, for the dense oracle.
std::vector<GateOp> to_gate_ops(const VqcParams& params, std::span<const double> s);

/// sum_j upstream_j * d<Z_j>/dtheta via the two-term shift rule applied to
/// every Pauli rotation of the decomposed circuit. Input scales pick up the
/// chain factor s_i.
VqcGradient grad_parameter_shift(const VqcParams& params,
                                 std::span<const double> s,
                                 std::span<const double> upstream);

/// Same contract as grad_parameter_shift, computed with one reverse sweep
/// over the simulated statevector.
VqcGradient grad_adjoint(const VqcParams& params, std::span<const double> s,
                         std::span<const double> upstream);

}  // namespace qsac
