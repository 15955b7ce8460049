// Copyright 2025-2026 The onionvqe developers
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

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "onionvqe/sim.hpp"

namespace onionvqe {

enum class Entangler : std::uint8_t { CZ, CX };

/// Layered hardware-friendly ansatz: one leading Ry column, then n_layers
/// repetitions of [entangler column, Ry column]. Parameter count is
/// n_qubits * (n_layers + 1).
struct AnsatzSpec {
  int n_qubits = 0;
  int n_layers = 1;
  Entangler entangler = Entangler::CZ;
  std::vector<std::pair<int, int>> entangling_map;  // empty = linear map

  static AnsatzSpec linear(int n_qubits, int n_layers, Entangler e = Entangler::CZ);

  int n_params() const { return n_qubits * (n_layers + 1); }
  std::vector<std::pair<int, int>> effective_map() const;
  void validate() const;
};

enum class InitKind : std::uint8_t { Onion, Random, NearZero, Pi };

struct InitStrategy {
  InitKind kind = InitKind::Onion;
  std::uint64_t seed = 0;
  double near_zero_scale = 0.01;  // radians, NearZero only
};

Circuit build_ansatz(const AnsatzSpec& spec);

/// Initial parameter vector for the strategy. Onion draws the first Ry
/// column uniformly from [0, 2pi), negates it into the last column and zeros
/// everything between, so the circuit unitary starts as the exact identity;
/// it requires an even layer count (the entangler columns must cancel
/// pairwise) and is rejected otherwise.
std::vector<double> init_params(const AnsatzSpec& spec, const InitStrategy& strategy);

/// Full 2^n unitary assembled column by column (test oracle; n <= 10).
Eigen::MatrixXcd circuit_unitary(const Circuit& c, std::span<const double> params);

}  // namespace onionvqe
