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

#include <Eigen/Dense>

#include "onionvqe/exact.hpp"
#include "onionvqe/noise.hpp"
#include "onionvqe/sim.hpp"

namespace onionvqe {

struct DensityMatrix {
  Eigen::MatrixXcd rho;
  int n_qubits = 0;

  double trace_real() const { return rho.trace().real(); }
  static DensityMatrix from_statevector(const Statevector& psi);
};

/// Applies a one-qubit channel superoperator at qubit q (vectorized
/// (row bit, col bit) convention, index = row_bit*2 + col_bit).
void apply_superop1(DensityMatrix& dm, int q, const Superop1& s);

/// Two-qubit channel at (q_first, q_second); block index uses q_first as the
/// high bit on both the row and column side.
void apply_superop2(DensityMatrix& dm, int q_first, int q_second, const Superop2& s);

/// Density-matrix circuit execution: after every gate the corresponding
/// noise channel from the model is applied (state preparation is loaded
/// noiselessly). Guarded at n <= 12 qubits.
DensityMatrix run_circuit_noisy(const Circuit& c, std::span<const double> params,
                                const DensityMatrix& init, const NoiseModel& noise);

/// Diagonal of rho pushed through the per-qubit readout confusion.
std::vector<double> measurement_probabilities(const DensityMatrix& dm, const NoiseModel& noise);

/// Shot-based energy estimate from a noisy state: per measurement group the
/// basis rotations are applied with their noise channels, then bitstrings
/// are drawn from the confused diagonal.
ShotResult expectation_shots_noisy(const PauliSum& h, const MeasurementGroups& groups,
                                   const DensityMatrix& state, const NoiseModel& noise, int shots,
                                   std::uint64_t seed);

/// Ground-space occupation Tr(P_gs rho) (diagnostic fidelity of a mixed state).
double fidelity_density(const DensityMatrix& dm, const Spectrum& spectrum);

}  // namespace onionvqe
