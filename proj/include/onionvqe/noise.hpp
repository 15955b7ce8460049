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

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace onionvqe {

/// Row-stochastic 2x2 confusion matrix: m[actual][reported].
struct ReadoutConfusion {
  std::array<std::array<double, 2>, 2> m{{{1.0, 0.0}, {0.0, 1.0}}};
};

struct QubitProps {
  double t1_us = 0.0;
  double t2_us = 0.0;
  ReadoutConfusion readout;
  double gate1_error = 0.0;        // depolarizing probability
  double gate1_duration_ns = 0.0;
};

struct EdgeProps {
  int a = -1, b = -1;
  double gate2_error = 0.0;
  double gate2_duration_ns = 0.0;
};

/// Calibration-style device description: per-qubit decoherence and readout,
/// per-edge two-qubit gate properties, undirected coupling map.
struct DeviceDescription {
  std::vector<QubitProps> qubits;
  std::vector<EdgeProps> edges;

  int n_qubits() const { return static_cast<int>(qubits.size()); }
  bool has_edge(int a, int b) const;
  const EdgeProps& edge(int a, int b) const;
  void validate() const;  // T2 <= 2 T1, probabilities in range, rows sum to 1
};

/// Loads and validates the JSON schema
/// {qubits: [{t1_us, t2_us, readout, gate_1q: {error, duration_ns}}],
///  edges: [{pair: [a,b], gate_2q: {error, duration_ns}}]}.
DeviceDescription load_device(const std::string& path);

/// The approximate 27-qubit device shipped with the project.
DeviceDescription bundled_device();

/// Logical qubit -> device qubit assignment; consecutive logical qubits must
/// sit on coupled device qubits so the linear entangling map embeds directly.
struct Layout {
  std::vector<int> map;
};

/// Validates a requested layout against the coupling map, or (when absent)
/// greedily picks the coupled path with the smallest summed two-qubit error.
Layout embed_layout(const DeviceDescription& desc, int n_logical,
                    const std::optional<Layout>& requested = std::nullopt);

using Superop1 = Eigen::Matrix<std::complex<double>, 4, 4>;
using Superop2 = Eigen::Matrix<std::complex<double>, 16, 16>;

/// Kraus sets for the channel building blocks (all CPTP).
std::vector<Eigen::Matrix2cd> kraus_depolarizing1(double p);
std::vector<Eigen::Matrix4cd> kraus_depolarizing2(double p);
std::vector<Eigen::Matrix2cd> kraus_thermal_relaxation(double t1_us, double t2_us,
                                                       double duration_ns);

/// Superoperator of a Kraus set, rho' = sum_k K rho K^dag, acting on the
/// vectorized (row bit, col bit) single- or two-qubit subspace.
Superop1 superop_from_kraus1(const std::vector<Eigen::Matrix2cd>& kraus);
Superop2 superop_from_kraus2(const std::vector<Eigen::Matrix4cd>& kraus);
Superop1 superop_from_unitary1(const Eigen::Matrix2cd& u);
Superop2 superop_from_unitary2(const Eigen::Matrix4cd& u);

/// Per-logical-site error channels: depolarizing then thermal relaxation
/// after every gate, readout confusion at measurement. Identity everywhere
/// when built from a noiseless device.
///
/// Two-qubit channels are stored in factored form (depolarizing probability
/// plus one relaxation superoperator per qubit) so the density simulator can
/// apply them as cheap passes; the fused 16x16 superoperator is kept for
/// verification.
struct NoiseModel {
  struct EdgeChannel {
    double dep_p = 0.0;
    Superop1 relax_a = Superop1::Identity();
    Superop1 relax_b = Superop1::Identity();
    Superop2 fused = Superop2::Identity();
  };

  int n_logical = 0;
  std::vector<Superop1> gate1_channel;                     // per logical qubit
  std::map<std::pair<int, int>, EdgeChannel> gate2_channel;  // key (min,max) logical pair
  std::vector<ReadoutConfusion> readout;                   // per logical qubit
  Layout layout;

  bool is_trivial = false;  // all channels identity, readout exact
  const EdgeChannel& edge_channel(int a, int b) const;

  /// No-op model for noiseless density-matrix runs.
  static NoiseModel ideal(int n_logical);
};

NoiseModel build_noise_model(const DeviceDescription& desc, const Layout& layout);

}  // namespace onionvqe
