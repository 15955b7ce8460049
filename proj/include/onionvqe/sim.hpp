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

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "onionvqe/pauli.hpp"

namespace onionvqe {

/// Pure state on n qubits. Basis-state index bit k encodes qubit k,
/// everywhere in this project (state vectors, density matrices, sampling).
struct Statevector {
  std::vector<std::complex<double>> amps;
  int n_qubits = 0;

  std::size_t dim() const { return amps.size(); }
  double norm() const;

  static Statevector zero_state(int n);
  static Statevector basis_state(int n, std::uint64_t index);
};

enum class GateKind : std::uint8_t { Ry, CZ, CX, X, H, Sdg, StatePrep };

struct Gate {
  GateKind kind{};
  int q0 = -1;          // target (Ry/X/H/Sdg), first qubit (CZ), control (CX)
  int q1 = -1;          // second qubit (CZ), target (CX)
  int param_slot = -1;  // Ry: >= 0 binds params[slot], -1 uses `angle`
  double angle = 0.0;
  std::shared_ptr<const Statevector> prep;  // StatePrep payload, loaded exactly

  static Gate ry(int q, int slot) { return {GateKind::Ry, q, -1, slot, 0.0, nullptr}; }
  static Gate ry_fixed(int q, double angle) { return {GateKind::Ry, q, -1, -1, angle, nullptr}; }
  static Gate cz(int a, int b) { return {GateKind::CZ, a, b, -1, 0.0, nullptr}; }
  static Gate cx(int control, int target) { return {GateKind::CX, control, target, -1, 0.0, nullptr}; }
  static Gate x(int q) { return {GateKind::X, q, -1, -1, 0.0, nullptr}; }
  static Gate h(int q) { return {GateKind::H, q, -1, -1, 0.0, nullptr}; }
  static Gate sdg(int q) { return {GateKind::Sdg, q, -1, -1, 0.0, nullptr}; }
  static Gate state_prep(std::shared_ptr<const Statevector> v) {
    return {GateKind::StatePrep, -1, -1, -1, 0.0, std::move(v)};
  }
};

/// Ordered gate list with named Ry parameter slots.
struct Circuit {
  int n_qubits = 0;
  int n_params = 0;
  std::vector<Gate> gates;
};

/// Applies one bound gate in place (param_slot must be -1 for Ry).
void apply_gate(Statevector& state, const Gate& g);

/// Applies the circuit with slots bound to `params` (size must match).
Statevector run_circuit(const Circuit& c, std::span<const double> params, const Statevector& init);

/// Exact Born-rule probabilities |amps|^2.
std::vector<double> probabilities(const Statevector& state);

/// Draws `shots` basis-state indices by inverse CDF over `probs`.
std::vector<std::uint64_t> sample_counts(std::span<const double> probs, int shots,
                                         std::uint64_t seed);

struct ShotResult {
  double estimate = 0.0;  // eV
  int shots_per_basis = 0;
  std::uint64_t rng_seed = 0;
};

/// Shot-based energy estimate: for each measurement group, rotates every
/// qubit into the group basis (H for X, Sdg then H for Y, nothing for Z),
/// samples bitstrings from the exact distribution and averages term parities.
/// Deterministic given `seed`.
ShotResult expectation_shots(const PauliSum& h, const MeasurementGroups& groups,
                             const Statevector& state, int shots, std::uint64_t seed);

}  // namespace onionvqe
