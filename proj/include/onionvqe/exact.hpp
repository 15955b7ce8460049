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

#include "onionvqe/pauli.hpp"
#include "onionvqe/sim.hpp"

namespace onionvqe {

/// Dense 2^n x 2^n matrix of the operator; qubit 0 is the lowest-order
/// tensor factor (bit 0 of the basis-state index). Guarded at n <= 14.
Eigen::MatrixXcd pauli_sum_to_matrix(const PauliSum& h);

/// Full eigensolve result with a degeneracy-aware ground space.
struct Spectrum {
  Eigen::VectorXd energies;       ///< ascending, eV
  Eigen::MatrixXcd ground_space;  ///< orthonormal columns spanning the lowest eigenspace

  double e0() const { return energies(0); }
  int degeneracy() const { return static_cast<int>(ground_space.cols()); }
};

/// Dense exact diagonalization; ground_space spans every eigenvector within
/// degeneracy_tol of the minimum.
Spectrum ground(const PauliSum& h, double degeneracy_tol = 1e-8);

/// Squared norm of the projection of psi onto the ground space; reduces to
/// |<psi0|psi>|^2 when non-degenerate. psi must be normalized (1e-8).
double fidelity(const Statevector& psi, const Spectrum& spectrum);

/// <psi|H|psi> evaluated term by term (no dense matrix); real part returned,
/// imaginary part asserted below 1e-10.
double expectation_exact(const PauliSum& h, const Statevector& psi);

/// Total-electron-number expectation <psi|sum_q n_q|psi>.
double expectation_total_number(const Statevector& psi);

/// Fidelity of a basis-independent statevector pair |<a|b>|^2.
double overlap_fidelity(const Statevector& a, const Statevector& b);

}  // namespace onionvqe
