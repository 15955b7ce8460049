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

// Test-only reference implementations, deliberately independent of the
// production Jordan-Wigner / gate-application code paths: second-quantized
// operators act on occupation-number basis states with explicit sign
// bookkeeping, and circuit unitaries are assembled from Kronecker products.

#pragma once

#include <Eigen/Dense>

#include "onionvqe/aim.hpp"
#include "onionvqe/sim.hpp"

namespace onionvqe::oracle {

/// Dense Hamiltonian in the occupation basis; bit q of the basis index is
/// the occupation of the mode assigned to qubit q by `ordering`. Signs come
/// from counting occupied modes below the target, never from Pauli algebra.
Eigen::MatrixXcd fock_hamiltonian_matrix(const std::vector<FermionTerm>& terms,
                                         const QubitOrdering& ordering);

/// Total-occupation operator (diagonal).
Eigen::MatrixXcd number_operator_matrix(int n_qubits);

/// Full unitary of a single bound gate via Kronecker products.
Eigen::MatrixXcd gate_unitary(const Gate& g, int n_qubits);

/// Product of per-gate unitaries (StatePrep not supported here).
Eigen::MatrixXcd circuit_unitary_product(const Circuit& c, std::span<const double> params);

/// <psi|M|psi> with a dense matrix.
double matrix_expectation(const Eigen::MatrixXcd& m, const Statevector& psi);

}  // namespace onionvqe::oracle
