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

#include <Eigen/Dense>

#include "onionvqe/aim.hpp"
#include "onionvqe/sim.hpp"

namespace onionvqe {

/// Converged mean-field orbitals over the full spin-orbital space (spin
/// mixing allowed); columns sorted by orbital energy.
struct OrbitalCoeffs {
  Eigen::MatrixXcd c;
  Eigen::VectorXd orbital_energies;
  int n_electrons = 0;
  double scf_energy = 0.0;  // eV
};

struct GhfOptions {
  int max_iters = 5000;
  double density_tol = 1e-10;   // max |D_new - D| convergence criterion
  double mixing = 0.3;          // linear mixing weight of the new density (no-DIIS fallback)
  bool use_diis = true;         // Pulay acceleration, subspace size 8
  int restarts = 0;             // extra seeded random starts; lowest energy wins
  std::uint64_t restart_seed = 20240u;
};

/// Self-consistent generalized Hartree-Fock for the AIM: Fock operator =
/// one-body matrix + direct/exchange decoupling of U n0up n0down over the
/// full one-particle density matrix. Throws std::runtime_error carrying the
/// last residual if the loop does not converge.
OrbitalCoeffs ghf_solve(const AimParams& params, int n_electrons, const GhfOptions& opts = {});

/// Determinant state of the occupied orbitals as a statevector: the
/// amplitude of the basis state with occupied qubit set S equals the
/// determinant of the occupied-column submatrix on the modes of S (qubits
/// ascending), matching the Jordan-Wigner sign convention.
Statevector slater_statevector(const OrbitalCoeffs& coeffs, const QubitOrdering& ordering);

}  // namespace onionvqe
