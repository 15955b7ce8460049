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
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace onionvqe {

/// Single-impurity Anderson model on a chain: one interacting impurity site
/// (index 0) plus n_b non-interacting bath sites, all energies in eV.
///
/// Spin-orbital convention fixed project-wide: mode 2*site + spin, with
/// spin 0 = up and spin 1 = down.
struct AimParams {
  int n_b = 0;               ///< number of bath sites (1..4 for the bundled sets)
  double eps0 = 0.0;         ///< impurity level
  std::vector<double> eps;   ///< bath site energies, size n_b
  std::vector<double> v;     ///< chain hoppings, size n_b
  double u = 0.0;            ///< on-impurity Hubbard interaction

  int n_modes() const { return 2 * (n_b + 1); }

  /// Throws std::invalid_argument on size mismatch, n_b < 1, or non-finite values.
  void validate() const;
};

/// Parses an array of {n_b, eps0, eps[], v[], u} objects.
std::vector<AimParams> load_aim_params(const std::string& path);

/// The parameter sets shipped with the project (data/aim_params.json).
const std::vector<AimParams>& bundled_aim_params();

/// Bundled parameter set with the given bath count (1..4).
const AimParams& bundled_aim_row(int n_b);

enum class FermionOp : std::uint8_t { Create, Annihilate };

/// Normal-ordered second-quantized term; 2 ops (one-body) or 4 ops
/// (the on-impurity interaction and its orbital-rotated image).
struct FermionTerm {
  std::complex<double> coefficient;
  std::vector<std::pair<int, FermionOp>> ops;
};

/// Bijection from spin-orbital mode index to qubit index.
struct QubitOrdering {
  std::vector<int> perm;

  int n_qubits() const { return static_cast<int>(perm.size()); }
  int qubit_of(int mode) const { return perm.at(static_cast<std::size_t>(mode)); }
  int mode_of(int qubit) const;

  /// Throws std::invalid_argument if perm is not a permutation.
  void validate() const;
};

/// Impurity spins on qubits 0/1, bath site i spins on qubits 2i/2i+1.
QubitOrdering default_ordering(int n_b);

/// Chain order: [bath n_b up, ..., bath 1 up, imp up, imp down, bath 1 down,
/// ..., bath n_b down]. Every hopping and the interaction touch adjacent
/// qubits, which is what keeps the qubit Hamiltonian measurable in three
/// all-qubit basis rotations.
QubitOrdering chain_ordering(int n_b);

/// Second-quantized AIM Hamiltonian:
///   sum_sigma sum_i [ eps_i n_{i,sigma} + V_i (c+_{i,sigma} c_{i-1,sigma} + h.c.) ]
///   + eps0 (n_{0,up} + n_{0,down}) + U n_{0,up} n_{0,down}
/// Terms with exactly zero coefficient are dropped.
std::vector<FermionTerm> build_aim_hamiltonian(const AimParams& params);

/// One-body part as a dense matrix over spin-orbital modes (real symmetric).
Eigen::MatrixXd one_body_matrix(const AimParams& params);

/// Rewrites the Hamiltonian in a rotated orbital basis. One-body terms map as
/// h' = C^dag h C; each four-operator term U c+_a c+_b c_b c_a expands into
/// the full four-index tensor over the new modes. `coeffs` must be unitary
/// (||C^dag C - I||_max <= 1e-8). Coefficients below drop_tol are removed.
std::vector<FermionTerm> rotate_to_mo_basis(const std::vector<FermionTerm>& terms,
                                            const Eigen::MatrixXcd& coeffs,
                                            double drop_tol = 1e-12);

}  // namespace onionvqe
