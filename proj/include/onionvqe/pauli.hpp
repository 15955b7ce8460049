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
#include <string>
#include <vector>

#include "onionvqe/aim.hpp"

namespace onionvqe {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// Tensor product of single-qubit Paulis; ops[q] is the letter on qubit q.
struct PauliString {
  std::vector<Pauli> ops;

  int n_qubits() const { return static_cast<int>(ops.size()); }
  bool is_identity() const;
  std::string to_string() const;           // e.g. "IXXI", index 0 leftmost
  static PauliString identity(int n);
  static PauliString from_string(const std::string& s);
  bool operator==(const PauliString&) const = default;
  auto operator<=>(const PauliString&) const = default;
};

struct PauliTerm {
  std::complex<double> coefficient;
  PauliString string;
};

/// Canonical qubit operator: terms sorted by string, one term per string,
/// coefficients above the drop tolerance. The scalar offset rides on the
/// all-identity string.
struct PauliSum {
  std::vector<PauliTerm> terms;
  int n_qubits = 0;

  /// Merges duplicate strings, drops |coeff| <= drop_tol, sorts.
  static PauliSum canonicalize(std::vector<PauliTerm> terms, int n_qubits,
                               double drop_tol = 1e-12);

  /// Largest |Im coeff| over the terms; ~0 for a Hermitian operator.
  double max_imag_coefficient() const;
};

/// Maps second-quantized terms onto qubits. Ladder operators carry a Z string
/// on every qubit with index lower than the target under `ordering`, with
/// c+ = (X - iY)/2 and c = (X + iY)/2 on the target (|1> = occupied).
PauliSum jordan_wigner(const std::vector<FermionTerm>& terms, const QubitOrdering& ordering,
                       double drop_tol = 1e-12);

/// Number of stored terms, identity included.
std::size_t count_pauli_strings(const PauliSum& h);

/// Partition of the non-identity terms into simultaneously measurable sets,
/// one per single-qubit basis.
struct MeasurementGroups {
  struct Group {
    Pauli basis;                            // X, Y or Z
    std::vector<std::size_t> term_indices;  // into PauliSum::terms
  };
  std::vector<Group> groups;
};

/// Requires every non-identity term to use a single letter besides I; a
/// mixed-letter string means the operator cannot be estimated with three
/// all-qubit rotations and is rejected with std::invalid_argument.
MeasurementGroups group_measurement_bases(const PauliSum& h);

}  // namespace onionvqe
