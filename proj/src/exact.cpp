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

#include "onionvqe/exact.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace onionvqe {

namespace {
using cd = std::complex<double>;

// P |k> = phase(k) |k ^ mask_x>, phase(k) = i^ny * (-1)^popcount(k & mask_zy).
struct TermMasks {
  std::uint64_t mask_x = 0;   // X and Y sites (bit flips)
  std::uint64_t mask_zy = 0;  // Z and Y sites (sign)
  cd base_phase{1.0, 0.0};    // i^(#Y)
  cd coeff;
};

TermMasks compile_term(const PauliTerm& t) {
  TermMasks m;
  int ny = 0;
  for (int q = 0; q < t.string.n_qubits(); ++q) {
    const Pauli p = t.string.ops[static_cast<std::size_t>(q)];
    const std::uint64_t bit = std::uint64_t{1} << q;
    if (p == Pauli::X || p == Pauli::Y) m.mask_x |= bit;
    if (p == Pauli::Z || p == Pauli::Y) m.mask_zy |= bit;
    if (p == Pauli::Y) ++ny;
  }
  switch (ny & 3) {
    case 0: m.base_phase = {1, 0}; break;
    case 1: m.base_phase = {0, 1}; break;
    case 2: m.base_phase = {-1, 0}; break;
    default: m.base_phase = {0, -1}; break;
  }
  m.coeff = t.coefficient;
  return m;
}
}  // namespace

Eigen::MatrixXcd pauli_sum_to_matrix(const PauliSum& h) {
  if (h.n_qubits > 14)
    throw std::invalid_argument("pauli_sum_to_matrix: dense guard, n_qubits must be <= 14");
  const std::size_t dim = std::size_t{1} << h.n_qubits;
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  for (const auto& t : h.terms) {
    const TermMasks m = compile_term(t);
    for (std::size_t k = 0; k < dim; ++k) {
      const cd phase = (std::popcount(k & m.mask_zy) & 1) ? -m.base_phase : m.base_phase;
      M(static_cast<Eigen::Index>(k ^ m.mask_x), static_cast<Eigen::Index>(k)) += m.coeff * phase;
    }
  }
  return M;
}

Spectrum ground(const PauliSum& h, double degeneracy_tol) {
  const Eigen::MatrixXcd M = pauli_sum_to_matrix(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(M);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("ground: eigensolver failed");
  Spectrum s;
  s.energies = solver.eigenvalues();
  const double e0 = s.energies(0);
  Eigen::Index deg = 1;
  while (deg < s.energies.size() && s.energies(deg) - e0 <= degeneracy_tol) ++deg;
  s.ground_space = solver.eigenvectors().leftCols(deg);
  return s;
}

double fidelity(const Statevector& psi, const Spectrum& spectrum) {
  if (std::abs(psi.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("fidelity: state is not normalized");
  if (static_cast<Eigen::Index>(psi.dim()) != spectrum.ground_space.rows())
    throw std::invalid_argument("fidelity: dimension mismatch");
  const Eigen::Map<const Eigen::VectorXcd> v(psi.amps.data(),
                                             static_cast<Eigen::Index>(psi.dim()));
  return (spectrum.ground_space.adjoint() * v).squaredNorm();
}

double expectation_exact(const PauliSum& h, const Statevector& psi) {
  if (psi.n_qubits != h.n_qubits)
    throw std::invalid_argument("expectation_exact: dimension mismatch");
  if (std::abs(psi.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("expectation_exact: state is not normalized");
  cd total{};
  const std::size_t dim = psi.dim();
  for (const auto& t : h.terms) {
    const TermMasks m = compile_term(t);
    cd acc{};
    for (std::size_t k = 0; k < dim; ++k) {
      const cd phase = (std::popcount(k & m.mask_zy) & 1) ? -m.base_phase : m.base_phase;
      acc += std::conj(psi.amps[k ^ m.mask_x]) * phase * psi.amps[k];
    }
    total += m.coeff * acc;
  }
  if (std::abs(total.imag()) > 1e-10)
    throw std::runtime_error("expectation_exact: non-Hermitian operator (imag part " +
                             std::to_string(total.imag()) + ")");
  return total.real();
}

double expectation_total_number(const Statevector& psi) {
  double n = 0;
  for (std::size_t k = 0; k < psi.dim(); ++k)
    n += static_cast<double>(std::popcount(k)) * std::norm(psi.amps[k]);
  return n;
}

double overlap_fidelity(const Statevector& a, const Statevector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("overlap_fidelity: dimension mismatch");
  cd ov{};
  for (std::size_t k = 0; k < a.dim(); ++k) ov += std::conj(a.amps[k]) * b.amps[k];
  return std::norm(ov);
}

}  // namespace onionvqe
