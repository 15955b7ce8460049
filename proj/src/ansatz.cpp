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

#include "onionvqe/ansatz.hpp"

#include <numbers>
#include <stdexcept>

#include "onionvqe/rng.hpp"

namespace onionvqe {

AnsatzSpec AnsatzSpec::linear(int n_qubits, int n_layers, Entangler e) {
  AnsatzSpec s;
  s.n_qubits = n_qubits;
  s.n_layers = n_layers;
  s.entangler = e;
  return s;
}

std::vector<std::pair<int, int>> AnsatzSpec::effective_map() const {
  if (!entangling_map.empty()) return entangling_map;
  std::vector<std::pair<int, int>> m;
  for (int q = 0; q + 1 < n_qubits; ++q) m.emplace_back(q, q + 1);
  return m;
}

void AnsatzSpec::validate() const {
  if (n_qubits < 1) throw std::invalid_argument("AnsatzSpec: n_qubits must be >= 1");
  if (n_layers < 1) throw std::invalid_argument("AnsatzSpec: n_layers must be >= 1");
  for (const auto& [a, b] : effective_map()) {
    if (a < 0 || b < 0 || a >= n_qubits || b >= n_qubits || a == b)
      throw std::invalid_argument("AnsatzSpec: invalid entangling pair");
  }
}

Circuit build_ansatz(const AnsatzSpec& spec) {
  spec.validate();
  Circuit c;
  c.n_qubits = spec.n_qubits;
  c.n_params = spec.n_params();
  const auto pairs = spec.effective_map();
  int slot = 0;
  auto ry_column = [&] {
    for (int q = 0; q < spec.n_qubits; ++q) c.gates.push_back(Gate::ry(q, slot++));
  };
  ry_column();
  for (int layer = 0; layer < spec.n_layers; ++layer) {
    for (const auto& [a, b] : pairs)
      c.gates.push_back(spec.entangler == Entangler::CZ ? Gate::cz(a, b) : Gate::cx(a, b));
    ry_column();
  }
  return c;
}

std::vector<double> init_params(const AnsatzSpec& spec, const InitStrategy& strategy) {
  spec.validate();
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const int n = spec.n_qubits;
  std::vector<double> theta(static_cast<std::size_t>(spec.n_params()), 0.0);
  Rng rng(strategy.seed);
  switch (strategy.kind) {
    case InitKind::Onion: {
      if (spec.n_layers % 2 != 0)
        throw std::invalid_argument(
            "init_params: onion initialization needs an even layer count; the entangler "
            "columns between the first and last Ry columns must cancel pairwise");
      for (int q = 0; q < n; ++q) {
        const double r = rng.uniform(0.0, two_pi);
        theta[static_cast<std::size_t>(q)] = r;
        theta[theta.size() - static_cast<std::size_t>(n) + static_cast<std::size_t>(q)] = -r;
      }
      break;
    }
    case InitKind::Random:
      for (auto& t : theta) t = rng.uniform(0.0, two_pi);
      break;
    case InitKind::NearZero:
      for (auto& t : theta)
        t = rng.uniform(-strategy.near_zero_scale, strategy.near_zero_scale);
      break;
    case InitKind::Pi:
      for (auto& t : theta) t = std::numbers::pi;
      break;
  }
  return theta;
}

Eigen::MatrixXcd circuit_unitary(const Circuit& c, std::span<const double> params) {
  if (c.n_qubits > 10)
    throw std::invalid_argument("circuit_unitary: dense guard, n_qubits must be <= 10");
  const std::size_t dim = std::size_t{1} << c.n_qubits;
  Eigen::MatrixXcd U(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < dim; ++k) {
    const Statevector col = run_circuit(c, params, Statevector::basis_state(c.n_qubits, k));
    for (std::size_t r = 0; r < dim; ++r)
      U(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = col.amps[r];
  }
  return U;
}

}  // namespace onionvqe
