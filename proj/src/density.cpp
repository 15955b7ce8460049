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

#include "onionvqe/density.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "onionvqe/rng.hpp"

namespace onionvqe {

namespace {
using cd = std::complex<double>;

Eigen::Matrix2cd ry_matrix(double angle) {
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  return (Eigen::Matrix2cd() << c, -s, s, c).finished();
}

Eigen::Matrix2cd gate_matrix_1q(const Gate& g) {
  switch (g.kind) {
    case GateKind::Ry: return ry_matrix(g.angle);
    case GateKind::X: return (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      return (Eigen::Matrix2cd() << r, r, r, -r).finished();
    }
    case GateKind::Sdg: return (Eigen::Matrix2cd() << 1, 0, 0, cd(0, -1)).finished();
    default: throw std::logic_error("gate_matrix_1q: not a one-qubit gate");
  }
}

// Two-qubit basis index = bit(q_first)*2 + bit(q_second).
Eigen::Matrix4cd gate_matrix_2q(const Gate& g) {
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
  if (g.kind == GateKind::CZ) {
    u(3, 3) = -1;
  } else if (g.kind == GateKind::CX) {  // q0 = control (high bit), q1 = target
    u.setZero();
    u(0, 0) = u(1, 1) = 1;
    u(2, 3) = u(3, 2) = 1;
  } else {
    throw std::logic_error("gate_matrix_2q: not a two-qubit gate");
  }
  return u;
}
}  // namespace

DensityMatrix DensityMatrix::from_statevector(const Statevector& psi) {
  DensityMatrix dm;
  dm.n_qubits = psi.n_qubits;
  const Eigen::Map<const Eigen::VectorXcd> v(psi.amps.data(),
                                             static_cast<Eigen::Index>(psi.dim()));
  dm.rho = v * v.adjoint();
  return dm;
}

void apply_superop1(DensityMatrix& dm, int q, const Superop1& s) {
  const std::size_t dim = std::size_t{1} << dm.n_qubits;
  const std::size_t step = std::size_t{1} << q;
  cd v[4], w[4];
  for (std::size_t c = 0; c < dim; ++c) {
    if (c & step) continue;
    for (std::size_t r = 0; r < dim; ++r) {
      if (r & step) continue;
      v[0] = dm.rho(r, c);
      v[1] = dm.rho(r, c + step);
      v[2] = dm.rho(r + step, c);
      v[3] = dm.rho(r + step, c + step);
      for (int i = 0; i < 4; ++i) {
        w[i] = s(i, 0) * v[0] + s(i, 1) * v[1] + s(i, 2) * v[2] + s(i, 3) * v[3];
      }
      dm.rho(r, c) = w[0];
      dm.rho(r, c + step) = w[1];
      dm.rho(r + step, c) = w[2];
      dm.rho(r + step, c + step) = w[3];
    }
  }
}

namespace {

// rho -> P rho P for the CZ phase pattern (diagonal, self-inverse)
void apply_cz_conj(DensityMatrix& dm, int a, int b) {
  const std::size_t dim = std::size_t{1} << dm.n_qubits;
  const std::uint64_t mask = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
  std::complex<double>* data = dm.rho.data();
  for (std::size_t c = 0; c < dim; ++c) {
    const bool cs = (c & mask) == mask;
    std::complex<double>* col = data + c * dim;
    for (std::size_t r = 0; r < dim; ++r)
      if (((r & mask) == mask) != cs) col[r] = -col[r];
  }
}

// rho -> U rho U^dag for the CX permutation
void apply_cx_conj(DensityMatrix& dm, int control, int target) {
  const std::size_t dim = std::size_t{1} << dm.n_qubits;
  const std::uint64_t cm = std::uint64_t{1} << control;
  const std::uint64_t tm = std::uint64_t{1} << target;
  std::complex<double>* data = dm.rho.data();
  for (std::size_t c = 0; c < dim; ++c) {  // row permutation
    std::complex<double>* col = data + c * dim;
    for (std::size_t r = 0; r < dim; ++r)
      if ((r & cm) && !(r & tm)) std::swap(col[r], col[r | tm]);
  }
  for (std::size_t c = 0; c < dim; ++c) {  // column permutation
    if (!(c & cm) || (c & tm)) continue;
    std::complex<double>* col = data + c * dim;
    std::complex<double>* swp = data + (c | tm) * dim;
    for (std::size_t r = 0; r < dim; ++r) std::swap(col[r], swp[r]);
  }
}

// two-qubit depolarizing, rho -> (1-p) rho + p Tr_pair(rho) (x) I/4
void apply_dep2(DensityMatrix& dm, int qa, int qb, double p) {
  if (p == 0.0) return;
  const std::size_t dim = std::size_t{1} << dm.n_qubits;
  const std::size_t sa = std::size_t{1} << qa;
  const std::size_t sb = std::size_t{1} << qb;
  const std::size_t mask = sa | sb;
  const std::size_t offs[4] = {0, sb, sa, sa + sb};
  std::complex<double>* data = dm.rho.data();
  for (std::size_t c = 0; c < dim; ++c) {
    if (c & mask) continue;
    for (std::size_t r = 0; r < dim; ++r) {
      if (r & mask) continue;
      std::complex<double> diag_sum{};
      for (int d = 0; d < 4; ++d) diag_sum += data[(r + offs[d]) + (c + offs[d]) * dim];
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          auto& e = data[(r + offs[a]) + (c + offs[b]) * dim];
          e *= (1.0 - p);
          if (a == b) e += 0.25 * p * diag_sum;
        }
    }
  }
}

}  // namespace

void apply_superop2(DensityMatrix& dm, int q_first, int q_second, const Superop2& s) {
  const std::size_t dim = std::size_t{1} << dm.n_qubits;
  const std::size_t s1 = std::size_t{1} << q_first;
  const std::size_t s2 = std::size_t{1} << q_second;
  const std::size_t mask = s1 | s2;
  // offset for block index (high bit = q_first)
  const std::size_t offs[4] = {0, s2, s1, s1 + s2};
  cd v[16], w[16];
  for (std::size_t c = 0; c < dim; ++c) {
    if (c & mask) continue;
    for (std::size_t r = 0; r < dim; ++r) {
      if (r & mask) continue;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) v[a * 4 + b] = dm.rho(r + offs[a], c + offs[b]);
      for (int i = 0; i < 16; ++i) {
        cd acc{};
        for (int j = 0; j < 16; ++j) acc += s(i, j) * v[j];
        w[i] = acc;
      }
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) dm.rho(r + offs[a], c + offs[b]) = w[a * 4 + b];
    }
  }
}

DensityMatrix run_circuit_noisy(const Circuit& c, std::span<const double> params,
                                const DensityMatrix& init, const NoiseModel& noise) {
  if (c.n_qubits > 12)
    throw std::invalid_argument("run_circuit_noisy: density guard, n_qubits must be <= 12");
  if (static_cast<int>(params.size()) != c.n_params)
    throw std::invalid_argument("run_circuit_noisy: parameter count mismatch");
  if (init.n_qubits != c.n_qubits || noise.n_logical != c.n_qubits)
    throw std::invalid_argument("run_circuit_noisy: size mismatch");

  DensityMatrix dm = init;
  for (const auto& g : c.gates) {
    switch (g.kind) {
      case GateKind::StatePrep: {
        if (!g.prep || g.prep->n_qubits != c.n_qubits)
          throw std::invalid_argument("run_circuit_noisy: bad StatePrep payload");
        dm = DensityMatrix::from_statevector(*g.prep);  // loaded noiselessly
        break;
      }
      case GateKind::Ry:
      case GateKind::X:
      case GateKind::H:
      case GateKind::Sdg: {
        Gate bound = g;
        if (g.kind == GateKind::Ry && g.param_slot >= 0) {
          bound.angle = params[static_cast<std::size_t>(g.param_slot)];
          bound.param_slot = -1;
        }
        const Superop1 u = superop_from_unitary1(gate_matrix_1q(bound));
        apply_superop1(dm, g.q0, noise.gate1_channel[static_cast<std::size_t>(g.q0)] * u);
        break;
      }
      case GateKind::CZ:
      case GateKind::CX: {
        if (g.kind == GateKind::CZ)
          apply_cz_conj(dm, g.q0, g.q1);
        else
          apply_cx_conj(dm, g.q0, g.q1);
        if (!noise.is_trivial) {
          const auto& ec = noise.edge_channel(g.q0, g.q1);
          apply_dep2(dm, g.q0, g.q1, ec.dep_p);
          // relax_a belongs to the lower logical index of the pair
          apply_superop1(dm, std::min(g.q0, g.q1), ec.relax_a);
          apply_superop1(dm, std::max(g.q0, g.q1), ec.relax_b);
        }
        break;
      }
    }
  }
  return dm;
}

std::vector<double> measurement_probabilities(const DensityMatrix& dm, const NoiseModel& noise) {
  const std::size_t dim = std::size_t{1} << dm.n_qubits;
  std::vector<double> p(dim);
  for (std::size_t k = 0; k < dim; ++k)
    p[k] = std::max(0.0, dm.rho(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)).real());
  for (int q = 0; q < dm.n_qubits; ++q) {
    const auto& m = noise.readout[static_cast<std::size_t>(q)].m;
    const std::size_t step = std::size_t{1} << q;
    for (std::size_t base = 0; base < dim; base += 2 * step)
      for (std::size_t low = 0; low < step; ++low) {
        const double p0 = p[base + low];
        const double p1 = p[base + low + step];
        p[base + low] = p0 * m[0][0] + p1 * m[1][0];
        p[base + low + step] = p0 * m[0][1] + p1 * m[1][1];
      }
  }
  return p;
}

ShotResult expectation_shots_noisy(const PauliSum& h, const MeasurementGroups& groups,
                                   const DensityMatrix& state, const NoiseModel& noise, int shots,
                                   std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("expectation_shots_noisy: shots must be >= 1");
  double estimate = 0.0;
  for (const auto& t : h.terms)
    if (t.string.is_identity()) estimate += t.coefficient.real();

  int group_index = 0;
  for (const auto& g : groups.groups) {
    DensityMatrix rotated = state;
    for (int q = 0; q < state.n_qubits; ++q) {
      const auto& channel = noise.gate1_channel[static_cast<std::size_t>(q)];
      if (g.basis == Pauli::X) {
        apply_superop1(rotated, q, channel * superop_from_unitary1(gate_matrix_1q(Gate::h(q))));
      } else if (g.basis == Pauli::Y) {
        apply_superop1(rotated, q, channel * superop_from_unitary1(gate_matrix_1q(Gate::sdg(q))));
        apply_superop1(rotated, q, channel * superop_from_unitary1(gate_matrix_1q(Gate::h(q))));
      }
    }
    const auto probs = measurement_probabilities(rotated, noise);
    const auto samples = sample_counts(probs, shots, mix_seed(seed, group_index));
    for (std::size_t idx : g.term_indices) {
      const auto& term = h.terms[idx];
      std::uint64_t support = 0;
      for (int q = 0; q < term.string.n_qubits(); ++q)
        if (term.string.ops[static_cast<std::size_t>(q)] != Pauli::I)
          support |= std::uint64_t{1} << q;
      long sum = 0;
      for (std::uint64_t smp : samples)
        sum += (std::popcount(smp & support) & 1) ? -1 : 1;
      estimate += term.coefficient.real() * static_cast<double>(sum) / shots;
    }
    ++group_index;
  }
  return {estimate, shots, seed};
}

double fidelity_density(const DensityMatrix& dm, const Spectrum& spectrum) {
  if (dm.rho.rows() != spectrum.ground_space.rows())
    throw std::invalid_argument("fidelity_density: dimension mismatch");
  return (spectrum.ground_space.adjoint() * dm.rho * spectrum.ground_space).trace().real();
}

}  // namespace onionvqe
