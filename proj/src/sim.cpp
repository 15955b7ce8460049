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

#include "onionvqe/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "onionvqe/rng.hpp"

namespace onionvqe {

namespace {
using cd = std::complex<double>;
constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_qubit(const Statevector& s, int q) {
  if (q < 0 || q >= s.n_qubits) throw std::out_of_range("gate target out of range");
}

void apply_ry(Statevector& s, int q, double angle) {
  const double c = std::cos(angle / 2), sn = std::sin(angle / 2);
  const std::size_t step = std::size_t{1} << q;
  for (std::size_t base = 0; base < s.dim(); base += 2 * step)
    for (std::size_t low = 0; low < step; ++low) {
      cd& a0 = s.amps[base + low];
      cd& a1 = s.amps[base + low + step];
      const cd t0 = a0, t1 = a1;
      a0 = c * t0 - sn * t1;
      a1 = sn * t0 + c * t1;
    }
}

void apply_h(Statevector& s, int q) {
  const std::size_t step = std::size_t{1} << q;
  for (std::size_t base = 0; base < s.dim(); base += 2 * step)
    for (std::size_t low = 0; low < step; ++low) {
      cd& a0 = s.amps[base + low];
      cd& a1 = s.amps[base + low + step];
      const cd t0 = a0, t1 = a1;
      a0 = kInvSqrt2 * (t0 + t1);
      a1 = kInvSqrt2 * (t0 - t1);
    }
}

void apply_x(Statevector& s, int q) {
  const std::size_t step = std::size_t{1} << q;
  for (std::size_t base = 0; base < s.dim(); base += 2 * step)
    for (std::size_t low = 0; low < step; ++low)
      std::swap(s.amps[base + low], s.amps[base + low + step]);
}

void apply_sdg(Statevector& s, int q) {
  const std::size_t step = std::size_t{1} << q;
  for (std::size_t base = 0; base < s.dim(); base += 2 * step)
    for (std::size_t low = 0; low < step; ++low) {
      cd& a1 = s.amps[base + low + step];
      a1 = cd(a1.imag(), -a1.real());  // multiply by -i
    }
}

void apply_cz(Statevector& s, int a, int b) {
  const std::uint64_t mask = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
  for (std::size_t k = 0; k < s.dim(); ++k)
    if ((k & mask) == mask) s.amps[k] = -s.amps[k];
}

void apply_cx(Statevector& s, int control, int target) {
  const std::uint64_t cm = std::uint64_t{1} << control;
  const std::uint64_t tm = std::uint64_t{1} << target;
  for (std::size_t k = 0; k < s.dim(); ++k)
    if ((k & cm) && !(k & tm)) std::swap(s.amps[k], s.amps[k | tm]);
}
}  // namespace

double Statevector::norm() const {
  double n2 = 0;
  for (const auto& a : amps) n2 += std::norm(a);
  return std::sqrt(n2);
}

Statevector Statevector::zero_state(int n) { return basis_state(n, 0); }

Statevector Statevector::basis_state(int n, std::uint64_t index) {
  Statevector s;
  s.n_qubits = n;
  s.amps.assign(std::size_t{1} << n, cd{});
  s.amps.at(index) = 1.0;
  return s;
}

void apply_gate(Statevector& state, const Gate& g) {
  switch (g.kind) {
    case GateKind::Ry:
      if (g.param_slot >= 0) throw std::invalid_argument("apply_gate: unbound Ry parameter");
      check_qubit(state, g.q0);
      apply_ry(state, g.q0, g.angle);
      return;
    case GateKind::CZ:
      check_qubit(state, g.q0);
      check_qubit(state, g.q1);
      if (g.q0 == g.q1) throw std::invalid_argument("apply_gate: CZ targets must differ");
      apply_cz(state, g.q0, g.q1);
      return;
    case GateKind::CX:
      check_qubit(state, g.q0);
      check_qubit(state, g.q1);
      if (g.q0 == g.q1) throw std::invalid_argument("apply_gate: CX targets must differ");
      apply_cx(state, g.q0, g.q1);
      return;
    case GateKind::X: check_qubit(state, g.q0); apply_x(state, g.q0); return;
    case GateKind::H: check_qubit(state, g.q0); apply_h(state, g.q0); return;
    case GateKind::Sdg: check_qubit(state, g.q0); apply_sdg(state, g.q0); return;
    case GateKind::StatePrep:
      if (!g.prep || g.prep->n_qubits != state.n_qubits)
        throw std::invalid_argument("apply_gate: StatePrep payload missing or wrong size");
      state = *g.prep;
      return;
  }
  throw std::logic_error("apply_gate: unknown gate kind");
}

Statevector run_circuit(const Circuit& c, std::span<const double> params, const Statevector& init) {
  if (static_cast<int>(params.size()) != c.n_params)
    throw std::invalid_argument("run_circuit: expected " + std::to_string(c.n_params) +
                                " parameters, got " + std::to_string(params.size()));
  if (init.n_qubits != c.n_qubits)
    throw std::invalid_argument("run_circuit: initial state size mismatch");
  Statevector state = init;
  for (const auto& g : c.gates) {
    if (g.kind == GateKind::Ry && g.param_slot >= 0) {
      Gate bound = g;
      bound.angle = params[static_cast<std::size_t>(g.param_slot)];
      bound.param_slot = -1;
      apply_gate(state, bound);
    } else {
      apply_gate(state, g);
    }
  }
  return state;
}

std::vector<double> probabilities(const Statevector& state) {
  std::vector<double> p(state.dim());
  for (std::size_t k = 0; k < state.dim(); ++k) p[k] = std::norm(state.amps[k]);
  return p;
}

std::vector<std::uint64_t> sample_counts(std::span<const double> probs, int shots,
                                         std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("sample_counts: shots must be >= 1");
  std::vector<double> cdf(probs.size());
  double acc = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    acc += probs[k];
    cdf[k] = acc;
  }
  const double total = acc;
  Rng rng(seed);
  std::vector<std::uint64_t> out(static_cast<std::size_t>(shots));
  for (auto& x : out) {
    const double u = rng.uniform() * total;
    x = static_cast<std::uint64_t>(
        std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    if (x >= probs.size()) x = probs.size() - 1;
  }
  return out;
}

ShotResult expectation_shots(const PauliSum& h, const MeasurementGroups& groups,
                             const Statevector& state, int shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("expectation_shots: shots must be >= 1");
  double estimate = 0.0;
  for (const auto& t : h.terms)
    if (t.string.is_identity()) estimate += t.coefficient.real();

  int group_index = 0;
  for (const auto& g : groups.groups) {
    Statevector rotated = state;
    for (int q = 0; q < state.n_qubits; ++q) {
      if (g.basis == Pauli::X) {
        apply_gate(rotated, Gate::h(q));
      } else if (g.basis == Pauli::Y) {
        apply_gate(rotated, Gate::sdg(q));
        apply_gate(rotated, Gate::h(q));
      }
    }
    const auto probs = probabilities(rotated);
    const auto samples = sample_counts(probs, shots, mix_seed(seed, group_index));
    for (std::size_t idx : g.term_indices) {
      const auto& term = h.terms[idx];
      std::uint64_t support = 0;
      for (int q = 0; q < term.string.n_qubits(); ++q)
        if (term.string.ops[static_cast<std::size_t>(q)] != Pauli::I)
          support |= std::uint64_t{1} << q;
      long sum = 0;
      for (std::uint64_t s : samples)
        sum += (std::popcount(s & support) & 1) ? -1 : 1;
      estimate += term.coefficient.real() * static_cast<double>(sum) / shots;
    }
    ++group_index;
  }
  return {estimate, shots, seed};
}

}  // namespace onionvqe
