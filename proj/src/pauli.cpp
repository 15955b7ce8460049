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

#include "onionvqe/pauli.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace onionvqe {

char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw std::invalid_argument(std::string("not a Pauli letter: ") + c);
  }
}

bool PauliString::is_identity() const {
  return std::all_of(ops.begin(), ops.end(), [](Pauli p) { return p == Pauli::I; });
}

std::string PauliString::to_string() const {
  std::string s(ops.size(), 'I');
  for (std::size_t q = 0; q < ops.size(); ++q) s[q] = pauli_char(ops[q]);
  return s;
}

PauliString PauliString::identity(int n) {
  return PauliString{std::vector<Pauli>(static_cast<std::size_t>(n), Pauli::I)};
}

PauliString PauliString::from_string(const std::string& s) {
  PauliString p;
  p.ops.reserve(s.size());
  for (char c : s) p.ops.push_back(pauli_from_char(c));
  return p;
}

PauliSum PauliSum::canonicalize(std::vector<PauliTerm> terms, int n_qubits, double drop_tol) {
  std::map<PauliString, std::complex<double>> acc;
  for (auto& t : terms) {
    if (t.string.n_qubits() != n_qubits)
      throw std::invalid_argument("PauliSum: term length does not match qubit count");
    acc[t.string] += t.coefficient;
  }
  PauliSum out;
  out.n_qubits = n_qubits;
  for (auto& [s, c] : acc)
    if (std::abs(c) > drop_tol) out.terms.push_back({c, s});
  return out;
}

double PauliSum::max_imag_coefficient() const {
  double m = 0.0;
  for (const auto& t : terms) m = std::max(m, std::abs(t.coefficient.imag()));
  return m;
}

namespace {

// Single-qubit product a*b = phase * c, phase in {1, i, -1, -i} encoded as an
// exponent of i.
struct MulEntry {
  int phase_pow;
  Pauli result;
};

MulEntry mul_pauli(Pauli a, Pauli b) {
  if (a == Pauli::I) return {0, b};
  if (b == Pauli::I) return {0, a};
  if (a == b) return {0, Pauli::I};
  const int ia = static_cast<int>(a), ib = static_cast<int>(b);
  // XY=iZ, YZ=iX, ZX=iY and the reversed orders pick up -i.
  const Pauli c = static_cast<Pauli>(6 - ia - ib);
  const bool forward = (ib - ia + 3) % 3 == 1;
  return {forward ? 1 : 3, c};
}

struct WeightedString {
  std::complex<double> coeff;
  std::vector<Pauli> ops;
};

std::complex<double> phase_of(int pow) {
  switch (pow & 3) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

void multiply_in_place(WeightedString& dst, const WeightedString& rhs) {
  int phase = 0;
  for (std::size_t q = 0; q < dst.ops.size(); ++q) {
    const MulEntry e = mul_pauli(dst.ops[q], rhs.ops[q]);
    phase += e.phase_pow;
    dst.ops[q] = e.result;
  }
  dst.coeff *= rhs.coeff * phase_of(phase);
}

// c+_q and c_q as two-string sums with the Z parity string on qubits < q.
std::vector<WeightedString> jw_ladder(int q, FermionOp op, int n) {
  std::vector<Pauli> base(static_cast<std::size_t>(n), Pauli::I);
  for (int k = 0; k < q; ++k) base[static_cast<std::size_t>(k)] = Pauli::Z;
  WeightedString sx{{0.5, 0.0}, base};
  sx.ops[static_cast<std::size_t>(q)] = Pauli::X;
  WeightedString sy{op == FermionOp::Create ? std::complex<double>(0.0, -0.5)
                                            : std::complex<double>(0.0, 0.5),
                    base};
  sy.ops[static_cast<std::size_t>(q)] = Pauli::Y;
  return {sx, sy};
}

}  // namespace

PauliSum jordan_wigner(const std::vector<FermionTerm>& terms, const QubitOrdering& ordering,
                       double drop_tol) {
  ordering.validate();
  const int n = ordering.n_qubits();
  std::map<PauliString, std::complex<double>> acc;
  for (const auto& term : terms) {
    std::vector<WeightedString> prod{{term.coefficient,
                                      std::vector<Pauli>(static_cast<std::size_t>(n), Pauli::I)}};
    for (const auto& [mode, op] : term.ops) {
      if (mode < 0 || mode >= n)
        throw std::invalid_argument("jordan_wigner: mode index outside ordering");
      const auto ladder = jw_ladder(ordering.qubit_of(mode), op, n);
      std::vector<WeightedString> next;
      next.reserve(prod.size() * ladder.size());
      for (const auto& lhs : prod)
        for (const auto& rhs : ladder) {
          WeightedString w = lhs;
          multiply_in_place(w, rhs);
          next.push_back(std::move(w));
        }
      prod = std::move(next);
    }
    for (auto& w : prod) acc[PauliString{std::move(w.ops)}] += w.coeff;
  }
  PauliSum out;
  out.n_qubits = n;
  for (auto& [s, c] : acc)
    if (std::abs(c) > drop_tol) out.terms.push_back({c, s});
  return out;
}

std::size_t count_pauli_strings(const PauliSum& h) { return h.terms.size(); }

MeasurementGroups group_measurement_bases(const PauliSum& h) {
  std::vector<std::size_t> by_basis[3];
  for (std::size_t i = 0; i < h.terms.size(); ++i) {
    const auto& s = h.terms[i].string;
    Pauli letter = Pauli::I;
    for (Pauli p : s.ops) {
      if (p == Pauli::I) continue;
      if (letter == Pauli::I) {
        letter = p;
      } else if (letter != p) {
        throw std::invalid_argument(
            "group_measurement_bases: mixed-letter string " + s.to_string() +
            " cannot be measured with one all-qubit basis rotation");
      }
    }
    if (letter == Pauli::I) continue;  // scalar offset
    by_basis[static_cast<int>(letter) - 1].push_back(i);
  }
  MeasurementGroups g;
  for (int k = 0; k < 3; ++k)
    if (!by_basis[k].empty()) g.groups.push_back({static_cast<Pauli>(k + 1), std::move(by_basis[k])});
  return g;
}

}  // namespace onionvqe
