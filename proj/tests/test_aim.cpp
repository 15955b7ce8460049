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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "onionvqe/aim.hpp"
#include "onionvqe/exact.hpp"
#include "onionvqe/hf.hpp"
#include "onionvqe/pauli.hpp"
#include "oracle.hpp"

using namespace onionvqe;

namespace {

AimParams row1() {
  AimParams p;
  p.n_b = 1;
  p.eps0 = -1.201;
  p.eps = {0.026};
  p.v = {0.270};
  p.u = 3.11;
  return p;
}

// canonical form for term-list comparison
std::multiset<std::string> canonical(const std::vector<FermionTerm>& terms) {
  std::multiset<std::string> out;
  for (const auto& t : terms) {
    std::string key;
    for (const auto& [m, op] : t.ops)
      key += std::to_string(m) + (op == FermionOp::Create ? "+" : "-");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "|%.12g%+.12gi", t.coefficient.real(), t.coefficient.imag());
    out.insert(key + buf);
  }
  return out;
}

}  // namespace

TEST_SUITE("aim") {

TEST_CASE("bundled parameter table") {
  const auto& rows = bundled_aim_params();
  REQUIRE(rows.size() == 4);
  for (int nb = 1; nb <= 4; ++nb) {
    const auto& p = bundled_aim_row(nb);
    CHECK(p.n_b == nb);
    CHECK(p.u == doctest::Approx(3.11).epsilon(1e-15));
  }
  CHECK(bundled_aim_row(1).eps0 == doctest::Approx(-1.201));
  CHECK(bundled_aim_row(4).v[1] == doctest::Approx(1.011));
  CHECK_THROWS_AS(bundled_aim_row(5), std::invalid_argument);
}

TEST_CASE("hamiltonian term census for one bath site") {
  const auto terms = build_aim_hamiltonian(row1());
  int number = 0, hopping = 0, interaction = 0;
  for (const auto& t : terms) {
    if (t.ops.size() == 4) {
      ++interaction;
      CHECK(t.coefficient.real() == doctest::Approx(3.11));
    } else if (t.ops[0].first == t.ops[1].first) {
      ++number;
    } else {
      ++hopping;
      CHECK(t.coefficient.real() == doctest::Approx(0.270));
    }
  }
  CHECK(number == 4);
  CHECK(hopping == 4);
  CHECK(interaction == 1);
}

TEST_CASE("zero parameters give an empty term list") {
  AimParams p;
  p.n_b = 2;
  p.eps = {0.0, 0.0};
  p.v = {0.0, 0.0};
  CHECK(build_aim_hamiltonian(p).empty());
}

TEST_CASE("parameter validation") {
  AimParams p = row1();
  p.n_b = 0;
  p.eps.clear();
  p.v.clear();
  CHECK_THROWS_AS(build_aim_hamiltonian(p), std::invalid_argument);
  p = row1();
  p.eps.push_back(0.5);  // length mismatch
  CHECK_THROWS_AS(build_aim_hamiltonian(p), std::invalid_argument);
  p = row1();
  p.u = std::nan("");
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("default ordering") {
  CHECK(default_ordering(2).perm == std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK(default_ordering(1).perm == std::vector<int>{0, 1, 2, 3});
  const auto o4 = default_ordering(4);
  CHECK(o4.n_qubits() == 10);
  CHECK_NOTHROW(o4.validate());
}

TEST_CASE("chain ordering puts the spin-up bath chain first, reversed") {
  // modes: imp up, imp down, b1 up, b1 down, b2 up, b2 down
  CHECK(chain_ordering(2).perm == std::vector<int>{2, 3, 1, 4, 0, 5});
  CHECK(chain_ordering(1).perm == std::vector<int>{1, 2, 0, 3});
  CHECK_NOTHROW(chain_ordering(4).validate());
}

TEST_CASE("chain ordering maps every two-mode term onto adjacent qubits") {
  for (int nb = 1; nb <= 4; ++nb) {
    const auto ordering = chain_ordering(nb);
    for (const auto& t : build_aim_hamiltonian(bundled_aim_row(nb))) {
      std::set<int> qubits;
      for (const auto& [mode, op] : t.ops) qubits.insert(ordering.qubit_of(mode));
      if (qubits.size() == 2)
        CHECK(*qubits.rbegin() - *qubits.begin() == 1);
      else
        CHECK(qubits.size() == 1);
    }
  }
}

TEST_CASE("identity rotation returns the input terms") {
  const auto terms = build_aim_hamiltonian(row1());
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(4, 4);
  CHECK(canonical(rotate_to_mo_basis(terms, id)) == canonical(terms));
}

TEST_CASE("non-unitary rotation is rejected") {
  const auto terms = build_aim_hamiltonian(row1());
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(4, 4);
  bad(0, 0) = 1.5;
  CHECK_THROWS_AS(rotate_to_mo_basis(terms, bad), std::invalid_argument);
}

TEST_CASE("orbital rotation preserves the spectrum") {
  const auto p = bundled_aim_row(1);
  const auto terms = build_aim_hamiltonian(p);
  const auto orbitals = ghf_solve(p, 2);
  const auto rotated = rotate_to_mo_basis(terms, orbitals.c);

  QubitOrdering identity;
  identity.perm = {0, 1, 2, 3};
  const Spectrum s_mo = ground(jordan_wigner(rotated, identity));
  const Spectrum s_ao = ground(jordan_wigner(terms, chain_ordering(1)));
  REQUIRE(s_mo.energies.size() == s_ao.energies.size());
  for (Eigen::Index i = 0; i < s_ao.energies.size(); ++i)
    CHECK(std::abs(s_mo.energies(i) - s_ao.energies(i)) < 1e-8);
}

TEST_CASE("rotated basis inflates the string count") {
  const auto p = bundled_aim_row(1);
  const auto terms = build_aim_hamiltonian(p);
  const auto orbitals = ghf_solve(p, 2);
  const auto h_ao = jordan_wigner(terms, chain_ordering(1));
  QubitOrdering identity;
  identity.perm = {0, 1, 2, 3};
  const auto h_mo = jordan_wigner(rotate_to_mo_basis(terms, orbitals.c), identity);
  CHECK(count_pauli_strings(h_mo) > count_pauli_strings(h_ao));
}

}  // TEST_SUITE
