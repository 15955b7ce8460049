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

#include <map>

#include "onionvqe/exact.hpp"
#include "onionvqe/hf.hpp"
#include "onionvqe/pauli.hpp"
#include "oracle.hpp"

using namespace onionvqe;

namespace {
std::map<std::string, std::complex<double>> as_map(const PauliSum& h) {
  std::map<std::string, std::complex<double>> m;
  for (const auto& t : h.terms) m[t.string.to_string()] = t.coefficient;
  return m;
}
}  // namespace

TEST_SUITE("pauli") {

TEST_CASE("number operator maps to (I - Z)/2") {
  // eps * n on mode 1 of a 3-mode space, identity ordering
  const double eps = 0.7;
  std::vector<FermionTerm> terms{
      {eps, {{1, FermionOp::Create}, {1, FermionOp::Annihilate}}}};
  QubitOrdering o;
  o.perm = {0, 1, 2};
  const auto h = jordan_wigner(terms, o);
  const auto m = as_map(h);
  REQUIRE(m.size() == 2);
  CHECK(m.at("III").real() == doctest::Approx(eps / 2));
  CHECK(m.at("IZI").real() == doctest::Approx(-eps / 2));
}

TEST_CASE("adjacent hopping maps to (XX + YY)/2") {
  const double v = 0.27;
  std::vector<FermionTerm> terms{
      {v, {{0, FermionOp::Create}, {1, FermionOp::Annihilate}}},
      {v, {{1, FermionOp::Create}, {0, FermionOp::Annihilate}}}};
  QubitOrdering o;
  o.perm = {0, 1};
  const auto m = as_map(jordan_wigner(terms, o));
  REQUIRE(m.size() == 2);
  CHECK(m.at("XX").real() == doctest::Approx(v / 2));
  CHECK(m.at("YY").real() == doctest::Approx(v / 2));
}

TEST_CASE("qubit hamiltonian matches the occupation-basis oracle") {
  for (int nb : {1, 2}) {
    const auto terms = build_aim_hamiltonian(bundled_aim_row(nb));
    const auto ordering = chain_ordering(nb);
    const auto h = jordan_wigner(terms, ordering);
    const Eigen::MatrixXcd lhs = pauli_sum_to_matrix(h);
    const Eigen::MatrixXcd rhs = oracle::fock_hamiltonian_matrix(terms, ordering);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("merged coefficients are real for the hermitian hamiltonian") {
  for (int nb = 1; nb <= 4; ++nb) {
    const auto h =
        jordan_wigner(build_aim_hamiltonian(bundled_aim_row(nb)), chain_ordering(nb));
    CHECK(h.max_imag_coefficient() < 1e-12);
  }
}

TEST_CASE("hamiltonian commutes with the total number operator") {
  for (int nb : {1, 2}) {
    const auto h =
        jordan_wigner(build_aim_hamiltonian(bundled_aim_row(nb)), chain_ordering(nb));
    const Eigen::MatrixXcd hm = pauli_sum_to_matrix(h);
    const Eigen::MatrixXcd nm = oracle::number_operator_matrix(h.n_qubits);
    CHECK((hm * nm - nm * hm).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("chain-ordered hamiltonian needs only single-letter strings") {
  for (int nb = 1; nb <= 4; ++nb) {
    const auto h =
        jordan_wigner(build_aim_hamiltonian(bundled_aim_row(nb)), chain_ordering(nb));
    const auto groups = group_measurement_bases(h);
    CHECK(groups.groups.size() == 3);
    std::size_t covered = 0;
    for (const auto& g : groups.groups) covered += g.term_indices.size();
    std::size_t non_identity = 0;
    for (const auto& t : h.terms)
      if (!t.string.is_identity()) ++non_identity;
    CHECK(covered == non_identity);
  }
}

TEST_CASE("all-Z sums collapse to one group") {
  std::vector<PauliTerm> terms{{1.0, PauliString::from_string("ZI")},
                               {0.5, PauliString::from_string("ZZ")}};
  const auto h = PauliSum::canonicalize(std::move(terms), 2);
  const auto groups = group_measurement_bases(h);
  REQUIRE(groups.groups.size() == 1);
  CHECK(groups.groups[0].basis == Pauli::Z);
}

TEST_CASE("mixed-letter strings are rejected") {
  const auto p = bundled_aim_row(1);
  const auto orbitals = ghf_solve(p, 2);
  QubitOrdering identity;
  identity.perm = {0, 1, 2, 3};
  const auto h_mo =
      jordan_wigner(rotate_to_mo_basis(build_aim_hamiltonian(p), orbitals.c), identity);
  CHECK_THROWS_AS(group_measurement_bases(h_mo), std::invalid_argument);
}

TEST_CASE("string counts: AO monotone in system size, rotated/AO ratio above ten at 10 qubits") {
  std::size_t prev = 0;
  for (int nb = 1; nb <= 4; ++nb) {
    const auto h =
        jordan_wigner(build_aim_hamiltonian(bundled_aim_row(nb)), chain_ordering(nb));
    const std::size_t count = count_pauli_strings(h);
    CHECK(count > prev);
    prev = count;
  }
  CHECK(count_pauli_strings(PauliSum{}) == 0);

  const auto p = bundled_aim_row(4);
  const auto terms = build_aim_hamiltonian(p);
  const auto orbitals = ghf_solve(p, 4);
  QubitOrdering identity;
  identity.perm.resize(10);
  for (int i = 0; i < 10; ++i) identity.perm[static_cast<std::size_t>(i)] = i;
  const auto h_mo = jordan_wigner(rotate_to_mo_basis(terms, orbitals.c), identity);
  const auto h_ao = jordan_wigner(terms, chain_ordering(4));
  CHECK(static_cast<double>(count_pauli_strings(h_mo)) /
            static_cast<double>(count_pauli_strings(h_ao)) >
        10.0);
}

TEST_CASE("modes outside the ordering are rejected") {
  std::vector<FermionTerm> terms{
      {1.0, {{5, FermionOp::Create}, {5, FermionOp::Annihilate}}}};
  QubitOrdering o;
  o.perm = {0, 1};
  CHECK_THROWS_AS(jordan_wigner(terms, o), std::invalid_argument);
}

TEST_CASE("canonicalize merges duplicates and drops small terms") {
  std::vector<PauliTerm> terms{{0.5, PauliString::from_string("XX")},
                               {0.5, PauliString::from_string("XX")},
                               {1e-15, PauliString::from_string("ZZ")}};
  const auto h = PauliSum::canonicalize(std::move(terms), 2);
  REQUIRE(h.terms.size() == 1);
  CHECK(h.terms[0].coefficient.real() == doctest::Approx(1.0));
}

}  // TEST_SUITE
