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

#include "onionvqe/aim.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace onionvqe {

namespace {
constexpr int kSpinUp = 0;
constexpr int kSpinDown = 1;

int mode_index(int site, int spin) { return 2 * site + spin; }
}  // namespace

void AimParams::validate() const {
  if (n_b < 1) throw std::invalid_argument("AimParams: n_b must be >= 1");
  if (eps.size() != static_cast<std::size_t>(n_b) || v.size() != static_cast<std::size_t>(n_b))
    throw std::invalid_argument("AimParams: eps and v must have n_b entries");
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(eps0) || !finite(u))
    throw std::invalid_argument("AimParams: non-finite value");
  for (double x : eps)
    if (!finite(x)) throw std::invalid_argument("AimParams: non-finite bath energy");
  for (double x : v)
    if (!finite(x)) throw std::invalid_argument("AimParams: non-finite hopping");
}

std::vector<AimParams> load_aim_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open parameter file: " + path);
  nlohmann::json j;
  in >> j;
  if (!j.is_array()) throw std::runtime_error("parameter file must be a JSON array: " + path);
  std::vector<AimParams> out;
  for (const auto& row : j) {
    AimParams p;
    p.n_b = row.at("n_b").get<int>();
    p.eps0 = row.at("eps0").get<double>();
    p.eps = row.at("eps").get<std::vector<double>>();
    p.v = row.at("v").get<std::vector<double>>();
    p.u = row.at("u").get<double>();
    p.validate();
    out.push_back(std::move(p));
  }
  return out;
}

const std::vector<AimParams>& bundled_aim_params() {
  static const std::vector<AimParams> rows =
      load_aim_params(std::string(ONIONVQE_DATA_DIR) + "/aim_params.json");
  return rows;
}

const AimParams& bundled_aim_row(int n_b) {
  for (const auto& p : bundled_aim_params())
    if (p.n_b == n_b) return p;
  throw std::invalid_argument("no bundled parameter set with n_b = " + std::to_string(n_b));
}

int QubitOrdering::mode_of(int qubit) const {
  for (std::size_t m = 0; m < perm.size(); ++m)
    if (perm[m] == qubit) return static_cast<int>(m);
  throw std::out_of_range("qubit index not in ordering");
}

void QubitOrdering::validate() const {
  const int n = n_qubits();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int q : perm) {
    if (q < 0 || q >= n || seen[static_cast<std::size_t>(q)])
      throw std::invalid_argument("QubitOrdering: perm is not a bijection");
    seen[static_cast<std::size_t>(q)] = true;
  }
}

QubitOrdering default_ordering(int n_b) {
  if (n_b < 1) throw std::invalid_argument("default_ordering: n_b must be >= 1");
  QubitOrdering o;
  o.perm.resize(static_cast<std::size_t>(2 * (n_b + 1)));
  for (int site = 0; site <= n_b; ++site)
    for (int spin : {kSpinUp, kSpinDown})
      o.perm[static_cast<std::size_t>(mode_index(site, spin))] = 2 * site + spin;
  return o;
}

QubitOrdering chain_ordering(int n_b) {
  if (n_b < 1) throw std::invalid_argument("chain_ordering: n_b must be >= 1");
  QubitOrdering o;
  o.perm.resize(static_cast<std::size_t>(2 * (n_b + 1)));
  o.perm[static_cast<std::size_t>(mode_index(0, kSpinUp))] = n_b;
  o.perm[static_cast<std::size_t>(mode_index(0, kSpinDown))] = n_b + 1;
  for (int i = 1; i <= n_b; ++i) {
    o.perm[static_cast<std::size_t>(mode_index(i, kSpinUp))] = n_b - i;
    o.perm[static_cast<std::size_t>(mode_index(i, kSpinDown))] = n_b + 1 + i;
  }
  return o;
}

std::vector<FermionTerm> build_aim_hamiltonian(const AimParams& params) {
  params.validate();
  std::vector<FermionTerm> terms;
  auto add = [&terms](double c, std::vector<std::pair<int, FermionOp>> ops) {
    if (c == 0.0) return;
    terms.push_back({std::complex<double>(c, 0.0), std::move(ops)});
  };
  auto number = [](int m) {
    return std::vector<std::pair<int, FermionOp>>{{m, FermionOp::Create}, {m, FermionOp::Annihilate}};
  };
  for (int spin : {kSpinUp, kSpinDown}) {
    add(params.eps0, number(mode_index(0, spin)));
    for (int i = 1; i <= params.n_b; ++i) {
      const int mi = mode_index(i, spin);
      const int mj = mode_index(i - 1, spin);
      add(params.eps[static_cast<std::size_t>(i - 1)], number(mi));
      add(params.v[static_cast<std::size_t>(i - 1)],
          {{mi, FermionOp::Create}, {mj, FermionOp::Annihilate}});
      add(params.v[static_cast<std::size_t>(i - 1)],
          {{mj, FermionOp::Create}, {mi, FermionOp::Annihilate}});
    }
  }
  const int a = mode_index(0, kSpinUp);
  const int b = mode_index(0, kSpinDown);
  add(params.u, {{a, FermionOp::Create},
                 {b, FermionOp::Create},
                 {b, FermionOp::Annihilate},
                 {a, FermionOp::Annihilate}});
  return terms;
}

Eigen::MatrixXd one_body_matrix(const AimParams& params) {
  params.validate();
  const int m = params.n_modes();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
  for (int spin : {kSpinUp, kSpinDown}) {
    h(mode_index(0, spin), mode_index(0, spin)) = params.eps0;
    for (int i = 1; i <= params.n_b; ++i) {
      const int mi = mode_index(i, spin);
      const int mj = mode_index(i - 1, spin);
      h(mi, mi) = params.eps[static_cast<std::size_t>(i - 1)];
      h(mi, mj) = h(mj, mi) = params.v[static_cast<std::size_t>(i - 1)];
    }
  }
  return h;
}

std::vector<FermionTerm> rotate_to_mo_basis(const std::vector<FermionTerm>& terms,
                                            const Eigen::MatrixXcd& coeffs, double drop_tol) {
  const Eigen::Index m = coeffs.rows();
  if (coeffs.cols() != m) throw std::invalid_argument("rotate_to_mo_basis: coeffs must be square");
  const double unitarity =
      (coeffs.adjoint() * coeffs - Eigen::MatrixXcd::Identity(m, m)).cwiseAbs().maxCoeff();
  if (unitarity > 1e-8)
    throw std::invalid_argument("rotate_to_mo_basis: coeffs not unitary (residual " +
                                std::to_string(unitarity) + ")");

  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(m, m);
  struct Quartic {
    std::complex<double> c;
    int a, b;
  };
  std::vector<Quartic> quartics;
  for (const auto& t : terms) {
    if (t.ops.size() == 2) {
      if (t.ops[0].second != FermionOp::Create || t.ops[1].second != FermionOp::Annihilate)
        throw std::invalid_argument("rotate_to_mo_basis: one-body term not in c+ c form");
      h(t.ops[0].first, t.ops[1].first) += t.coefficient;
    } else if (t.ops.size() == 4) {
      // density-density form c+_a c+_b c_b c_a with a != b
      const auto& o = t.ops;
      if (o[0].second != FermionOp::Create || o[1].second != FermionOp::Create ||
          o[2].second != FermionOp::Annihilate || o[3].second != FermionOp::Annihilate ||
          o[0].first != o[3].first || o[1].first != o[2].first || o[0].first == o[1].first)
        throw std::invalid_argument("rotate_to_mo_basis: unsupported four-operator term");
      quartics.push_back({t.coefficient, o[0].first, o[1].first});
    } else {
      throw std::invalid_argument("rotate_to_mo_basis: terms must have 2 or 4 operators");
    }
  }

  std::vector<FermionTerm> out;
  const Eigen::MatrixXcd hp = coeffs.adjoint() * h * coeffs;
  for (Eigen::Index p = 0; p < m; ++p)
    for (Eigen::Index q = 0; q < m; ++q)
      if (std::abs(hp(p, q)) > drop_tol)
        out.push_back({hp(p, q),
                       {{static_cast<int>(p), FermionOp::Create},
                        {static_cast<int>(q), FermionOp::Annihilate}}});

  for (const auto& qt : quartics) {
    for (Eigen::Index p = 0; p < m; ++p)
      for (Eigen::Index q = 0; q < m; ++q)
        for (Eigen::Index r = 0; r < m; ++r)
          for (Eigen::Index s = 0; s < m; ++s) {
            const std::complex<double> c = qt.c * std::conj(coeffs(qt.a, p)) *
                                           std::conj(coeffs(qt.b, q)) * coeffs(qt.b, r) *
                                           coeffs(qt.a, s);
            if (std::abs(c) > drop_tol)
              out.push_back({c,
                             {{static_cast<int>(p), FermionOp::Create},
                              {static_cast<int>(q), FermionOp::Create},
                              {static_cast<int>(r), FermionOp::Annihilate},
                              {static_cast<int>(s), FermionOp::Annihilate}}});
          }
  }
  return out;
}

}  // namespace onionvqe
