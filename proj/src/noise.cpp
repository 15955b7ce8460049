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

#include "onionvqe/noise.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>
#include <unsupported/Eigen/KroneckerProduct>

namespace onionvqe {

namespace {
using cd = std::complex<double>;

const Eigen::Matrix2cd& pauli_matrix_1q(int k) {
  static const Eigen::Matrix2cd mats[4] = {
      (Eigen::Matrix2cd() << 1, 0, 0, 1).finished(),
      (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(),
      (Eigen::Matrix2cd() << 0, cd(0, -1), cd(0, 1), 0).finished(),
      (Eigen::Matrix2cd() << 1, 0, 0, -1).finished()};
  return mats[k];
}
}  // namespace

bool DeviceDescription::has_edge(int a, int b) const {
  for (const auto& e : edges)
    if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) return true;
  return false;
}

const EdgeProps& DeviceDescription::edge(int a, int b) const {
  for (const auto& e : edges)
    if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) return e;
  throw std::invalid_argument("no coupling edge between device qubits " + std::to_string(a) +
                              " and " + std::to_string(b));
}

void DeviceDescription::validate() const {
  if (qubits.empty()) throw std::invalid_argument("device: no qubits");
  auto in01 = [](double p) { return p >= 0.0 && p <= 1.0; };
  for (std::size_t q = 0; q < qubits.size(); ++q) {
    const auto& qp = qubits[q];
    const std::string tag = "device qubit " + std::to_string(q);
    if (qp.t1_us <= 0 || qp.t2_us <= 0)
      throw std::invalid_argument(tag + ": T1 and T2 must be positive");
    if (qp.t2_us > 2.0 * qp.t1_us + 1e-9)
      throw std::invalid_argument(tag + ": T2 must not exceed 2*T1");
    if (!in01(qp.gate1_error)) throw std::invalid_argument(tag + ": gate error outside [0,1]");
    for (int r = 0; r < 2; ++r) {
      double sum = 0;
      for (int c = 0; c < 2; ++c) {
        if (!in01(qp.readout.m[r][c]))
          throw std::invalid_argument(tag + ": readout probability outside [0,1]");
        sum += qp.readout.m[r][c];
      }
      if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument(tag + ": readout confusion row does not sum to 1");
    }
  }
  for (const auto& e : edges) {
    if (e.a < 0 || e.b < 0 || e.a >= n_qubits() || e.b >= n_qubits() || e.a == e.b)
      throw std::invalid_argument("device: invalid coupling edge");
    if (!in01(e.gate2_error))
      throw std::invalid_argument("device: two-qubit gate error outside [0,1]");
  }
}

DeviceDescription load_device(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open device file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("device file " + path + ": " + e.what());
  }
  DeviceDescription d;
  for (const auto& jq : j.at("qubits")) {
    QubitProps q;
    q.t1_us = jq.at("t1_us").get<double>();
    q.t2_us = jq.at("t2_us").get<double>();
    const auto& ro = jq.at("readout");
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) q.readout.m[r][c] = ro.at(r).at(c).get<double>();
    q.gate1_error = jq.at("gate_1q").at("error").get<double>();
    q.gate1_duration_ns = jq.at("gate_1q").at("duration_ns").get<double>();
    d.qubits.push_back(q);
  }
  for (const auto& je : j.at("edges")) {
    EdgeProps e;
    e.a = je.at("pair").at(0).get<int>();
    e.b = je.at("pair").at(1).get<int>();
    e.gate2_error = je.at("gate_2q").at("error").get<double>();
    e.gate2_duration_ns = je.at("gate_2q").at("duration_ns").get<double>();
    d.edges.push_back(e);
  }
  d.validate();
  return d;
}

DeviceDescription bundled_device() {
  return load_device(std::string(ONIONVQE_DATA_DIR) + "/fakemumbai_approx.json");
}

namespace {
// All simple paths of the requested length, keeping the one with the lowest
// summed two-qubit error (lexicographic tie-break).
void path_search(const DeviceDescription& d, std::vector<int>& path, std::vector<bool>& used,
                 double cost, int target_len, double& best_cost, std::vector<int>& best) {
  if (static_cast<int>(path.size()) == target_len) {
    if (cost < best_cost - 1e-15 ||
        (std::abs(cost - best_cost) <= 1e-15 && (best.empty() || path < best))) {
      best_cost = cost;
      best = path;
    }
    return;
  }
  if (cost >= best_cost) return;
  const int last = path.back();
  for (const auto& e : d.edges) {
    int next = -1;
    if (e.a == last) next = e.b;
    else if (e.b == last) next = e.a;
    if (next < 0 || used[static_cast<std::size_t>(next)]) continue;
    used[static_cast<std::size_t>(next)] = true;
    path.push_back(next);
    path_search(d, path, used, cost + e.gate2_error, target_len, best_cost, best);
    path.pop_back();
    used[static_cast<std::size_t>(next)] = false;
  }
}
}  // namespace

Layout embed_layout(const DeviceDescription& desc, int n_logical,
                    const std::optional<Layout>& requested) {
  desc.validate();
  if (n_logical < 1 || n_logical > desc.n_qubits())
    throw std::invalid_argument("embed_layout: need 1 <= n_logical <= device size");
  if (requested) {
    const auto& map = requested->map;
    if (static_cast<int>(map.size()) != n_logical)
      throw std::invalid_argument("embed_layout: requested layout has wrong length");
    std::vector<bool> used(static_cast<std::size_t>(desc.n_qubits()), false);
    for (int dq : map) {
      if (dq < 0 || dq >= desc.n_qubits() || used[static_cast<std::size_t>(dq)])
        throw std::invalid_argument("embed_layout: layout is not injective into the device");
      used[static_cast<std::size_t>(dq)] = true;
    }
    for (int i = 0; i + 1 < n_logical; ++i)
      if (!desc.has_edge(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(i + 1)]))
        throw std::invalid_argument("embed_layout: qubits " + std::to_string(map[i]) + "," +
                                    std::to_string(map[i + 1]) + " are not coupled");
    return *requested;
  }
  std::vector<int> best;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int start = 0; start < desc.n_qubits(); ++start) {
    std::vector<int> path{start};
    std::vector<bool> used(static_cast<std::size_t>(desc.n_qubits()), false);
    used[static_cast<std::size_t>(start)] = true;
    path_search(desc, path, used, 0.0, n_logical, best_cost, best);
  }
  if (best.empty()) throw std::runtime_error("embed_layout: no coupled path of requested length");
  return Layout{best};
}

// Parameterized as rho -> (1 - p) rho + p I/2^n, so p = 1 is the fully
// mixing channel.
std::vector<Eigen::Matrix2cd> kraus_depolarizing1(double p) {
  if (p < 0 || p > 4.0 / 3.0)
    throw std::invalid_argument("depolarizing probability outside [0, 4/3]");
  std::vector<Eigen::Matrix2cd> k;
  k.push_back(std::sqrt(1.0 - 3.0 * p / 4.0) * pauli_matrix_1q(0));
  for (int i = 1; i < 4; ++i) k.push_back(std::sqrt(p / 4.0) * pauli_matrix_1q(i));
  return k;
}

std::vector<Eigen::Matrix4cd> kraus_depolarizing2(double p) {
  if (p < 0 || p > 16.0 / 15.0)
    throw std::invalid_argument("depolarizing probability outside [0, 16/15]");
  std::vector<Eigen::Matrix4cd> k;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double w = (i == 0 && j == 0) ? 1.0 - 15.0 * p / 16.0 : p / 16.0;
      k.push_back(std::sqrt(w) *
                  Eigen::kroneckerProduct(pauli_matrix_1q(i), pauli_matrix_1q(j)).eval());
    }
  return k;
}

std::vector<Eigen::Matrix2cd> kraus_thermal_relaxation(double t1_us, double t2_us,
                                                       double duration_ns) {
  if (t1_us <= 0 || t2_us <= 0) throw std::invalid_argument("relaxation times must be positive");
  if (t2_us > 2.0 * t1_us + 1e-9) throw std::invalid_argument("T2 must not exceed 2*T1");
  const double t_us = duration_ns * 1e-3;
  const double e1 = std::exp(-t_us / t1_us);
  const double e2 = std::exp(-t_us / t2_us);
  const double gamma = 1.0 - e1;                          // amplitude damping
  const double lambda = std::max(0.0, 1.0 - e2 * e2 / e1);  // residual dephasing
  Eigen::Matrix2cd k0 = Eigen::Matrix2cd::Zero();
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt((1.0 - gamma) * (1.0 - lambda));
  Eigen::Matrix2cd k1 = Eigen::Matrix2cd::Zero();
  k1(0, 1) = std::sqrt(gamma);
  Eigen::Matrix2cd k2 = Eigen::Matrix2cd::Zero();
  k2(1, 1) = std::sqrt((1.0 - gamma) * lambda);
  return {k0, k1, k2};
}

namespace {
template <int Dim>
Eigen::Matrix<cd, Dim * Dim, Dim * Dim> superop_from_kraus_impl(
    const std::vector<Eigen::Matrix<cd, Dim, Dim>>& kraus) {
  Eigen::Matrix<cd, Dim * Dim, Dim * Dim> s = Eigen::Matrix<cd, Dim * Dim, Dim * Dim>::Zero();
  for (const auto& k : kraus)
    for (int a = 0; a < Dim; ++a)
      for (int b = 0; b < Dim; ++b)
        for (int c = 0; c < Dim; ++c)
          for (int d = 0; d < Dim; ++d)
            s(a * Dim + b, c * Dim + d) += k(a, c) * std::conj(k(b, d));
  return s;
}
}  // namespace

Superop1 superop_from_kraus1(const std::vector<Eigen::Matrix2cd>& kraus) {
  return superop_from_kraus_impl<2>(kraus);
}

Superop2 superop_from_kraus2(const std::vector<Eigen::Matrix4cd>& kraus) {
  return superop_from_kraus_impl<4>(kraus);
}

Superop1 superop_from_unitary1(const Eigen::Matrix2cd& u) {
  return superop_from_kraus1({u});
}

Superop2 superop_from_unitary2(const Eigen::Matrix4cd& u) {
  return superop_from_kraus2({u});
}

const NoiseModel::EdgeChannel& NoiseModel::edge_channel(int a, int b) const {
  const auto it = gate2_channel.find({std::min(a, b), std::max(a, b)});
  if (it == gate2_channel.end())
    throw std::invalid_argument("noise model has no channel for logical pair " +
                                std::to_string(a) + "," + std::to_string(b));
  return it->second;
}

NoiseModel NoiseModel::ideal(int n_logical) {
  NoiseModel nm;
  nm.n_logical = n_logical;
  nm.gate1_channel.assign(static_cast<std::size_t>(n_logical), Superop1::Identity());
  nm.readout.assign(static_cast<std::size_t>(n_logical), ReadoutConfusion{});
  nm.layout.map.resize(static_cast<std::size_t>(n_logical));
  for (int q = 0; q < n_logical; ++q) nm.layout.map[static_cast<std::size_t>(q)] = q;
  for (int a = 0; a < n_logical; ++a)
    for (int b = a + 1; b < n_logical; ++b) nm.gate2_channel[{a, b}] = NoiseModel::EdgeChannel{};
  nm.is_trivial = true;
  return nm;
}

NoiseModel build_noise_model(const DeviceDescription& desc, const Layout& layout) {
  desc.validate();
  const int n = static_cast<int>(layout.map.size());
  embed_layout(desc, n, layout);  // revalidates the path
  NoiseModel nm;
  nm.n_logical = n;
  nm.layout = layout;
  double worst_deviation = 0.0;
  for (int q = 0; q < n; ++q) {
    const auto& dq = desc.qubits[static_cast<std::size_t>(layout.map[static_cast<std::size_t>(q)])];
    const Superop1 dep = superop_from_kraus1(kraus_depolarizing1(dq.gate1_error));
    const Superop1 relax = superop_from_kraus1(
        kraus_thermal_relaxation(dq.t1_us, dq.t2_us, dq.gate1_duration_ns));
    nm.gate1_channel.push_back(relax * dep);
    nm.readout.push_back(dq.readout);
    worst_deviation = std::max(worst_deviation, dq.readout.m[0][1] + dq.readout.m[1][0]);
    worst_deviation = std::max(
        worst_deviation,
        (nm.gate1_channel.back() - Superop1::Identity()).cwiseAbs().maxCoeff());
  }
  for (int q = 0; q + 1 < n; ++q) {
    const int da = layout.map[static_cast<std::size_t>(q)];
    const int db = layout.map[static_cast<std::size_t>(q + 1)];
    const auto& ep = desc.edge(da, db);
    const Superop2 dep = superop_from_kraus2(kraus_depolarizing2(ep.gate2_error));
    const auto& qa = desc.qubits[static_cast<std::size_t>(da)];
    const auto& qb = desc.qubits[static_cast<std::size_t>(db)];
    const Superop1 ra =
        superop_from_kraus1(kraus_thermal_relaxation(qa.t1_us, qa.t2_us, ep.gate2_duration_ns));
    const Superop1 rb =
        superop_from_kraus1(kraus_thermal_relaxation(qb.t1_us, qb.t2_us, ep.gate2_duration_ns));
    // Independent relaxations on the pair: S[(a1 a2, b1 b2), (c1 c2, d1 d2)]
    // = Ra[(a1,b1),(c1,d1)] Rb[(a2,b2),(c2,d2)], first qubit = high bit.
    Superop2 relax2;
    for (int a1 = 0; a1 < 2; ++a1)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int b1 = 0; b1 < 2; ++b1)
          for (int b2 = 0; b2 < 2; ++b2)
            for (int c1 = 0; c1 < 2; ++c1)
              for (int c2 = 0; c2 < 2; ++c2)
                for (int d1 = 0; d1 < 2; ++d1)
                  for (int d2 = 0; d2 < 2; ++d2)
                    relax2((a1 * 2 + a2) * 4 + (b1 * 2 + b2), (c1 * 2 + c2) * 4 + (d1 * 2 + d2)) =
                        ra(a1 * 2 + b1, c1 * 2 + d1) * rb(a2 * 2 + b2, c2 * 2 + d2);
    const Superop2 combined = relax2 * dep;
    NoiseModel::EdgeChannel ec;
    ec.dep_p = ep.gate2_error;
    ec.relax_a = ra;
    ec.relax_b = rb;
    ec.fused = combined;
    nm.gate2_channel[{q, q + 1}] = ec;
    worst_deviation =
        std::max(worst_deviation, (combined - Superop2::Identity()).cwiseAbs().maxCoeff());
  }
  nm.is_trivial = worst_deviation < 1e-10;
  return nm;
}

}  // namespace onionvqe
