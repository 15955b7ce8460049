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

#include "onionvqe/hf.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

#include "onionvqe/rng.hpp"

namespace onionvqe {

namespace {
using cd = std::complex<double>;

// Impurity spin-orbital modes carrying the interaction.
constexpr int kImpUp = 0;
constexpr int kImpDown = 1;

Eigen::MatrixXcd fock_matrix(const Eigen::MatrixXd& h, double u, const Eigen::MatrixXcd& d) {
  Eigen::MatrixXcd f = h.cast<cd>();
  f(kImpUp, kImpUp) += u * d(kImpDown, kImpDown);
  f(kImpDown, kImpDown) += u * d(kImpUp, kImpUp);
  f(kImpUp, kImpDown) -= u * d(kImpUp, kImpDown);
  f(kImpDown, kImpUp) -= u * d(kImpDown, kImpUp);
  return f;
}

double scf_energy(const Eigen::MatrixXd& h, double u, const Eigen::MatrixXcd& d) {
  const cd direct = d(kImpUp, kImpUp) * d(kImpDown, kImpDown);
  const cd exchange = d(kImpUp, kImpDown) * d(kImpDown, kImpUp);
  return (h.cast<cd>() * d).trace().real() + u * (direct - exchange).real();
}

Eigen::MatrixXcd density_from(const Eigen::MatrixXcd& c, int n_electrons) {
  const auto occ = c.leftCols(n_electrons);
  return occ * occ.adjoint();
}

struct ScfResult {
  Eigen::MatrixXcd c;
  Eigen::VectorXd energies;
  double energy = 0.0;
  double residual = 0.0;
  bool converged = false;
};

// Fixed-point loop with Pulay (DIIS) acceleration on the commutator residual
// FD - DF. DIIS keeps the iteration on the stationary point reached from the
// given guess; plain damped mixing can drift off a spin-symmetric saddle over
// hundreds of iterations and land on a different branch. Convergence requires
// both the density change and the commutator to vanish: the density criterion
// alone can fire spuriously when two extrapolated Focks share an occupied
// subspace away from stationarity.
ScfResult scf_loop(const Eigen::MatrixXd& h, double u, int n_electrons, Eigen::MatrixXcd d,
                   const GhfOptions& opts) {
  constexpr int kDiisDepth = 8;
  std::deque<Eigen::MatrixXcd> focks, errors;
  ScfResult r;
  for (int it = 0; it < opts.max_iters; ++it) {
    Eigen::MatrixXcd f = fock_matrix(h, u, d);
    const double commutator = (f * d - d * f).cwiseAbs().maxCoeff();
    if (opts.use_diis) {
      errors.push_back(f * d - d * f);
      focks.push_back(f);
      if (static_cast<int>(errors.size()) > kDiisDepth) {
        errors.pop_front();
        focks.pop_front();
      }
      const int k = static_cast<int>(errors.size());
      if (k > 1 && it >= 2) {
        Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(k + 1, k + 1);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j)
            b(i, j) = (errors[static_cast<std::size_t>(i)].adjoint() *
                       errors[static_cast<std::size_t>(j)])
                          .trace();
        for (int i = 0; i < k; ++i) b(i, k) = b(k, i) = -1.0;
        Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(k + 1);
        rhs(k) = -1.0;
        const Eigen::VectorXcd coef = b.fullPivLu().solve(rhs);
        if (coef.allFinite()) {
          Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Zero(h.rows(), h.cols());
          for (int i = 0; i < k; ++i) mixed += coef(i) * focks[static_cast<std::size_t>(i)];
          f = 0.5 * (mixed + mixed.adjoint());
        }
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(f);
    const Eigen::MatrixXcd d_new = density_from(es.eigenvectors(), n_electrons);
    const double density_change = (d_new - d).cwiseAbs().maxCoeff();
    r.residual = std::max(density_change, commutator);
    if (opts.use_diis) {
      d = d_new;
    } else {
      d = (1.0 - opts.mixing) * d + opts.mixing * d_new;
    }
    if (r.residual < opts.density_tol) {
      d = d_new;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> final_es(fock_matrix(h, u, d));
      r.c = final_es.eigenvectors();
      r.energies = final_es.eigenvalues();
      r.energy = scf_energy(h, u, d);
      r.converged = true;
      return r;
    }
  }
  return r;
}
}  // namespace

OrbitalCoeffs ghf_solve(const AimParams& params, int n_electrons, const GhfOptions& opts) {
  params.validate();
  const int m = params.n_modes();
  if (n_electrons <= 0 || n_electrons >= m)
    throw std::invalid_argument("ghf_solve: n_electrons must be in (0, n_modes)");
  const Eigen::MatrixXd h = one_body_matrix(params);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> core(h);
  const Eigen::MatrixXcd d0 = density_from(core.eigenvectors().cast<cd>(), n_electrons);

  ScfResult best = scf_loop(h, params.u, n_electrons, d0, opts);
  double last_residual = best.residual;

  Rng rng(opts.restart_seed);
  for (int restart = 0; restart < opts.restarts; ++restart) {
    Eigen::MatrixXd a(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) a(i, j) = rng.normal();
    const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ();
    const ScfResult trial =
        scf_loop(h, params.u, n_electrons, density_from(q.cast<cd>(), n_electrons), opts);
    last_residual = trial.residual;
    if (trial.converged && (!best.converged || trial.energy < best.energy - 1e-12)) best = trial;
  }

  if (!best.converged)
    throw std::runtime_error("ghf_solve: SCF did not converge within " +
                             std::to_string(opts.max_iters) +
                             " iterations (last residual " + std::to_string(last_residual) + ")");
  OrbitalCoeffs out;
  out.c = best.c;
  out.orbital_energies = best.energies;
  out.n_electrons = n_electrons;
  out.scf_energy = best.energy;
  return out;
}

Statevector slater_statevector(const OrbitalCoeffs& coeffs, const QubitOrdering& ordering) {
  const int n = ordering.n_qubits();
  if (coeffs.c.rows() != n)
    throw std::invalid_argument("slater_statevector: orbital/ordering dimension mismatch");
  const int ne = coeffs.n_electrons;
  if (ne <= 0 || ne > n) throw std::invalid_argument("slater_statevector: bad electron count");

  std::vector<int> mode_of_qubit(static_cast<std::size_t>(n));
  for (int mode = 0; mode < n; ++mode)
    mode_of_qubit[static_cast<std::size_t>(ordering.qubit_of(mode))] = mode;

  Statevector psi = Statevector::zero_state(n);
  psi.amps[0] = 0.0;
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd sub(ne, ne);
  double norm2 = 0.0;
  for (std::size_t s = 0; s < dim; ++s) {
    if (std::popcount(s) != ne) continue;
    int row = 0;
    for (int q = 0; q < n; ++q) {
      if (!(s >> q & 1)) continue;
      sub.row(row++) = coeffs.c.row(mode_of_qubit[static_cast<std::size_t>(q)]).head(ne);
    }
    const cd amp = sub.determinant();
    psi.amps[s] = amp;
    norm2 += std::norm(amp);
  }
  if (norm2 < 1e-24) throw std::runtime_error("slater_statevector: vanishing determinant state");
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : psi.amps) a *= inv;
  return psi;
}

}  // namespace onionvqe
