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

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace onionvqe {

/// Counting wrapper around the energy functional. The callback receives the
/// evaluation index, which shot-based objectives fold into their RNG seed so
/// every evaluation draws an independent, reproducible sample.
class ObjectiveHandle {
 public:
  using Fn = std::function<double(std::span<const double>, long)>;

  explicit ObjectiveHandle(Fn fn) : fn_(std::move(fn)) {}

  double operator()(std::span<const double> x) { return fn_(x, evals_++); }
  long evaluations() const { return evals_; }

 private:
  Fn fn_;
  long evals_ = 0;
};

enum class OptKind : std::uint8_t { QuasiNewtonFD, NFT, SPSA };

struct OptimizerConfig {
  OptKind kind = OptKind::QuasiNewtonFD;
  // Forward-difference step, radians. A coarse step (0.01) biases the
  // gradient by ~step/2 * curvature and stalls the endgame around 1e-4 eV;
  // the tight default keeps the bias below the termination thresholds.
  double fd_step = 1e-8;
  double rel_tol = 2.22e-15;  // relative objective-change termination
  long max_evals = 15000;
  long max_iters = 15000;
  int memory = 10;            // quasi-Newton history depth
  int nft_reset_interval = 32;  // re-evaluate carried energy every N updates
  double spsa_a = 0.2;
  double spsa_c = 0.1;
  std::uint64_t spsa_seed = 0;

  static OptimizerConfig quasi_newton();
  static OptimizerConfig nft();
  static OptimizerConfig spsa();
};

enum class Termination : std::uint8_t { Tol, MaxEvals, MaxIters, Stalled };

const char* termination_name(Termination t);

struct OptTrace {
  struct Point {
    std::vector<double> params;
    double energy = 0.0;
    long evaluations = 0;  // objective evaluations consumed so far
  };
  std::vector<Point> iterates;  // accepted iterates, initial point included
  Termination termination = Termination::Tol;
  long evaluations = 0;
};

struct OptResult {
  std::vector<double> x;
  double fun = 0.0;
  OptTrace trace;
};

/// Forward differences (f(x + eps e_i) - f(x)) / eps; exactly dim + 1
/// objective evaluations.
std::vector<double> fd_gradient(ObjectiveHandle& f, std::span<const double> x, double eps);

/// Limited-memory quasi-Newton with box bounds [x0_i - 2pi, x0_i + 2pi],
/// forward-difference gradients and Armijo backtracking on the projected
/// step. Accepted iterates never increase the objective.
OptResult minimize_qn(ObjectiveHandle& f, std::vector<double> x0, const OptimizerConfig& cfg);

/// Sequential coordinate minimizer for objectives that are sinusoidal in
/// each parameter: fits E(phi) = a cos(phi - b) + c through three points and
/// jumps to the analytic minimum. One iteration = one full parameter cycle.
OptResult minimize_nft(ObjectiveHandle& f, std::vector<double> x0, const OptimizerConfig& cfg);

/// Simultaneous-perturbation stochastic approximation with the standard
/// decaying gain sequences; comparison baseline.
OptResult minimize_spsa(ObjectiveHandle& f, std::vector<double> x0, const OptimizerConfig& cfg);

}  // namespace onionvqe
