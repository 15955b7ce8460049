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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "onionvqe/ansatz.hpp"
#include "onionvqe/density.hpp"
#include "onionvqe/exact.hpp"
#include "onionvqe/hf.hpp"
#include "onionvqe/noise.hpp"
#include "onionvqe/opt.hpp"

namespace onionvqe {

enum class Basis : std::uint8_t { AO, MO };
enum class InitialState : std::uint8_t { Zero, HF, Custom };
enum class EvalMode : std::uint8_t { Exact, Shots, Noisy };

const char* basis_name(Basis b);
const char* initial_state_name(InitialState s);
const char* eval_mode_name(EvalMode m);
const char* init_kind_name(InitKind k);

struct RunConfig {
  int n_b = 1;
  std::optional<AimParams> params;  // defaults to the bundled set for n_b
  Basis basis = Basis::AO;
  InitialState initial_state = InitialState::HF;
  Statevector custom_initial;  // used when initial_state == Custom
  AnsatzSpec ansatz;           // n_qubits must equal 2*(n_b+1)
  InitStrategy init;           // seed is overwritten by `seed` below
  OptimizerConfig optimizer = OptimizerConfig::quasi_newton();
  EvalMode eval_mode = EvalMode::Exact;
  int shots = 10240;
  std::shared_ptr<const NoiseModel> noise;  // required for Noisy
  std::uint64_t seed = 0;

  /// AO chain-ordered config with the bundled parameter row, HF start and
  /// onion initialization.
  static RunConfig standard(int n_b, int n_layers);
};

struct VqeRunRecord {
  // config echo
  int n_b = 0;
  int n_qubits = 0;
  int n_layers = 0;
  Basis basis = Basis::AO;
  InitialState initial_state = InitialState::HF;
  Entangler entangler = Entangler::CZ;
  InitKind init = InitKind::Onion;
  OptKind optimizer = OptKind::QuasiNewtonFD;
  EvalMode eval_mode = EvalMode::Exact;
  int shots = 0;
  std::uint64_t seed = 0;

  // outcome
  OptTrace trace;
  std::vector<double> final_params;
  double final_energy = 0.0;    // eV, evaluated in the run's eval mode
  double e0 = 0.0;              // eV, exact ground energy
  double energy_error = 0.0;    // final_energy - e0
  double final_fidelity = 0.0;  // statevector-evaluated with the optimized parameters
  double initial_fidelity = 0.0;
  double noisy_fidelity = -1.0;  // Tr(P_gs rho) diagnostic, noisy runs only
  double wall_time_s = 0.0;
  bool ok = true;
  std::string error;

  std::string to_json() const;
};

/// Shared per-configuration state (Hamiltonian, spectrum, initial state),
/// reused across the seeds of a sweep.
struct CompiledProblem {
  AimParams params;
  PauliSum hamiltonian;
  MeasurementGroups groups;  // only populated when the basis allows it
  bool groups_available = false;
  Spectrum spectrum;
  double e0 = 0.0;
  int n_electrons = 0;
  Statevector initial;
  Circuit circuit;
  int n_qubits = 0;

  double exact_energy(std::span<const double> x) const {
    return expectation_exact(hamiltonian, run_circuit(circuit, x, initial));
  }
};

std::shared_ptr<const CompiledProblem> compile_problem(const RunConfig& cfg);

/// Full driver: Hamiltonian + initial state + ansatz + optimizer. The final
/// fidelity and the reported exact energies are always evaluated on the
/// noiseless statevector simulator with the optimized parameters.
VqeRunRecord run_vqe(const RunConfig& cfg);
VqeRunRecord run_vqe(const RunConfig& cfg, const CompiledProblem& problem);

/// Independent seeded runs with deterministic output order; failures are
/// recorded per seed and the sweep continues. workers <= 0 reads
/// ONIONVQE_WORKERS, then falls back to the hardware thread count.
std::vector<VqeRunRecord> seed_sweep(const RunConfig& cfg_template,
                                     const std::vector<std::uint64_t>& seeds, int workers = 0);

struct SweepSummary {
  std::size_t n_runs = 0;
  std::size_t n_failed = 0;
  double min_fidelity = 0.0;
  double median_fidelity = 0.0;
  double max_fidelity = 0.0;
  double fraction_above(const std::vector<VqeRunRecord>& records, double f_ref);
  static SweepSummary of(const std::vector<VqeRunRecord>& records);
};

double fraction_above(const std::vector<VqeRunRecord>& records, double f_ref);

/// Control experiment: replaces the initial state by a seeded random
/// entangled state orthogonalized against the ground space (fidelity < 1e-3)
/// and runs the standard pipeline.
VqeRunRecord low_fidelity_control(RunConfig cfg);

/// CSV emission with the stable column order
/// seed,init,layers,n_qubits,eval_mode,final_energy_eV,energy_error_eV,
/// fidelity,evals,termination.
void write_records_csv(const std::string& path, const std::vector<VqeRunRecord>& records);
std::string records_csv_header();
std::string record_csv_row(const VqeRunRecord& r);

}  // namespace onionvqe
