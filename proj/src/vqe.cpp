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

#include "onionvqe/vqe.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "onionvqe/rng.hpp"

namespace onionvqe {

const char* basis_name(Basis b) { return b == Basis::AO ? "ao" : "mo"; }

const char* initial_state_name(InitialState s) {
  switch (s) {
    case InitialState::Zero: return "zero";
    case InitialState::HF: return "hf";
    case InitialState::Custom: return "custom";
  }
  return "?";
}

const char* eval_mode_name(EvalMode m) {
  switch (m) {
    case EvalMode::Exact: return "exact";
    case EvalMode::Shots: return "shots";
    case EvalMode::Noisy: return "noisy";
  }
  return "?";
}

const char* init_kind_name(InitKind k) {
  switch (k) {
    case InitKind::Onion: return "onion";
    case InitKind::Random: return "random";
    case InitKind::NearZero: return "near_zero";
    case InitKind::Pi: return "pi";
  }
  return "?";
}

RunConfig RunConfig::standard(int n_b, int n_layers) {
  RunConfig cfg;
  cfg.n_b = n_b;
  cfg.ansatz = AnsatzSpec::linear(2 * (n_b + 1), n_layers, Entangler::CZ);
  cfg.init.kind = InitKind::Onion;
  return cfg;
}

namespace {

int electrons_from_spectrum(const Spectrum& s) {
  Statevector probe;
  probe.n_qubits = static_cast<int>(std::round(std::log2(double(s.ground_space.rows()))));
  probe.amps.assign(static_cast<std::size_t>(s.ground_space.rows()), {});
  for (Eigen::Index k = 0; k < s.ground_space.rows(); ++k)
    probe.amps[static_cast<std::size_t>(k)] = s.ground_space(k, 0);
  const double n = expectation_total_number(probe);
  const int rounded = static_cast<int>(std::round(n));
  if (std::abs(n - rounded) > 1e-6)
    throw std::runtime_error("ground state has non-integer electron number " + std::to_string(n));
  return rounded;
}

}  // namespace

std::shared_ptr<const CompiledProblem> compile_problem(const RunConfig& cfg) {
  auto pb = std::make_shared<CompiledProblem>();
  pb->params = cfg.params ? *cfg.params : bundled_aim_row(cfg.n_b);
  pb->params.validate();
  if (pb->params.n_b != cfg.n_b)
    throw std::invalid_argument("run config n_b does not match parameter set");
  pb->n_qubits = pb->params.n_modes();
  if (cfg.ansatz.n_qubits != pb->n_qubits)
    throw std::invalid_argument("ansatz qubit count must equal 2*(n_b+1)");
  cfg.ansatz.validate();

  const auto fermion_terms = build_aim_hamiltonian(pb->params);
  const QubitOrdering chain = chain_ordering(cfg.n_b);
  const PauliSum h_ao = jordan_wigner(fermion_terms, chain);

  if (cfg.basis == Basis::AO) {
    pb->hamiltonian = h_ao;
    pb->spectrum = ground(pb->hamiltonian);
    pb->e0 = pb->spectrum.e0();
    pb->n_electrons = electrons_from_spectrum(pb->spectrum);
  } else {
    const Spectrum s_ao = ground(h_ao);
    const int n_e = electrons_from_spectrum(s_ao);
    const OrbitalCoeffs orbitals = ghf_solve(pb->params, n_e);
    const auto mo_terms = rotate_to_mo_basis(fermion_terms, orbitals.c);
    QubitOrdering identity;
    identity.perm.resize(static_cast<std::size_t>(pb->n_qubits));
    for (int i = 0; i < pb->n_qubits; ++i) identity.perm[static_cast<std::size_t>(i)] = i;
    pb->hamiltonian = jordan_wigner(mo_terms, identity);
    pb->spectrum = ground(pb->hamiltonian);
    pb->e0 = pb->spectrum.e0();
    pb->n_electrons = n_e;
  }

  try {
    pb->groups = group_measurement_bases(pb->hamiltonian);
    pb->groups_available = true;
  } catch (const std::invalid_argument&) {
    pb->groups_available = false;  // mixed-letter strings (rotated basis)
  }

  switch (cfg.initial_state) {
    case InitialState::Zero:
      pb->initial = Statevector::zero_state(pb->n_qubits);
      break;
    case InitialState::HF: {
      if (cfg.basis == Basis::AO) {
        const OrbitalCoeffs orbitals = ghf_solve(pb->params, pb->n_electrons);
        pb->initial = slater_statevector(orbitals, chain);
      } else {
        // the mean-field state is the lowest-orbital product state here
        pb->initial = Statevector::basis_state(
            pb->n_qubits, (std::uint64_t{1} << pb->n_electrons) - 1);
      }
      break;
    }
    case InitialState::Custom:
      if (cfg.custom_initial.n_qubits != pb->n_qubits)
        throw std::invalid_argument("custom initial state has wrong qubit count");
      if (std::abs(cfg.custom_initial.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("custom initial state is not normalized");
      pb->initial = cfg.custom_initial;
      break;
  }

  pb->circuit = build_ansatz(cfg.ansatz);
  return pb;
}

VqeRunRecord run_vqe(const RunConfig& cfg) { return run_vqe(cfg, *compile_problem(cfg)); }

VqeRunRecord run_vqe(const RunConfig& cfg, const CompiledProblem& pb) {
  const auto t_start = std::chrono::steady_clock::now();

  VqeRunRecord rec;
  rec.n_b = cfg.n_b;
  rec.n_qubits = pb.n_qubits;
  rec.n_layers = cfg.ansatz.n_layers;
  rec.basis = cfg.basis;
  rec.initial_state = cfg.initial_state;
  rec.entangler = cfg.ansatz.entangler;
  rec.init = cfg.init.kind;
  rec.optimizer = cfg.optimizer.kind;
  rec.eval_mode = cfg.eval_mode;
  rec.shots = cfg.eval_mode == EvalMode::Exact ? 0 : cfg.shots;
  rec.seed = cfg.seed;
  rec.e0 = pb.e0;

  if ((cfg.eval_mode == EvalMode::Shots || cfg.eval_mode == EvalMode::Noisy) &&
      !pb.groups_available)
    throw std::invalid_argument(
        "shot-based evaluation needs single-letter measurement groups; "
        "this Hamiltonian has mixed-letter strings");
  if (cfg.eval_mode == EvalMode::Noisy && !cfg.noise)
    throw std::invalid_argument("noisy evaluation requires a noise model");

  InitStrategy init = cfg.init;
  init.seed = cfg.seed;
  std::vector<double> x0 = init_params(cfg.ansatz, init);
  rec.initial_fidelity = fidelity(pb.initial, pb.spectrum);

  const std::uint64_t shot_stream = mix_seed(cfg.seed, 0x5107u);
  DensityMatrix rho0;
  if (cfg.eval_mode == EvalMode::Noisy) rho0 = DensityMatrix::from_statevector(pb.initial);

  ObjectiveHandle objective([&](std::span<const double> x, long eval_index) {
    switch (cfg.eval_mode) {
      case EvalMode::Exact:
        return expectation_exact(pb.hamiltonian, run_circuit(pb.circuit, x, pb.initial));
      case EvalMode::Shots:
        return expectation_shots(pb.hamiltonian, pb.groups, run_circuit(pb.circuit, x, pb.initial),
                                 cfg.shots, mix_seed(shot_stream, static_cast<std::uint64_t>(eval_index)))
            .estimate;
      case EvalMode::Noisy:
        return expectation_shots_noisy(
                   pb.hamiltonian, pb.groups,
                   run_circuit_noisy(pb.circuit, x, rho0, *cfg.noise), *cfg.noise, cfg.shots,
                   mix_seed(shot_stream, static_cast<std::uint64_t>(eval_index)))
            .estimate;
    }
    throw std::logic_error("unknown eval mode");
  });

  OptimizerConfig opt_cfg = cfg.optimizer;
  opt_cfg.spsa_seed = mix_seed(cfg.seed, 0x57A5u);
  OptResult res;
  switch (opt_cfg.kind) {
    case OptKind::QuasiNewtonFD: res = minimize_qn(objective, std::move(x0), opt_cfg); break;
    case OptKind::NFT: res = minimize_nft(objective, std::move(x0), opt_cfg); break;
    case OptKind::SPSA: res = minimize_spsa(objective, std::move(x0), opt_cfg); break;
  }

  rec.final_params = res.x;
  rec.trace = std::move(res.trace);

  // Final metrics follow the statevector evaluation protocol: fidelity and
  // the exact energy come from a noiseless run with the optimized parameters.
  const Statevector psi_final = run_circuit(pb.circuit, rec.final_params, pb.initial);
  rec.final_fidelity = fidelity(psi_final, pb.spectrum);
  switch (cfg.eval_mode) {
    case EvalMode::Exact:
      rec.final_energy = expectation_exact(pb.hamiltonian, psi_final);
      break;
    case EvalMode::Shots:
      rec.final_energy =
          expectation_shots(pb.hamiltonian, pb.groups, psi_final, cfg.shots,
                            mix_seed(shot_stream, 0xF17A1u))
              .estimate;
      break;
    case EvalMode::Noisy: {
      const DensityMatrix rho_final =
          run_circuit_noisy(pb.circuit, rec.final_params, rho0, *cfg.noise);
      rec.final_energy = expectation_shots_noisy(pb.hamiltonian, pb.groups, rho_final, *cfg.noise,
                                                 cfg.shots, mix_seed(shot_stream, 0xF17A1u))
                             .estimate;
      rec.noisy_fidelity = fidelity_density(rho_final, pb.spectrum);
      break;
    }
  }
  rec.energy_error = rec.final_energy - pb.e0;
  rec.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return rec;
}

std::vector<VqeRunRecord> seed_sweep(const RunConfig& cfg_template,
                                     const std::vector<std::uint64_t>& seeds, int workers) {
  if (seeds.empty()) throw std::invalid_argument("seed_sweep: need at least one seed");
  if (workers <= 0) {
    if (const char* env = std::getenv("ONIONVQE_WORKERS")) workers = std::atoi(env);
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
  }
  workers = std::min<int>(workers, static_cast<int>(seeds.size()));

  const auto problem = compile_problem(cfg_template);
  std::vector<VqeRunRecord> records(seeds.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= seeds.size()) return;
      RunConfig cfg = cfg_template;
      cfg.seed = seeds[i];
      try {
        records[i] = run_vqe(cfg, *problem);
      } catch (const std::exception& e) {
        VqeRunRecord bad;
        bad.n_b = cfg.n_b;
        bad.seed = cfg.seed;
        bad.ok = false;
        bad.error = e.what();
        records[i] = std::move(bad);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return records;
}

double fraction_above(const std::vector<VqeRunRecord>& records, double f_ref) {
  std::size_t ok = 0, above = 0;
  for (const auto& r : records) {
    if (!r.ok) continue;
    ++ok;
    if (r.final_fidelity > f_ref) ++above;
  }
  return ok == 0 ? 0.0 : static_cast<double>(above) / static_cast<double>(ok);
}

double SweepSummary::fraction_above(const std::vector<VqeRunRecord>& records, double f_ref) {
  return onionvqe::fraction_above(records, f_ref);
}

SweepSummary SweepSummary::of(const std::vector<VqeRunRecord>& records) {
  SweepSummary s;
  s.n_runs = records.size();
  std::vector<double> fids;
  for (const auto& r : records) {
    if (!r.ok) {
      ++s.n_failed;
      continue;
    }
    fids.push_back(r.final_fidelity);
  }
  if (!fids.empty()) {
    std::sort(fids.begin(), fids.end());
    s.min_fidelity = fids.front();
    s.max_fidelity = fids.back();
    s.median_fidelity = fids[fids.size() / 2];
  }
  return s;
}

VqeRunRecord low_fidelity_control(RunConfig cfg) {
  const auto problem = compile_problem(cfg);
  const int n = problem->n_qubits;
  const std::size_t dim = std::size_t{1} << n;

  Rng rng(mix_seed(cfg.seed, 0x10f1u));
  Statevector psi;
  psi.n_qubits = n;
  psi.amps.resize(dim);
  for (auto& a : psi.amps) a = std::complex<double>(rng.normal(), rng.normal());
  // project out the ground space, leaving an entangled state with F ~ 0
  Eigen::Map<Eigen::VectorXcd> v(psi.amps.data(), static_cast<Eigen::Index>(dim));
  const auto& gs = problem->spectrum.ground_space;
  v -= gs * (gs.adjoint() * v);
  v.normalize();

  cfg.initial_state = InitialState::Custom;
  cfg.custom_initial = psi;
  return run_vqe(cfg);
}

std::string records_csv_header() {
  return "seed,init,layers,n_qubits,eval_mode,final_energy_eV,energy_error_eV,fidelity,evals,"
         "termination";
}

std::string record_csv_row(const VqeRunRecord& r) {
  std::ostringstream os;
  os.precision(12);
  if (!r.ok) {
    os << r.seed << ",error,,,,,,,," << '"' << r.error << '"';
    return os.str();
  }
  os << r.seed << ',' << init_kind_name(r.init) << ',' << r.n_layers << ',' << r.n_qubits << ','
     << eval_mode_name(r.eval_mode) << ',' << r.final_energy << ',' << r.energy_error << ','
     << r.final_fidelity << ',' << r.trace.evaluations << ',' << termination_name(r.trace.termination);
  return os.str();
}

void write_records_csv(const std::string& path, const std::vector<VqeRunRecord>& records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << records_csv_header() << '\n';
  for (const auto& r : records) out << record_csv_row(r) << '\n';
}

std::string VqeRunRecord::to_json() const {
  nlohmann::json j;
  j["n_b"] = n_b;
  j["n_qubits"] = n_qubits;
  j["n_layers"] = n_layers;
  j["basis"] = basis_name(basis);
  j["initial_state"] = initial_state_name(initial_state);
  j["entangler"] = entangler == Entangler::CZ ? "cz" : "cx";
  j["init"] = init_kind_name(init);
  j["eval_mode"] = eval_mode_name(eval_mode);
  j["shots"] = shots;
  j["seed"] = seed;
  j["final_energy_eV"] = final_energy;
  j["e0_eV"] = e0;
  j["energy_error_eV"] = energy_error;
  j["fidelity"] = final_fidelity;
  j["initial_fidelity"] = initial_fidelity;
  if (noisy_fidelity >= 0) j["noisy_fidelity"] = noisy_fidelity;
  j["evaluations"] = trace.evaluations;
  j["termination"] = termination_name(trace.termination);
  j["wall_time_s"] = wall_time_s;
  j["final_params"] = final_params;
  std::vector<double> energies;
  energies.reserve(trace.iterates.size());
  for (const auto& it : trace.iterates) energies.push_back(it.energy);
  j["trace_energies"] = energies;
  j["ok"] = ok;
  if (!ok) j["error"] = error;
  return j.dump(2);
}

}  // namespace onionvqe
