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

#include <cmath>
#include <numbers>

#include "onionvqe/vqe.hpp"

using namespace onionvqe;

namespace {

// parameter-shift gradient of the problem's exact energy at the onion point
std::vector<double> initial_gradient(const RunConfig& cfg) {
  const auto pb = compile_problem(cfg);
  InitStrategy init = cfg.init;
  init.seed = cfg.seed;
  std::vector<double> x = init_params(cfg.ansatz, init);
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    x[i] = saved + std::numbers::pi / 2;
    const double plus = pb->exact_energy(x);
    x[i] = saved - std::numbers::pi / 2;
    const double minus = pb->exact_energy(x);
    x[i] = saved;
    g[i] = 0.5 * (plus - minus);
  }
  return g;
}

double inf_norm(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_SUITE("vqe") {

TEST_CASE("four-qubit onion run reaches the ground state") {
  RunConfig cfg = RunConfig::standard(1, 2);
  cfg.seed = 0;
  const auto rec = run_vqe(cfg);
  CHECK(rec.ok);
  CHECK(rec.energy_error < 1e-4);
  CHECK(rec.energy_error >= -1e-9);
  CHECK(rec.final_fidelity > 0.99);
  CHECK(rec.initial_fidelity == doctest::Approx(0.787).epsilon(0.03));
}

TEST_CASE("exact runs are deterministic given the config") {
  RunConfig cfg = RunConfig::standard(1, 2);
  cfg.seed = 5;
  const auto a = run_vqe(cfg);
  const auto b = run_vqe(cfg);
  CHECK(a.final_energy == b.final_energy);
  CHECK(a.final_params == b.final_params);
  CHECK(a.trace.evaluations == b.trace.evaluations);
}

TEST_CASE("onion runs never fall below the mean-field fidelity") {
  for (std::uint64_t seed : {0ull, 1ull, 2ull}) {
    RunConfig cfg = RunConfig::standard(1, 2);
    cfg.seed = seed;
    const auto rec = run_vqe(cfg);
    CHECK(rec.final_fidelity >= rec.initial_fidelity - 1e-9);
  }
}

TEST_CASE("seed sweeps preserve order and match single runs") {
  RunConfig cfg = RunConfig::standard(1, 2);
  const std::vector<std::uint64_t> seeds{3, 1, 4};
  const auto records = seed_sweep(cfg, seeds, 2);
  REQUIRE(records.size() == 3);
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    CHECK(records[i].seed == seeds[i]);
    RunConfig single = cfg;
    single.seed = seeds[i];
    const auto ref = run_vqe(single);
    CHECK(records[i].final_energy == ref.final_energy);
  }
  const auto summary = SweepSummary::of(records);
  CHECK(summary.n_runs == 3);
  CHECK(summary.n_failed == 0);
  CHECK(summary.min_fidelity <= summary.median_fidelity);
  CHECK(summary.median_fidelity <= summary.max_fidelity);
}

TEST_CASE("csv output is stable across reruns") {
  RunConfig cfg = RunConfig::standard(1, 2);
  const std::vector<std::uint64_t> seeds{0, 1};
  const auto a = seed_sweep(cfg, seeds, 2);
  const auto b = seed_sweep(cfg, seeds, 1);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(record_csv_row(a[i]) == record_csv_row(b[i]));
  CHECK(records_csv_header() ==
        "seed,init,layers,n_qubits,eval_mode,final_energy_eV,energy_error_eV,fidelity,evals,"
        "termination");
}

TEST_CASE("initial gradients: entangled start lives, rotated product start stalls") {
  RunConfig cfg = RunConfig::standard(1, 4);
  cfg.seed = 7;
  cfg.basis = Basis::AO;
  CHECK(inf_norm(initial_gradient(cfg)) > 1e-6);
  cfg.basis = Basis::MO;
  CHECK(inf_norm(initial_gradient(cfg)) < 1e-10);

  // a rotated-basis run still terminates normally
  cfg.optimizer.max_evals = 500;
  const auto rec = run_vqe(cfg);
  CHECK(rec.ok);
}

TEST_CASE("shot-mode runs are reproducible and consistent with exact mode") {
  RunConfig cfg = RunConfig::standard(1, 2);
  cfg.eval_mode = EvalMode::Shots;
  cfg.shots = 4096;
  cfg.optimizer = OptimizerConfig::nft();
  cfg.seed = 2;
  const auto a = run_vqe(cfg);
  const auto b = run_vqe(cfg);
  CHECK(a.final_energy == b.final_energy);
  CHECK(a.final_fidelity == b.final_fidelity);
  CHECK(a.final_fidelity > 0.9);  // NFT with shots still finds a good state
}

TEST_CASE("low-fidelity control: ground-state start stays at the ground state") {
  RunConfig cfg = RunConfig::standard(1, 2);
  cfg.seed = 1;
  Statevector gs;
  gs.n_qubits = 4;
  gs.amps.resize(16);
  const auto spectrum =
      ground(jordan_wigner(build_aim_hamiltonian(bundled_aim_row(1)), chain_ordering(1)));
  for (Eigen::Index k = 0; k < 16; ++k)
    gs.amps[static_cast<std::size_t>(k)] = spectrum.ground_space(k, 0);
  cfg.initial_state = InitialState::Custom;
  cfg.custom_initial = gs;
  const auto rec = run_vqe(cfg);
  CHECK(rec.final_fidelity == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(rec.energy_error) < 1e-8);
}

TEST_CASE("low-fidelity control construction yields a low-overlap entangled start") {
  RunConfig cfg = RunConfig::standard(1, 2);
  cfg.seed = 4;
  const auto rec = low_fidelity_control(cfg);
  CHECK(rec.ok);
  CHECK(rec.initial_fidelity < 1e-3);
}

TEST_CASE("config validation") {
  RunConfig cfg = RunConfig::standard(1, 2);
  cfg.ansatz.n_qubits = 6;  // wrong for n_b = 1
  CHECK_THROWS_AS(run_vqe(cfg), std::invalid_argument);

  RunConfig noisy = RunConfig::standard(1, 2);
  noisy.eval_mode = EvalMode::Noisy;  // no noise model attached
  CHECK_THROWS_AS(run_vqe(noisy), std::invalid_argument);
}

TEST_CASE("record serialization carries the run summary") {
  RunConfig cfg = RunConfig::standard(1, 2);
  cfg.seed = 9;
  const auto rec = run_vqe(cfg);
  const std::string j = rec.to_json();
  CHECK(j.find("\"fidelity\"") != std::string::npos);
  CHECK(j.find("\"energy_error_eV\"") != std::string::npos);
  CHECK(j.find("\"trace_energies\"") != std::string::npos);
}

}  // TEST_SUITE
