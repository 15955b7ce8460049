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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "onionvqe/vqe.hpp"

namespace fs = std::filesystem;
using namespace onionvqe;
using nlohmann::json;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

AimParams select_params(int n_b, const std::string& params_path) {
  if (params_path.empty()) return bundled_aim_row(n_b);
  for (const auto& p : load_aim_params(params_path))
    if (p.n_b == n_b) return p;
  throw std::runtime_error("no row with n_b=" + std::to_string(n_b) + " in " + params_path);
}

int electrons_of_ground(const Spectrum& s, int n_qubits) {
  Statevector g0;
  g0.n_qubits = n_qubits;
  g0.amps.resize(std::size_t{1} << n_qubits);
  for (Eigen::Index k = 0; k < s.ground_space.rows(); ++k)
    g0.amps[static_cast<std::size_t>(k)] = s.ground_space(k, 0);
  return static_cast<int>(std::lround(expectation_total_number(g0)));
}

struct HamWriteResult {
  std::size_t strings = 0;
  int groups = 0;  // -1 when mixed-letter strings prevent grouping
};

HamWriteResult build_ham_cmd(int n_b, const std::string& basis, const std::string& ordering_name,
                             const std::string& params_path, const std::string& out_path,
                             double drop_tol) {
  const AimParams params = select_params(n_b, params_path);
  const auto terms = build_aim_hamiltonian(params);

  PauliSum h;
  if (basis == "ao") {
    const QubitOrdering ordering =
        ordering_name == "chain" ? chain_ordering(n_b) : default_ordering(n_b);
    h = jordan_wigner(terms, ordering, drop_tol);
  } else {
    const auto s_ao = ground(jordan_wigner(terms, chain_ordering(n_b)));
    const int n_e = electrons_of_ground(s_ao, params.n_modes());
    const auto orbitals = ghf_solve(params, n_e);
    QubitOrdering identity;
    identity.perm.resize(static_cast<std::size_t>(params.n_modes()));
    for (int i = 0; i < params.n_modes(); ++i) identity.perm[static_cast<std::size_t>(i)] = i;
    h = jordan_wigner(rotate_to_mo_basis(terms, orbitals.c, drop_tol), identity, drop_tol);
  }

  if (!out_path.empty()) {
    json j;
    j["n_qubits"] = h.n_qubits;
    j["basis"] = basis;
    json jt = json::array();
    for (const auto& t : h.terms)
      jt.push_back({{"coeff_re", t.coefficient.real()},
                    {"coeff_im", t.coefficient.imag()},
                    {"string", t.string.to_string()}});
    j["terms"] = jt;
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << j.dump(1) << '\n';
  }

  HamWriteResult r;
  r.strings = count_pauli_strings(h);
  try {
    r.groups = static_cast<int>(group_measurement_bases(h).groups.size());
  } catch (const std::invalid_argument&) {
    r.groups = -1;
  }
  return r;
}

Basis parse_basis(const std::string& s) {
  if (s == "ao") return Basis::AO;
  if (s == "mo") return Basis::MO;
  throw std::runtime_error("basis must be ao or mo");
}

InitKind parse_init(const std::string& s) {
  if (s == "onion") return InitKind::Onion;
  if (s == "random") return InitKind::Random;
  if (s == "near_zero") return InitKind::NearZero;
  if (s == "pi") return InitKind::Pi;
  throw std::runtime_error("unknown initializer: " + s);
}

OptKind parse_opt(const std::string& s) {
  if (s == "qn") return OptKind::QuasiNewtonFD;
  if (s == "nft") return OptKind::NFT;
  if (s == "spsa") return OptKind::SPSA;
  throw std::runtime_error("unknown optimizer: " + s);
}

// One sweep/run configuration document; axes (seeds, layers, initializers)
// fan out into individual runs.
struct ExperimentConfig {
  int n_b = 4;
  Basis basis = Basis::AO;
  InitialState initial_state = InitialState::HF;
  std::string entangler = "cz";
  std::vector<int> layers{4};
  std::vector<std::string> inits{"onion"};
  double near_zero_scale = 0.01;
  std::string optimizer = "auto";
  long max_evals = -1;
  long max_iters = -1;
  double fd_step = -1;
  std::string eval_mode = "exact";
  int shots = 10240;
  std::string device;  // empty = bundled
  std::optional<std::vector<int>> layout;
  std::vector<std::uint64_t> seeds{0};
  std::string output_dir = "out";
  int workers = 0;
};

ExperimentConfig load_experiment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  json j;
  in >> j;
  ExperimentConfig c;
  c.n_b = j.value("n_b", 4);
  c.basis = parse_basis(j.value("basis", std::string("ao")));
  const std::string init_state = j.value("initial_state", std::string("hf"));
  if (init_state == "hf") c.initial_state = InitialState::HF;
  else if (init_state == "zero") c.initial_state = InitialState::Zero;
  else throw std::runtime_error("initial_state must be hf or zero");
  c.entangler = j.value("entangler", std::string("cz"));
  if (c.entangler != "cz" && c.entangler != "cx")
    throw std::runtime_error("entangler must be cz or cx");
  if (j.contains("layers")) {
    if (j["layers"].is_array()) c.layers = j["layers"].get<std::vector<int>>();
    else c.layers = {j["layers"].get<int>()};
  }
  if (c.layers.empty()) throw std::runtime_error("layers axis is empty");
  if (j.contains("init")) {
    if (j["init"].is_array()) c.inits = j["init"].get<std::vector<std::string>>();
    else c.inits = {j["init"].get<std::string>()};
  }
  if (c.inits.empty()) throw std::runtime_error("init axis is empty");
  for (const auto& i : c.inits) (void)parse_init(i);
  c.near_zero_scale = j.value("near_zero_scale", 0.01);
  c.optimizer = j.value("optimizer", std::string("auto"));
  c.max_evals = j.value("max_evals", -1);
  c.max_iters = j.value("max_iters", -1);
  c.fd_step = j.value("fd_step", -1.0);
  c.eval_mode = j.value("eval_mode", std::string("exact"));
  if (c.eval_mode != "exact" && c.eval_mode != "shots" && c.eval_mode != "noisy")
    throw std::runtime_error("eval_mode must be exact, shots or noisy");
  c.shots = j.value("shots", 10240);
  c.device = j.value("device", std::string());
  if (j.contains("layout") && j["layout"].is_array())
    c.layout = j["layout"].get<std::vector<int>>();
  if (j.contains("seeds")) {
    const auto& js = j["seeds"];
    if (js.is_array()) {
      c.seeds = js.get<std::vector<std::uint64_t>>();
    } else {
      const std::uint64_t start = js.value("start", 0);
      const std::uint64_t count = js.value("count", 1);
      c.seeds.clear();
      for (std::uint64_t s = 0; s < count; ++s) c.seeds.push_back(start + s);
    }
  }
  if (c.seeds.empty()) throw std::runtime_error("seeds axis is empty");
  c.output_dir = j.value("output_dir", std::string("out"));
  c.workers = j.value("workers", 0);
  return c;
}

RunConfig to_run_config(const ExperimentConfig& c, int layers, const std::string& init) {
  RunConfig cfg;
  cfg.n_b = c.n_b;
  cfg.basis = c.basis;
  cfg.initial_state = c.initial_state;
  cfg.ansatz = AnsatzSpec::linear(2 * (c.n_b + 1), layers,
                                  c.entangler == "cz" ? Entangler::CZ : Entangler::CX);
  cfg.init.kind = parse_init(init);
  cfg.init.near_zero_scale = c.near_zero_scale;
  if (c.eval_mode == "exact") cfg.eval_mode = EvalMode::Exact;
  else if (c.eval_mode == "shots") cfg.eval_mode = EvalMode::Shots;
  else cfg.eval_mode = EvalMode::Noisy;
  cfg.shots = c.shots;

  std::string opt = c.optimizer;
  if (opt == "auto") opt = (cfg.eval_mode == EvalMode::Exact) ? "qn" : "nft";
  switch (parse_opt(opt)) {
    case OptKind::QuasiNewtonFD: cfg.optimizer = OptimizerConfig::quasi_newton(); break;
    case OptKind::NFT: cfg.optimizer = OptimizerConfig::nft(); break;
    case OptKind::SPSA: cfg.optimizer = OptimizerConfig::spsa(); break;
  }
  if (c.max_evals > 0) cfg.optimizer.max_evals = c.max_evals;
  if (c.max_iters > 0) cfg.optimizer.max_iters = c.max_iters;
  if (c.fd_step > 0) cfg.optimizer.fd_step = c.fd_step;

  if (cfg.eval_mode == EvalMode::Noisy) {
    const DeviceDescription dev = c.device.empty() ? bundled_device() : load_device(c.device);
    std::optional<Layout> requested;
    if (c.layout) requested = Layout{*c.layout};
    const Layout layout = embed_layout(dev, 2 * (c.n_b + 1), requested);
    cfg.noise = std::make_shared<NoiseModel>(build_noise_model(dev, layout));
  }
  return cfg;
}

int cmd_exact(int n_b, const std::string& params_path) {
  const AimParams params = select_params(n_b, params_path);
  const auto h = jordan_wigner(build_aim_hamiltonian(params), chain_ordering(n_b));
  const auto s = ground(h);
  const int n_e = electrons_of_ground(s, params.n_modes());
  const auto orbitals = ghf_solve(params, n_e);
  const auto psi_hf = slater_statevector(orbitals, chain_ordering(n_b));

  std::cout << std::setprecision(12) << "n_qubits: " << h.n_qubits << "\n"
            << "E0_eV: " << s.e0() << "\n"
            << "degeneracy: " << s.degeneracy() << "\n"
            << "electrons: " << n_e << "\n"
            << "scf_energy_eV: " << orbitals.scf_energy << "\n"
            << "hf_fidelity: " << fidelity(psi_hf, s) << "\n";
  return 0;
}

int cmd_vqe(const std::string& config_path, bool as_sweep) {
  const ExperimentConfig exp = load_experiment(config_path);
  fs::create_directories(exp.output_dir);
  std::vector<VqeRunRecord> all;
  if (as_sweep) {
    for (int layers : exp.layers)
      for (const auto& init : exp.inits) {
        const RunConfig tmpl = to_run_config(exp, layers, init);
        auto records = seed_sweep(tmpl, exp.seeds, exp.workers);
        all.insert(all.end(), std::make_move_iterator(records.begin()),
                   std::make_move_iterator(records.end()));
      }
  } else {
    RunConfig single = to_run_config(exp, exp.layers.front(), exp.inits.front());
    single.seed = exp.seeds.front();
    all.push_back(run_vqe(single));
  }

  const std::string csv_path = (fs::path(exp.output_dir) / "runs.csv").string();
  // append to an existing sweep output so multi-config studies accumulate
  std::vector<std::string> rows;
  if (fs::exists(csv_path)) {
    std::ifstream in(csv_path);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line))
      if (!line.empty()) rows.push_back(line);
  }
  for (const auto& r : all) rows.push_back(record_csv_row(r));
  std::ofstream out(csv_path);
  out << records_csv_header() << '\n';
  for (const auto& row : rows) out << row << '\n';

  for (const auto& r : all) {
    const std::string name = "run_" + std::string(init_kind_name(r.init)) + "_L" +
                             std::to_string(r.n_layers) + "_seed" + std::to_string(r.seed) +
                             ".json";
    std::ofstream jf(fs::path(exp.output_dir) / name);
    jf << r.to_json() << '\n';
  }

  const auto summary = SweepSummary::of(all);
  std::cout << "runs: " << summary.n_runs << " (failed: " << summary.n_failed << ")\n";
  if (summary.n_runs > summary.n_failed)
    std::cout << "fidelity min/median/max: " << summary.min_fidelity << " / "
              << summary.median_fidelity << " / " << summary.max_fidelity << "\n";
  std::cout << "wrote " << csv_path << "\n";
  return 0;
}

struct CsvRun {
  std::uint64_t seed;
  std::string init;
  int layers;
  int n_qubits;
  std::string eval_mode;
  double final_energy;
  double energy_error;
  double fidelity;
};

std::vector<CsvRun> read_runs_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<CsvRun> runs;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() < 10 || f[1] == "error") continue;
    CsvRun r;
    r.seed = std::stoull(f[0]);
    r.init = f[1];
    r.layers = std::stoi(f[2]);
    r.n_qubits = std::stoi(f[3]);
    r.eval_mode = f[4];
    r.final_energy = std::stod(f[5]);
    r.energy_error = std::stod(f[6]);
    r.fidelity = std::stod(f[7]);
    runs.push_back(r);
  }
  return runs;
}

int cmd_report(const std::string& dir) {
  std::vector<CsvRun> runs;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto name = entry.path().filename().string();
    if (name.size() >= 4 && name.substr(name.size() - 4) == ".csv" &&
        name.rfind("fig", 0) != 0) {
      const auto batch = read_runs_csv(entry.path());
      runs.insert(runs.end(), batch.begin(), batch.end());
    }
  }
  if (runs.empty()) throw std::runtime_error("no run CSVs found under " + dir);

  auto open_fig = [&](const std::string& name) {
    std::ofstream out(fs::path(dir) / name);
    if (!out) throw std::runtime_error("cannot write " + name);
    return out;
  };

  {  // best fidelity per system size and depth
    auto out = open_fig("fig2_fidelities.csv");
    out << "n_qubits,layers,best_fidelity\n";
    std::map<std::pair<int, int>, double> best;
    for (const auto& r : runs) {
      auto& b = best[{r.n_qubits, r.layers}];
      b = std::max(b, r.fidelity);
    }
    for (const auto& [key, f] : best)
      out << key.first << ',' << key.second << ',' << f << '\n';
  }
  {  // per-seed fidelities by initializer
    auto out = open_fig("fig3_seeds.csv");
    out << "seed,init,layers,n_qubits,fidelity\n";
    for (const auto& r : runs)
      out << r.seed << ',' << r.init << ',' << r.layers << ',' << r.n_qubits << ','
          << r.fidelity << '\n';
  }
  {  // onion vs random comparison rows
    auto out = open_fig("fig5_onion_vs_random.csv");
    out << "seed,init,fidelity\n";
    for (const auto& r : runs)
      if (r.init == "onion" || r.init == "random")
        out << r.seed << ',' << r.init << ',' << r.fidelity << '\n';
  }
  {  // best energy error per size and evaluation mode
    auto out = open_fig("fig6_energy_error.csv");
    out << "n_qubits,eval_mode,best_energy_error_eV\n";
    std::map<std::pair<int, std::string>, double> best;
    for (const auto& r : runs) {
      const auto key = std::make_pair(r.n_qubits, r.eval_mode);
      const auto it = best.find(key);
      if (it == best.end() || r.energy_error < it->second) best[key] = r.energy_error;
    }
    for (const auto& [key, e] : best) out << key.first << ',' << key.second << ',' << e << '\n';
  }
  {  // best fidelity per size and evaluation mode
    auto out = open_fig("fig7_fidelity_noisy.csv");
    out << "n_qubits,eval_mode,best_fidelity\n";
    std::map<std::pair<int, std::string>, double> best;
    for (const auto& r : runs) {
      auto& b = best[{r.n_qubits, r.eval_mode}];
      b = std::max(b, r.fidelity);
    }
    for (const auto& [key, f] : best) out << key.first << ',' << key.second << ',' << f << '\n';
  }
  std::cout << "report: " << runs.size() << " runs aggregated into 5 files under " << dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anderson-impurity ground-state preparation toolkit"};
  app.require_subcommand(1);

  auto* build = app.add_subcommand("build-ham", "construct the qubit Hamiltonian");
  int nb = 4;
  std::string basis = "ao", ordering = "chain", params_path, out_path;
  double drop_tol = 1e-12;
  build->add_option("--nb", nb, "bath site count (1-4 for bundled sets)")
      ->check(CLI::Range(1, 8));
  build->add_option("--basis", basis)->check(CLI::IsMember({"ao", "mo"}));
  build->add_option("--ordering", ordering)->check(CLI::IsMember({"chain", "default"}));
  build->add_option("--params", params_path, "parameter JSON (defaults to bundled table)");
  build->add_option("--out", out_path, "write the Pauli terms as JSON");
  build->add_option("--drop-tol", drop_tol);

  auto* exact = app.add_subcommand("exact", "exact diagonalization summary");
  int nb_exact = 4;
  std::string params_exact;
  exact->add_option("--nb", nb_exact)->check(CLI::Range(1, 8));
  exact->add_option("--params", params_exact);

  auto* vqe = app.add_subcommand("vqe", "run one configuration");
  std::string vqe_config;
  vqe->add_option("--config", vqe_config)->required();

  auto* sweep = app.add_subcommand("sweep", "fan a configuration out over its axes");
  std::string sweep_config;
  sweep->add_option("--config", sweep_config)->required();

  auto* report = app.add_subcommand("report", "aggregate run CSVs into figure data");
  std::string report_dir;
  report->add_option("--dir", report_dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (build->parsed()) {
      if (!params_path.empty() && !fs::exists(params_path)) {
        std::cerr << "error: parameter file not found: " << params_path << "\n";
        return kExitUsage;
      }
      const auto r = build_ham_cmd(nb, basis, ordering, params_path, out_path, drop_tol);
      std::cout << "pauli strings: " << r.strings << "\n";
      if (r.groups >= 0)
        std::cout << "measurement groups: " << r.groups << "\n";
      else
        std::cout << "measurement groups: n/a (mixed-letter strings)\n";
      return 0;
    }
    if (exact->parsed()) {
      if (!params_exact.empty() && !fs::exists(params_exact)) {
        std::cerr << "error: parameter file not found: " << params_exact << "\n";
        return kExitUsage;
      }
      return cmd_exact(nb_exact, params_exact);
    }
    if (vqe->parsed()) {
      if (!fs::exists(vqe_config)) {
        std::cerr << "error: config not found: " << vqe_config << "\n";
        return kExitUsage;
      }
      return cmd_vqe(vqe_config, false);
    }
    if (sweep->parsed()) {
      if (!fs::exists(sweep_config)) {
        std::cerr << "error: config not found: " << sweep_config << "\n";
        return kExitUsage;
      }
      return cmd_vqe(sweep_config, true);
    }
    if (report->parsed()) {
      if (!fs::exists(report_dir)) {
        std::cerr << "error: directory not found: " << report_dir << "\n";
        return kExitUsage;
      }
      return cmd_report(report_dir);
    }
  } catch (const std::exception& e) {
    json err;
    err["error"] = e.what();
    std::cerr << err.dump() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
