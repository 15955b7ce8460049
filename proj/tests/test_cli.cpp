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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string out;
};

std::string cli_path() {
  const char* env = std::getenv("ONIONVQE_CLI");
  REQUIRE_MESSAGE(env != nullptr, "ONIONVQE_CLI must point at the binary");
  return env;
}

CmdResult run_cli(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult r;
  char buf[4096];
  while (fgets(buf, sizeof(buf), pipe)) r.out += buf;
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

long parse_count(const std::string& out, const std::string& key) {
  const auto pos = out.find(key);
  REQUIRE(pos != std::string::npos);
  return std::stol(out.substr(pos + key.size()));
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("onionvqe_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_sweep_config(const fs::path& path, const fs::path& outdir) {
  std::ofstream cfg(path);
  cfg << R"({
  "n_b": 1,
  "basis": "ao",
  "initial_state": "hf",
  "layers": [2],
  "init": ["onion", "random"],
  "eval_mode": "exact",
  "max_evals": 4000,
  "seeds": {"start": 0, "count": 3},
  "output_dir": ")" << outdir.string() << R"("
})";
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("chain-ordered hamiltonian reports three measurement groups") {
  const auto r = run_cli("build-ham --nb 4 --basis ao --ordering chain");
  CHECK(r.exit_code == 0);
  CHECK(parse_count(r.out, "measurement groups: ") == 3);
}

TEST_CASE("rotated basis inflates the string count") {
  const auto ao = run_cli("build-ham --nb 1 --basis ao");
  const auto mo = run_cli("build-ham --nb 1 --basis mo");
  CHECK(ao.exit_code == 0);
  CHECK(mo.exit_code == 0);
  CHECK(parse_count(mo.out, "pauli strings: ") > parse_count(ao.out, "pauli strings: "));
  CHECK(mo.out.find("mixed-letter") != std::string::npos);
}

TEST_CASE("missing parameter files are a usage error") {
  const auto r = run_cli("build-ham --nb 1 --params /no/such/file.json");
  CHECK(r.exit_code == 2);
}

TEST_CASE("unknown flags are a usage error") {
  const auto r = run_cli("build-ham --frobnicate");
  CHECK(r.exit_code == 2);
}

TEST_CASE("exact summary prints the electron count") {
  const auto r = run_cli("exact --nb 2");
  CHECK(r.exit_code == 0);
  CHECK(parse_count(r.out, "electrons: ") == 3);
}

TEST_CASE("hamiltonian export writes the documented schema") {
  const fs::path dir = fresh_dir("ham");
  const auto out = dir / "h.json";
  const auto r = run_cli("build-ham --nb 1 --basis ao --ordering chain --out " + out.string());
  CHECK(r.exit_code == 0);
  const std::string body = read_file(out);
  CHECK(body.find("coeff_re") != std::string::npos);
  CHECK(body.find("string") != std::string::npos);
}

TEST_CASE("sweep, rerun determinism and report aggregation") {
  const fs::path dir1 = fresh_dir("sweep1");
  const fs::path dir2 = fresh_dir("sweep2");
  const fs::path cfg1 = dir1 / "cfg.json";
  const fs::path cfg2 = dir2 / "cfg.json";
  write_sweep_config(cfg1, dir1 / "out");
  write_sweep_config(cfg2, dir2 / "out");

  const auto r1 = run_cli("sweep --config " + cfg1.string());
  CHECK(r1.exit_code == 0);
  const auto r2 = run_cli("sweep --config " + cfg2.string());
  CHECK(r2.exit_code == 0);

  const std::string csv1 = read_file(dir1 / "out" / "runs.csv");
  const std::string csv2 = read_file(dir2 / "out" / "runs.csv");
  CHECK(csv1 == csv2);  // byte-identical reruns in exact mode

  // 2 initializers x 3 seeds + header
  long lines = 0;
  for (char ch : csv1) lines += ch == '\n';
  CHECK(lines == 7);

  const auto rep = run_cli("report --dir " + (dir1 / "out").string());
  CHECK(rep.exit_code == 0);
  for (const char* name : {"fig2_fidelities.csv", "fig3_seeds.csv", "fig5_onion_vs_random.csv",
                           "fig6_energy_error.csv", "fig7_fidelity_noisy.csv"})
    CHECK(fs::exists(dir1 / "out" / name));

  // per-run rows survive into the seed figure
  const std::string fig3 = read_file(dir1 / "out" / "fig3_seeds.csv");
  long fig3_lines = 0;
  for (char ch : fig3) fig3_lines += ch == '\n';
  CHECK(fig3_lines == 7);

  const auto missing = run_cli("vqe --config /no/such/config.json");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("single-run command emits a record") {
  const fs::path dir = fresh_dir("single");
  const fs::path cfg = dir / "cfg.json";
  std::ofstream c(cfg);
  c << R"({"n_b":1,"layers":2,"init":"onion","max_evals":3000,"seeds":[7],"output_dir":")"
    << (dir / "out").string() << R"("})";
  c.close();
  const auto r = run_cli("vqe --config " + cfg.string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(dir / "out" / "run_onion_L2_seed7.json"));
  const std::string body = read_file(dir / "out" / "run_onion_L2_seed7.json");
  CHECK(body.find("\"fidelity\"") != std::string::npos);
}

}  // TEST_SUITE
