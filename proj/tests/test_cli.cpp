#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qrefrig/cli.hpp"
#include "qrefrig/errors.hpp"

using namespace qrefrig;
using namespace qrefrig::cli;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir() {
  auto dir = fs::temp_directory_path() / "qrefrig_cli_test";
  fs::create_directories(dir);
  return dir;
}

// Runs the CLI binary; returns its exit status.
int run(const std::string& args, const fs::path& out = {}) {
  std::string cmd = std::string(QREFRIG_BINARY) + " " + args;
  cmd += out.empty() ? " > /dev/null" : " > " + out.string();
  cmd += " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text, std::string* header) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  bool seen_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      *header = line;
      seen_header = true;
      continue;
    }
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    rows.push_back(fields);
  }
  return rows;
}

}  // namespace

TEST_CASE("config text and flags share one key space") {
  RunConfig cfg;
  apply_config_text(cfg, "# reference point\nomega = 6\nomega-prime=3 # inline\n\nmedium = spin-anharmonic\ncost_case = ii\n");
  CHECK(cfg.omega == 6.0);
  CHECK(cfg.omega_prime == 3.0);
  CHECK(cfg.medium == MediumKind::SpinAnharmonic);
  CHECK(cfg.cost_case == CostCase::ColdBath);
  set(cfg, "omega", "7");  // later settings win
  CHECK(cfg.omega == 7.0);
  CHECK_THROWS_AS(set(cfg, "omegaa", "1"), ValidationError);
  CHECK_THROWS_AS(set(cfg, "omega", "fast"), ValidationError);
  CHECK_THROWS_AS(apply_config_text(cfg, "omega 5\n"), ValidationError);
  CHECK_THROWS_AS(set(cfg, "cost_case", "iii"), ValidationError);
}

TEST_CASE("defaults are the figure operating point") {
  const RunConfig cfg;
  CHECK(cfg.omega == 5.0);
  CHECK(cfg.omega_prime == 4.0);
  CHECK(cfg.beta_h == 0.5);
  CHECK(cfg.beta_c == 1.0);
  CHECK(cfg.omega0 * cfg.omega0 * cfg.omega0 == Approx(0.6).epsilon(1e-14));
  CHECK(cfg.beta2 == 0.6);
  CHECK(cfg.beta4 == 0.8);
}

TEST_CASE("grid and validation") {
  RunConfig cfg;
  cfg.g_count = 5;
  const auto g = cfg.g_grid();
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.0);
  CHECK(g[2] == Approx(0.5));
  cfg.g_count = 0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg.g_count = 3;
  cfg.g_start = 0.8;
  cfg.g_stop = 0.2;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  RunConfig both;
  both.lambda = 0.1;
  both.g = 0.1;
  CHECK_THROWS_AS(both.validate(), ValidationError);
}

TEST_CASE("number formatting uses 12 significant digits") {
  CHECK(format_number(4.0) == "4");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(0.025014413380677) == "0.0250144133807");
}

TEST_CASE("run_cycle serializes the ledger") {
  RunConfig cfg;
  cfg.medium = MediumKind::QuantumHarmonic;
  const auto j = nlohmann::json::parse(run_cycle(cfg));
  CHECK(j["cop"].get<double>() == Approx(4.0).epsilon(1e-12));
  CHECK(j["heats"]["q_c"].get<double>() == Approx(0.28307252).epsilon(1e-7));
  CHECK(j["flags"]["negative_work_condition"].get<bool>());
  CHECK(j["config"]["omega"].get<double>() == 5.0);
  CHECK(j["config"]["basis_size"].is_number_integer());

  cfg.omega_prime = 5.0;
  try {
    run_cycle(cfg);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("omega > omega_prime") != std::string::npos);
  }

  RunConfig classical;
  classical.cycle = CycleType::ClassicalOtto;
  const auto c = nlohmann::json::parse(run_cycle(classical));
  CHECK(c["cop"].get<double>() == Approx(3.0).epsilon(1e-12));
  CHECK(c["cop_closed_form"].get<double>() == Approx(4.0));
  CHECK(c["works"].contains("w_comp"));
}

TEST_CASE("run_sweep reaches the target energy-cost endpoints") {
  RunConfig cfg;
  cfg.g_count = 50;
  std::string header;
  auto rows = csv_rows(run_sweep(cfg), &header);
  CHECK(header == "g,lambda,deltaH_ao,cop_ao,deltaH_spin,cop_spin,cop_harmonic,flags");
  REQUIRE(rows.size() == 50);
  CHECK(std::stod(rows.back()[2]) == Approx(0.025).epsilon(0.04));
  CHECK(std::stod(rows.back()[4]) == Approx(0.023).epsilon(0.04));
  CHECK(rows.front()[7] == "ok");
  CHECK(rows.back()[7] == "g_boundary");

  cfg.cost_case = CostCase::ColdBath;
  rows = csv_rows(run_sweep(cfg), &header);
  CHECK(std::stod(rows.back()[2]) == Approx(0.030).epsilon(0.033));
  CHECK(std::stod(rows.back()[4]) == Approx(0.030).epsilon(0.033));

  RunConfig single;
  single.g_count = 1;
  rows = csv_rows(run_sweep(single), &header);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0][3] == rows[0][5]);
  CHECK(rows[0][3] == rows[0][6]);
}

TEST_CASE("run_sweep records per-row numeric failures and continues") {
  RunConfig cfg;
  cfg.omega = 1.0;
  cfg.omega_prime = 0.5;
  cfg.beta_h = 1.0;
  cfg.beta_c = 3.0;
  cfg.omega0 = 10.0;
  cfg.g_count = 3;
  std::string header;
  const auto rows = csv_rows(run_sweep(cfg), &header);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0][7] == "ok");
  CHECK(rows[2][3] == "nan");
  CHECK(rows[2][7].find("ao:validity_domain_error") != std::string::npos);
  CHECK(rows[2][5] != "nan");  // the spin medium has no validity guard
}

TEST_CASE("figures") {
  RunConfig cfg;
  std::string header;
  auto rows = csv_rows(run_figure("fig2a", cfg), &header);
  CHECK(header == "g,lambda,deltaH_ao,cop_ao,deltaH_spin,cop_spin,cop_harmonic");
  REQUIRE(rows.size() == 101);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][3]) > std::stod(rows[i - 1][3]));
  for (const auto& r : rows) CHECK(r[6] == "4");

  rows = csv_rows(run_figure("fig3a", cfg), &header);
  CHECK(header == "g,lambda,deltaH_ao,cop_ao,deltaH_spin,cop_spin,cop_harmonic,cop_spin_harmonic");
  CHECK(rows[0][3] == rows[0][6]);
  CHECK(rows[0][5] == rows[0][7]);

  rows = csv_rows(run_figure("figS2", cfg), &header);
  CHECK(header == "g,cop_quantum_ao,cop_harmonic,cop_classical_ao");
  CHECK(std::stod(rows.back()[3]) == Approx(2.904).epsilon(0.002 / 2.904));
  CHECK_THROWS_AS(run_figure("fig9", cfg), ValidationError);

  // Figure parameters are baked in; user physics settings do not leak in.
  RunConfig odd;
  odd.omega = 9.0;
  CHECK(run_figure("fig2b", odd) == run_figure("fig2b", cfg));
}

TEST_CASE("oracle compare report") {
  RunConfig cfg;
  cfg.quantity = "ao-levels";
  auto j = nlohmann::json::parse(run_oracle_compare(cfg));
  REQUIRE(j["reports"].size() == 4);
  for (const auto& r : j["reports"]) {
    CHECK(r["pass"].get<bool>());
    CHECK(r["ratio"].get<double>() == Approx(4.0).epsilon(0.15));
  }
  cfg.lambda = 0.0;
  j = nlohmann::json::parse(run_oracle_compare(cfg));
  for (const auto& r : j["reports"]) {
    CHECK(r["err"].get<double>() == 0.0);
    CHECK(r["pass"].get<bool>());
    CHECK(r["ratio"].is_null());
  }
  RunConfig otto;
  otto.quantity = "otto";
  j = nlohmann::json::parse(run_oracle_compare(otto));
  REQUIRE(j["reports"].size() == 6);
  CHECK(j["reports"][0]["quantity"] == "otto.q_c.oscillator");
  CHECK(j["reports"][0]["pass"].get<bool>());
}

TEST_CASE("spectrum command") {
  RunConfig cfg;
  cfg.omega = 1.0;
  cfg.lambda = 0.1;
  cfg.levels = 3;
  auto j = nlohmann::json::parse(run_spectrum(cfg));
  CHECK(j["levels"][2].get<double>() == Approx(3.475));
  cfg.spectrum = SpectrumSource::Exact;
  j = nlohmann::json::parse(run_spectrum(cfg));
  CHECK(j["levels"][0].get<double>() == Approx(0.55914633).epsilon(1e-8));
  cfg.medium = MediumKind::ClassicalAnharmonic;
  CHECK_THROWS_AS(run_spectrum(cfg), ValidationError);
}

TEST_CASE("binary: exit codes") {
  CHECK(run("cycle otto --medium quantum-harmonic --lambda 0") == 0);
  CHECK(run("cycle otto --omega-prime 5") == 2);
  CHECK(run("cycle otto --omega 1 --omega-prime 0.5 --beta-c 2 --beta-h 1 --omega0 10 --lambda 500") == 3);
  CHECK(run("cycle carnot") == 2);
  CHECK(run("--no-such-flag 1 sweep") == 2);
  CHECK(run("figure fig9") == 2);
  CHECK(run("oracle compare --quantity ao-levels --basis-size 8 --levels 1") == 0);
}

TEST_CASE("binary: ledger output matches the library") {
  const auto out = scratch_dir() / "ledger.json";
  REQUIRE(run("cycle stirling --medium spin-anharmonic --g 0.5", out) == 0);
  RunConfig cfg;
  cfg.cycle = CycleType::Stirling;
  cfg.medium = MediumKind::SpinAnharmonic;
  cfg.g = 0.5;
  CHECK(slurp(out) == run_cycle(cfg));
}

TEST_CASE("binary: config file, flag precedence and atomic output") {
  const auto dir = scratch_dir();
  const auto conf = dir / "run.conf";
  {
    std::ofstream c(conf);
    c << "cycle = otto\nmedium = quantum-harmonic\nomega = 6\nbeta_c = 2\n";
  }
  const auto out = dir / "flags.json";
  fs::remove(out);
  REQUIRE(run("cycle otto --config " + conf.string() + " --omega 7 --output " + out.string()) == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["config"]["omega"].get<double>() == 7.0);
  CHECK(j["config"]["beta_c"].get<double>() == 2.0);
  CHECK_FALSE(fs::exists(out.string() + ".tmp"));

  const auto failed = dir / "failed.json";
  fs::remove(failed);
  CHECK(run("cycle otto --omega-prime 5 --output " + failed.string()) == 2);
  CHECK_FALSE(fs::exists(failed));
  CHECK_FALSE(fs::exists(failed.string() + ".tmp"));
}

TEST_CASE("binary: figure output is byte-identical across runs") {
  const auto dir = scratch_dir();
  for (const auto* name : {"fig2a", "fig3b", "figS2"}) {
    const auto a = dir / (std::string(name) + "_a.csv");
    const auto b = dir / (std::string(name) + "_b.csv");
    REQUIRE(run(std::string("figure ") + name + " --output " + a.string()) == 0);
    REQUIRE(run(std::string("figure ") + name + " --output " + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a) == run_figure(name, RunConfig{}));
  }
}
