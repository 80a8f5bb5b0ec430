// Copyright 2026 The shotadapt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "shotadapt/experiment.hpp"

using namespace shotadapt;
namespace fs = std::filesystem;

namespace {

std::string data(const std::string &name) { return std::string(SHOTADAPT_DATA_DIR) + "/" + name; }

fs::path scratch(const std::string &name) {
  const fs::path p = fs::temp_directory_path() / ("shotadapt_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_csv_line(const std::string &line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

std::vector<std::map<std::string, std::string>> read_csv(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  const auto header = split_csv_line(line);
  std::vector<std::map<std::string, std::string>> rows;
  while (std::getline(in, line)) {
    const auto cells = split_csv_line(line);
    EXPECT_EQ(cells.size(), header.size()) << line;
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < header.size() && i < cells.size(); ++i) row[header[i]] = cells[i];
    rows.push_back(row);
  }
  return rows;
}

ExperimentConfig small_shots_config(const fs::path &out) {
  ExperimentConfig c;
  c.hamiltonian = data("h2.json");
  c.allocation = AllocationMethod::kVpsr;
  c.max_iterations = 2;
  c.repetitions = 12;
  c.seed_base = 100;
  c.output_dir = out.string();
  return c;
}

}  // namespace

TEST(Config, ParsesEveryKey) {
  const ExperimentConfig c = parse_experiment_config(
      "hamiltonian: h.json\n"
      "pool: ceo\n"
      "mode: exact\n"
      "allocation: vmsa\n"
      "vpsr_eta: printed\n"
      "shots_per_clique: 512\n"
      "n0: 16\n"
      "epsilon: 1e-4\n"
      "max_iterations: 7\n"
      "noise_p: 0.001\n"
      "noise_channels: [gate, measurement]\n"
      "repetitions: 5\n"
      "seed_base: 9\n"
      "output_dir: results\n"
      "grouping: largest_first\n"
      "reuse: false\n"
      "dvg: no\n"
      "threads: 3\n");
  EXPECT_EQ(c.hamiltonian, "h.json");
  EXPECT_EQ(c.pool, PoolKind::kCeo);
  EXPECT_EQ(c.mode, EngineMode::kExact);
  EXPECT_EQ(c.allocation, AllocationMethod::kVmsa);
  EXPECT_EQ(c.vpsr_eta, VpsrEta::kPrinted);
  EXPECT_EQ(c.shots_per_clique, 512);
  EXPECT_EQ(c.n0, 16);
  EXPECT_EQ(c.epsilon, 1e-4);
  EXPECT_EQ(c.max_iterations, 7u);
  EXPECT_EQ(c.noise_p, 0.001);
  EXPECT_EQ(c.noise_channels, (std::vector<std::string>{"gate", "measurement"}));
  EXPECT_EQ(c.repetitions, 5u);
  EXPECT_EQ(c.seed_base, 9u);
  EXPECT_EQ(c.output_dir, "results");
  EXPECT_EQ(c.grouping, GroupingStrategy::kLargestFirst);
  EXPECT_FALSE(c.reuse);
  EXPECT_FALSE(c.dvg);
  EXPECT_EQ(c.threads, 3u);
}

TEST(Config, ErrorsCarryTheLine) {
  try {
    parse_experiment_config("pool: qe\nrepetitions: many\n", "cfg.yaml");
    ADD_FAILURE();
  } catch (const ConfigError &e) {
    EXPECT_NE(std::string(e.what()).find("cfg.yaml:2:"), std::string::npos) << e.what();
  }
  try {
    parse_experiment_config("pool: qe\n\nbogus: 1\n", "cfg.yaml");
    ADD_FAILURE();
  } catch (const ConfigError &e) {
    EXPECT_NE(std::string(e.what()).find("cfg.yaml:3:"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("bogus"), std::string::npos);
  }
  EXPECT_THROW(parse_experiment_config("pool: [qe\n"), ConfigError);
  EXPECT_THROW(parse_experiment_config("- a\n- b\n"), ConfigError);
  EXPECT_THROW(parse_experiment_config("pool: uccsd\n"), ConfigError);
  EXPECT_THROW(parse_experiment_config("epsilon: 1e-3x\n"), ConfigError);
}

TEST(Config, OverridesReplaceFileValues) {
  ExperimentConfig c = parse_experiment_config("repetitions: 5\nallocation: vmsa\n");
  set_config_value(c, "repetitions", "9");
  set_config_value(c, "allocation", "vpsr");
  set_config_value(c, "noise_channels", "phase, reset");
  EXPECT_EQ(c.repetitions, 9u);
  EXPECT_EQ(c.allocation, AllocationMethod::kVpsr);
  EXPECT_EQ(c.noise_channels, (std::vector<std::string>{"phase", "reset"}));
  EXPECT_THROW(set_config_value(c, "reuse", "maybe"), ConfigError);
}

TEST(Config, RelativeHamiltonianResolvesAgainstTheConfigFile) {
  const fs::path dir = scratch("config_dir");
  fs::create_directories(dir);
  fs::copy_file(data("h2.json"), dir / "h2.json");
  std::ofstream(dir / "run.yaml") << "hamiltonian: h2.json\n";
  const ExperimentConfig c = load_experiment_config((dir / "run.yaml").string());
  EXPECT_EQ(fs::path(c.hamiltonian), dir / "h2.json");
  EXPECT_NO_THROW(validate_config(c));
  fs::remove_all(dir);
}

TEST(Config, Validation) {
  ExperimentConfig c;
  EXPECT_THROW(validate_config(c), ConfigError);
  c.hamiltonian = data("h2.json");
  EXPECT_NO_THROW(validate_config(c));
  ExperimentConfig bad = c;
  bad.repetitions = 0;
  EXPECT_THROW(validate_config(bad), ConfigError);
  bad = c;
  bad.noise_p = 1.5;
  EXPECT_THROW(validate_config(bad), ConfigError);
  bad = c;
  bad.noise_channels = {"cosmic"};
  EXPECT_THROW(validate_config(bad), ConfigError);
  bad = c;
  bad.mode = EngineMode::kExact;
  bad.noise_p = 1e-3;
  EXPECT_THROW(validate_config(bad), ConfigError);
  bad = c;
  bad.allocation = AllocationMethod::kVmsa;
  bad.n0 = 4096;
  EXPECT_THROW(validate_config(bad), ConfigError);
  bad = c;
  bad.hamiltonian = "/nonexistent.json";
  EXPECT_THROW(validate_config(bad), ConfigError);
}

TEST(Config, NoiseChannels) {
  const NoiseModel n = make_noise_model(0.01, {"gate", "measurement"});
  EXPECT_EQ(n.gate, 0.01);
  EXPECT_EQ(n.phase, 0.0);
  EXPECT_EQ(n.reset, 0.0);
  EXPECT_EQ(n.measurement, 0.01);
}

TEST(Run, OutputsAreIndependentOfThreadCount) {
  const fs::path a = scratch("threads1"), b = scratch("threads4");
  ExperimentConfig c = small_shots_config(a);
  c.threads = 1;
  cmd_run(c);
  c.threads = 4;
  c.output_dir = b.string();
  cmd_run(c);
  for (const char *f : {"trace.csv", "aggregate.csv"}) EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  // The summary echoes the output directory only through the config; the rest must match.
  auto ja = nlohmann::json::parse(slurp(a / "summary.json"));
  auto jb = nlohmann::json::parse(slurp(b / "summary.json"));
  EXPECT_EQ(ja, jb);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Run, RerunsAreByteIdentical) {
  const fs::path a = scratch("rerun");
  ExperimentConfig c = small_shots_config(a);
  cmd_run(c);
  const std::string first = slurp(a / "trace.csv") + slurp(a / "aggregate.csv") + slurp(a / "summary.json");
  cmd_run(c);
  EXPECT_EQ(first, slurp(a / "trace.csv") + slurp(a / "aggregate.csv") + slurp(a / "summary.json"));
  fs::remove_all(a);
}

TEST(Run, AggregateIsRecomputableFromTheTrace) {
  const fs::path dir = scratch("recompute");
  ExperimentConfig c = small_shots_config(dir);
  c.hamiltonian = data("lih_reduced.json");
  c.max_iterations = 3;
  cmd_run(c);
  const auto trace = read_csv(slurp(dir / "trace.csv"));
  const auto agg = read_csv(slurp(dir / "aggregate.csv"));
  ASSERT_FALSE(agg.empty());

  // Per repetition rows, extended with the last row when a run stopped early.
  std::map<int, std::vector<std::map<std::string, std::string>>> by_rep;
  for (const auto &row : trace) by_rep[std::stoi(row.at("repetition"))].push_back(row);
  ASSERT_EQ(by_rep.size(), c.repetitions);
  for (std::size_t n = 0; n < agg.size(); ++n) {
    std::vector<double> err, cum;
    for (auto &[r, rows] : by_rep) {
      const bool real = n < rows.size();
      const auto &row = real ? rows[n] : rows.back();
      err.push_back(std::stod(row.at("error")));
      cum.push_back(std::stod(row.at("cumulative_shots")));
    }
    double mean = 0.0;
    for (double e : err) mean += e;
    mean /= static_cast<double>(err.size());
    double ss = 0.0;
    for (double e : err) ss += (e - mean) * (e - mean);
    const double sd = std::sqrt(ss / static_cast<double>(err.size() - 1));
    double mean_cum = 0.0;
    for (double x : cum) mean_cum += x;
    mean_cum /= static_cast<double>(cum.size());
    EXPECT_NEAR(std::stod(agg[n].at("mean_error")), mean, 1e-12);
    EXPECT_NEAR(std::stod(agg[n].at("std_error")), sd, 1e-12);
    EXPECT_NEAR(std::stod(agg[n].at("sem_error")), sd / std::sqrt(double(err.size())), 1e-12);
    EXPECT_NEAR(std::stod(agg[n].at("mean_cumulative_shots")), mean_cum, 1e-9);
  }
  fs::remove_all(dir);
}

TEST(Run, SummaryAccountingIdentity) {
  const fs::path dir = scratch("summary");
  ExperimentConfig c = small_shots_config(dir);
  const RunOutput out = cmd_run(c);
  const auto j = nlohmann::json::parse(out.summary_json);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["energy_budget"], 5120);
  const auto &f = j["final"];
  EXPECT_NEAR(f["mean_cumulative_shots"].get<double>(),
              f["mean_vqe_shots"].get<double>() + f["mean_grad_shots"].get<double>(), 1e-6);
  const auto &s = j["shots_to_chemical_accuracy"];
  if (s["reached"].get<bool>()) {
    EXPECT_NEAR(s["cumulative_shots"].get<double>(),
                s["vqe_shots"].get<double>() + s["gradient_shots"].get<double>(), 1e-6);
  }
  EXPECT_TRUE(j["flags"].contains("noise_attachment"));
  fs::remove_all(dir);
}

TEST(Run, SingleExactRepetitionHasZeroSpread) {
  const fs::path dir = scratch("exact1");
  ExperimentConfig c;
  c.hamiltonian = data("h2.json");
  c.mode = EngineMode::kExact;
  c.repetitions = 1;
  c.output_dir = dir.string();
  const RunOutput out = cmd_run(c, false);
  EXPECT_FALSE(fs::exists(dir));
  for (const AggregateRow &a : out.rows) {
    EXPECT_EQ(a.std_error, 0.0);
    EXPECT_EQ(a.sem_error, 0.0);
    EXPECT_EQ(a.mean_cumulative_shots, 0.0);
  }
  EXPECT_TRUE(out.accuracy.reached);
  EXPECT_EQ(out.accuracy.iteration, 1u);
}

TEST(Aggregate, PadsEarlyStops) {
  AdaptResult a, b;
  IterationRecord r0;
  r0.energy = -1.0;
  a.trace = {r0};
  b.trace = {r0};
  IterationRecord r1 = r0;
  r1.iteration = 1;
  r1.energy = -2.0;
  r1.vqe_shots = 10;
  r1.cumulative_shots = 10;
  b.trace.push_back(r1);
  const auto rows = aggregate({a, b}, -2.0);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_DOUBLE_EQ(rows[1].mean_energy, -1.5);
  EXPECT_DOUBLE_EQ(rows[1].mean_cumulative_shots, 5.0);
  EXPECT_DOUBLE_EQ(rows[1].mean_vqe_shots, 5.0);
  const ShotsToAccuracy s = shots_to_accuracy(rows, 0.6);
  EXPECT_TRUE(s.reached);
  EXPECT_EQ(s.iteration, 1u);
  EXPECT_FALSE(shots_to_accuracy(rows, 0.1).reached);
}

TEST(Count, EmptyPoolSelectionGivesHeaderOnly) {
  std::ostringstream os;
  write_count_csv(os, cmd_count({data("h2.json")}, {}));
  EXPECT_EQ(os.str(),
            "molecule,n_qubits,h_terms,h_cliques,pool,pool_operators,full,grouped,reused,"
            "grouped_pct,reused_pct\n");
}

TEST(Count, DirectoryExpandsToSortedFiles) {
  const auto rows = cmd_count({SHOTADAPT_DATA_DIR}, {PoolKind::kQubitExcitation});
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].molecule, "H2");
  EXPECT_EQ(rows[0].report.full, 36u);
  EXPECT_EQ(rows[0].report.reused, 8u);
  std::ostringstream os;
  write_count_csv(os, rows);
  EXPECT_NE(os.str().find("H2,4,15,5,qe,4,36,"), std::string::npos) << os.str();
}

TEST(AllocateDemo, PrintsThePlan) {
  const std::string s = format_allocation(AllocationMethod::kVpsr, 100, 10, {3.0, 1.0},
                                          VpsrEta::kCorrected);
  EXPECT_NE(s.find("shots: 58,26\n"), std::string::npos) << s;
  EXPECT_NE(s.find("eta: 0.8\n"), std::string::npos) << s;
  const std::string u =
      format_allocation(AllocationMethod::kVmsa, 5120, 32, std::vector<double>(5, 1.0),
                        VpsrEta::kCorrected);
  EXPECT_NE(u.find("shots: 1024,1024,1024,1024,1024\n"), std::string::npos) << u;
  EXPECT_THROW(format_allocation(AllocationMethod::kVmsa, 10, 32, {1.0}, VpsrEta::kCorrected),
               std::invalid_argument);
}

TEST(NoiseSweep, ZeroNoiseMatchesThePlainRun) {
  const fs::path dir = scratch("sweep");
  ExperimentConfig c = small_shots_config(dir);
  c.repetitions = 6;
  const auto rows = cmd_noise_sweep(c, {0.0}, {AllocationMethod::kVpsr});
  ASSERT_EQ(rows.size(), 1u);
  const fs::path plain = scratch("sweep_plain");
  c.output_dir = plain.string();
  cmd_run(c);
  EXPECT_EQ(slurp(dir / "p0_vpsr" / "trace.csv"), slurp(plain / "trace.csv"));
  EXPECT_EQ(slurp(dir / "p0_vpsr" / "aggregate.csv"), slurp(plain / "aggregate.csv"));
  EXPECT_TRUE(fs::exists(dir / "noise_sweep.csv"));
  fs::remove_all(dir);
  fs::remove_all(plain);
}

TEST(DumpPool, ListsEveryOperator) {
  const OperatorPool pool = build_pool(PoolKind::kCeo, 4);
  const auto j = nlohmann::json::parse(dump_pool_json(pool));
  EXPECT_EQ(j["kind"], "ceo");
  ASSERT_EQ(j["operators"].size(), pool.size());
  for (std::size_t k = 0; k < pool.size(); ++k) {
    const auto &o = j["operators"][k];
    EXPECT_EQ(o["id"], k);
    EXPECT_EQ(o["label"], pool.operators[k].label);
    EXPECT_EQ(o["generators"].size(), pool.operators[k].n_parameters());
    EXPECT_EQ(o["generators"][0].size(), pool.operators[k].generators[0].size());
  }
}
