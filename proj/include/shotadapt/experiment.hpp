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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "shotadapt/adapt.hpp"

namespace shotadapt {

/// Invalid experiment configuration; messages carry "file:line:" when the source is known.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string hamiltonian;
  PoolKind pool = PoolKind::kQubitExcitation;
  EngineMode mode = EngineMode::kShots;
  AllocationMethod allocation = AllocationMethod::kUniform;
  VpsrEta vpsr_eta = VpsrEta::kCorrected;
  std::int64_t shots_per_clique = 1024;
  std::int64_t n0 = 32;
  double epsilon = 1e-3;
  std::size_t max_iterations = 30;
  double noise_p = 0.0;
  /// Subset of {gate, phase, reset, measurement} that noise_p applies to.
  std::vector<std::string> noise_channels{"gate", "phase", "reset", "measurement"};
  std::size_t repetitions = 200;
  std::uint64_t seed_base = 1;
  std::string output_dir = "out";
  GroupingStrategy grouping = GroupingStrategy::kGreedyMagnitude;
  bool reuse = true;
  bool dvg = true;
  /// Worker threads for repetitions (0 = hardware concurrency).
  std::size_t threads = 0;
};

/// Reads a YAML mapping whose keys are ExperimentConfig field names. Unknown keys and bad
/// values raise ConfigError with the offending line.
ExperimentConfig load_experiment_config(const std::string &path);
ExperimentConfig parse_experiment_config(const std::string &yaml_text,
                                         const std::string &source = "<config>");
/// Sets one field from its textual value (used for command-line overrides).
void set_config_value(ExperimentConfig &config, const std::string &key, const std::string &value);
/// Checks ranges and that the Hamiltonian file exists.
void validate_config(const ExperimentConfig &config);

NoiseModel make_noise_model(double p, const std::vector<std::string> &channels);
AdaptConfig make_adapt_config(const ExperimentConfig &config, std::uint64_t seed);

/// Runs config.repetitions independent ADAPT runs with seeds seed_base + r. Results are in
/// repetition order whatever the thread count.
std::vector<AdaptResult> run_repetitions(const ExperimentConfig &config,
                                         const Hamiltonian &hamiltonian, const OperatorPool &pool);

/// Per-iteration statistics over repetitions. Traces that stopped early are extended with
/// their last energy and no further shots, so every row has one sample per repetition.
struct AggregateRow {
  std::size_t iteration = 0;
  std::size_t samples = 0;
  double mean_energy = 0.0;
  /// mean_r(E_r) - E_fci.
  double mean_error = 0.0;
  /// Sample standard deviation of E_r - E_fci (0 for one sample).
  double std_error = 0.0;
  /// std_error / sqrt(samples).
  double sem_error = 0.0;
  double mean_abs_error = 0.0;
  double mean_exact_error = 0.0;
  double mean_cumulative_shots = 0.0;
  double std_cumulative_shots = 0.0;
  /// Means of the per-repetition running sums up to this iteration.
  double mean_vqe_shots = 0.0;
  double mean_grad_shots = 0.0;
  double mean_saved_shots = 0.0;
};

std::vector<AggregateRow> aggregate(const std::vector<AdaptResult> &results, double fci_energy);

struct ShotsToAccuracy {
  bool reached = false;
  std::size_t iteration = 0;
  double cumulative_shots = 0.0;
  double vqe_shots = 0.0;
  double grad_shots = 0.0;
  double saved_shots = 0.0;
};

/// First aggregate row with |mean_error| <= threshold.
ShotsToAccuracy shots_to_accuracy(const std::vector<AggregateRow> &rows,
                                  double threshold = kChemicalAccuracy);

void write_trace_csv(std::ostream &os, const std::vector<AdaptResult> &results,
                     double fci_energy, std::uint64_t seed_base);
void write_aggregate_csv(std::ostream &os, const std::vector<AggregateRow> &rows);

struct RunOutput {
  std::vector<AdaptResult> results;
  std::vector<AggregateRow> rows;
  ShotsToAccuracy accuracy;
  std::string summary_json;
};

/// Runs the experiment and, when `write_files` is set, writes trace.csv, aggregate.csv and
/// summary.json into config.output_dir.
RunOutput cmd_run(const ExperimentConfig &config, bool write_files = true);

struct CountRow {
  std::string molecule;
  std::size_t n_qubits = 0;
  std::string pool;
  CountReport report;
};

/// Counts for every Hamiltonian file in `paths` (directories expand to their *.json files,
/// sorted) and every pool kind in `pools`.
std::vector<CountRow> cmd_count(const std::vector<std::string> &paths,
                                const std::vector<PoolKind> &pools,
                                GroupingStrategy grouping = GroupingStrategy::kGreedyMagnitude);
void write_count_csv(std::ostream &os, const std::vector<CountRow> &rows);

/// Human-readable allocation plan.
std::string format_allocation(AllocationMethod method, std::int64_t budget, std::int64_t n0,
                              const std::vector<double> &sigma, VpsrEta eta_form);

struct NoiseSweepRow {
  double p = 0.0;
  AllocationMethod allocation = AllocationMethod::kUniform;
  ShotsToAccuracy accuracy;
  AggregateRow final_row;
};

/// cmd_run per (p, allocation) into output_dir/p<p>_<allocation>/, plus noise_sweep.csv.
std::vector<NoiseSweepRow> cmd_noise_sweep(const ExperimentConfig &config,
                                           const std::vector<double> &ps,
                                           const std::vector<AllocationMethod> &allocations,
                                           bool write_files = true);
void write_noise_sweep_csv(std::ostream &os, const std::vector<NoiseSweepRow> &rows);

/// JSON description of every operator: id, label, role, and each generator's Pauli terms.
std::string dump_pool_json(const OperatorPool &pool);

}  // namespace shotadapt
