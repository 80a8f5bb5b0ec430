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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "shotadapt/experiment.hpp"

using namespace shotadapt;

namespace {

const std::vector<std::pair<std::string, std::string>> kConfigKeys = {
    {"hamiltonian", "Hamiltonian JSON file"},
    {"pool", "fermionic | qubit | qe | ceo"},
    {"mode", "exact | shots"},
    {"allocation", "uniform | vmsa | vpsr"},
    {"vpsr_eta", "corrected | printed"},
    {"shots_per_clique", "shots per clique; budget = value x cliques"},
    {"n0", "probe shots per clique"},
    {"epsilon", "gradient-norm threshold"},
    {"max_iterations", "maximum ADAPT iterations (L)"},
    {"noise_p", "error probability per channel"},
    {"noise_channels", "comma list of gate,phase,reset,measurement"},
    {"repetitions", "independent repetitions (R)"},
    {"seed_base", "seed of repetition 0"},
    {"output_dir", "output directory"},
    {"grouping", "greedy | largest_first"},
    {"reuse", "reuse energy measurements for gradients"},
    {"dvg", "CEO pools: promote to MVP by gradient"},
    {"threads", "worker threads (0 = all cores)"},
};

struct ConfigArgs {
  std::string file;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option *> options;
};

void add_config_options(CLI::App *app, ConfigArgs &args) {
  app->add_option("-c,--config", args.file, "YAML configuration file")->check(CLI::ExistingFile);
  for (const auto &[key, help] : kConfigKeys) {
    std::string flag = "--" + key;
    for (char &ch : flag) {
      if (ch == '_') ch = '-';
    }
    if (key == "repetitions") flag = "-R," + flag;
    if (key == "max_iterations") flag = "-L," + flag;
    if (key == "output_dir") flag = "-o," + flag;
    args.options[key] = app->add_option(flag, args.values[key], help);
  }
}

ExperimentConfig resolve_config(const ConfigArgs &args) {
  ExperimentConfig c = args.file.empty() ? ExperimentConfig{} : load_experiment_config(args.file);
  for (const auto &[key, opt] : args.options) {
    if (opt->count() > 0) {
      try {
        set_config_value(c, key, args.values.at(key));
      } catch (const ConfigError &e) {
        throw ConfigError(std::string("--") + e.what());
      }
    }
  }
  return c;
}

std::vector<std::string> split(const std::string &s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void print_run(const RunOutput &out, const ExperimentConfig &c) {
  const AggregateRow &last = out.rows.back();
  std::printf("repetitions %zu, final iteration %zu: mean error %.3e Ha (sem %.1e)\n",
              c.repetitions, last.iteration, last.mean_error, last.sem_error);
  if (out.accuracy.reached) {
    std::printf("chemical accuracy at iteration %zu after %.0f shots (vqe %.0f, gradient %.0f, "
                "saved %.0f)\n",
                out.accuracy.iteration, out.accuracy.cumulative_shots, out.accuracy.vqe_shots,
                out.accuracy.grad_shots, out.accuracy.saved_shots);
  } else {
    std::printf("chemical accuracy not reached\n");
  }
  std::printf("wrote %s/{trace.csv,aggregate.csv,summary.json}\n", c.output_dir.c_str());
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Shot-efficient ADAPT-VQE simulator"};
  app.require_subcommand(1);

  ConfigArgs run_args;
  CLI::App *run = app.add_subcommand("run", "repeated ADAPT-VQE runs with aggregation");
  add_config_options(run, run_args);

  std::vector<std::string> count_paths;
  std::string count_pools = "fermionic,qubit,qe,ceo";
  std::string count_grouping = "greedy";
  std::string count_output;
  CLI::App *count = app.add_subcommand("count", "gradient measurement counts per pool");
  count->add_option("paths", count_paths, "Hamiltonian files or directories")
      ->default_val(std::vector<std::string>{SHOTADAPT_DATA_DIR});
  count->add_option("--pools", count_pools, "comma list of pools (empty for none)");
  count->add_option("--grouping", count_grouping, "greedy | largest_first");
  count->add_option("-o,--output", count_output, "CSV file (default stdout)");

  std::int64_t demo_budget = 0;
  std::int64_t demo_n0 = 32;
  std::vector<double> demo_sigma;
  std::string demo_method = "vpsr";
  std::string demo_eta = "corrected";
  CLI::App *demo = app.add_subcommand("allocate-demo", "print one shot allocation plan");
  demo->add_option("-N,--budget", demo_budget, "total budget")->required();
  demo->add_option("--n0", demo_n0, "probe shots per clique");
  demo->add_option("--sigma", demo_sigma, "per-clique standard deviations")
      ->required()
      ->delimiter(',');
  demo->add_option("--method", demo_method, "uniform | vmsa | vpsr");
  demo->add_option("--vpsr-eta", demo_eta, "corrected | printed");

  ConfigArgs sweep_args;
  std::vector<double> sweep_ps{0.0, 1e-5, 1e-4, 1e-3};
  std::string sweep_allocations;
  CLI::App *sweep = app.add_subcommand("noise-sweep", "run per noise level");
  add_config_options(sweep, sweep_args);
  sweep->add_option("--p", sweep_ps, "noise levels")->delimiter(',');
  sweep->add_option("--allocations", sweep_allocations,
                    "comma list of allocators (default: the configured one)");

  std::string dump_kind = "qe";
  std::size_t dump_qubits = 0;
  std::string dump_hamiltonian;
  CLI::App *dump = app.add_subcommand("dump-pool", "print a pool as JSON");
  dump->add_option("--pool", dump_kind, "fermionic | qubit | qe | ceo");
  dump->add_option("-n,--qubits", dump_qubits, "number of qubits");
  dump->add_option("--hamiltonian", dump_hamiltonian, "take the qubit count from this file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const ExperimentConfig c = resolve_config(run_args);
      print_run(cmd_run(c), c);
    } else if (count->parsed()) {
      std::vector<PoolKind> pools;
      for (const std::string &p : split(count_pools)) pools.push_back(parse_pool_kind(p));
      const auto rows = cmd_count(count_paths, pools, parse_grouping(count_grouping));
      std::ofstream file;
      if (!count_output.empty()) {
        file.open(count_output);
        if (!file) throw std::runtime_error("cannot write " + count_output);
      }
      write_count_csv(count_output.empty() ? std::cout : file, rows);
      double reuse_sum = 0.0, group_sum = 0.0;
      for (const CountRow &r : rows) {
        reuse_sum += r.report.ratio();
        group_sum += r.report.grouped_ratio();
      }
      if (!rows.empty()) {
        std::fprintf(stderr, "average grouped/full %.2f%%, reused/full %.2f%% over %zu rows\n",
                     100.0 * group_sum / rows.size(), 100.0 * reuse_sum / rows.size(),
                     rows.size());
      }
    } else if (demo->parsed()) {
      std::cout << format_allocation(parse_allocation(demo_method), demo_budget, demo_n0,
                                     demo_sigma, parse_vpsr_eta(demo_eta));
    } else if (sweep->parsed()) {
      const ExperimentConfig c = resolve_config(sweep_args);
      std::vector<AllocationMethod> allocations;
      for (const std::string &a : split(sweep_allocations)) {
        allocations.push_back(parse_allocation(a));
      }
      if (allocations.empty()) allocations.push_back(c.allocation);
      const auto rows = cmd_noise_sweep(c, sweep_ps, allocations);
      write_noise_sweep_csv(std::cout, rows);
    } else if (dump->parsed()) {
      std::size_t n = dump_qubits;
      if (!dump_hamiltonian.empty()) n = load_hamiltonian(dump_hamiltonian).n_qubits;
      if (n == 0) throw std::invalid_argument("give --qubits or --hamiltonian");
      std::cout << dump_pool_json(build_pool(parse_pool_kind(dump_kind), n));
    }
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
