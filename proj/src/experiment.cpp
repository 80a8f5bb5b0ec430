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

#include "shotadapt/experiment.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace shotadapt {

namespace fs = std::filesystem;

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

double parse_double(const std::string &key, const std::string &value) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(value, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used == 0 || used != value.size() || !std::isfinite(x)) {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
  return x;
}

std::int64_t parse_int(const std::string &key, const std::string &value) {
  std::size_t used = 0;
  long long x = 0;
  try {
    x = std::stoll(value, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used == 0 || used != value.size()) {
    throw ConfigError(key + ": expected an integer, got '" + value + "'");
  }
  return x;
}

std::size_t parse_count(const std::string &key, const std::string &value) {
  const std::int64_t x = parse_int(key, value);
  if (x < 0) throw ConfigError(key + ": must be >= 0, got " + value);
  return static_cast<std::size_t>(x);
}

bool parse_bool(const std::string &key, const std::string &value) {
  if (value == "true" || value == "yes" || value == "on" || value == "1") return true;
  if (value == "false" || value == "no" || value == "off" || value == "0") return false;
  throw ConfigError(key + ": expected true or false, got '" + value + "'");
}

std::vector<std::string> split_list(const std::string &value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename F>
auto wrap_invalid(const std::string &key, F &&f) {
  try {
    return f();
  } catch (const std::invalid_argument &e) {
    throw ConfigError(key + ": " + e.what());
  }
}

const std::vector<std::string> &channel_names() {
  static const std::vector<std::string> names{"gate", "phase", "reset", "measurement"};
  return names;
}

}  // namespace

void set_config_value(ExperimentConfig &c, const std::string &key, const std::string &value) {
  if (key == "hamiltonian") {
    c.hamiltonian = value;
  } else if (key == "pool") {
    c.pool = wrap_invalid(key, [&] { return parse_pool_kind(value); });
  } else if (key == "mode") {
    if (value == "exact") {
      c.mode = EngineMode::kExact;
    } else if (value == "shots") {
      c.mode = EngineMode::kShots;
    } else {
      throw ConfigError(key + ": expected exact or shots, got '" + value + "'");
    }
  } else if (key == "allocation") {
    c.allocation = wrap_invalid(key, [&] { return parse_allocation(value); });
  } else if (key == "vpsr_eta") {
    c.vpsr_eta = wrap_invalid(key, [&] { return parse_vpsr_eta(value); });
  } else if (key == "shots_per_clique") {
    c.shots_per_clique = parse_int(key, value);
  } else if (key == "n0") {
    c.n0 = parse_int(key, value);
  } else if (key == "epsilon") {
    c.epsilon = parse_double(key, value);
  } else if (key == "max_iterations") {
    c.max_iterations = parse_count(key, value);
  } else if (key == "noise_p") {
    c.noise_p = parse_double(key, value);
  } else if (key == "noise_channels") {
    c.noise_channels = split_list(value);
  } else if (key == "repetitions") {
    c.repetitions = parse_count(key, value);
  } else if (key == "seed_base") {
    c.seed_base = static_cast<std::uint64_t>(parse_count(key, value));
  } else if (key == "output_dir") {
    c.output_dir = value;
  } else if (key == "grouping") {
    c.grouping = wrap_invalid(key, [&] { return parse_grouping(value); });
  } else if (key == "reuse") {
    c.reuse = parse_bool(key, value);
  } else if (key == "dvg") {
    c.dvg = parse_bool(key, value);
  } else if (key == "threads") {
    c.threads = parse_count(key, value);
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

ExperimentConfig parse_experiment_config(const std::string &yaml_text, const std::string &source) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::ParserException &e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  ExperimentConfig c;
  if (root.IsNull()) return c;
  if (!root.IsMap()) throw ConfigError(source + ":1: top level must be a mapping");
  for (const auto &kv : root) {
    const std::string where = source + ":" + std::to_string(kv.first.Mark().line + 1) + ": ";
    const std::string key = kv.first.as<std::string>();
    const YAML::Node &v = kv.second;
    try {
      if (v.IsSequence()) {
        if (key != "noise_channels") throw ConfigError(key + ": expected a scalar value");
        std::string joined;
        for (const auto &item : v) joined += item.as<std::string>() + ",";
        set_config_value(c, key, joined);
      } else if (v.IsScalar()) {
        set_config_value(c, key, v.as<std::string>());
      } else {
        throw ConfigError(key + ": expected a scalar value");
      }
    } catch (const ConfigError &e) {
      throw ConfigError(where + e.what());
    }
  }
  return c;
}

ExperimentConfig load_experiment_config(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  ExperimentConfig c = parse_experiment_config(ss.str(), path);
  // Relative Hamiltonian paths are taken relative to the configuration file.
  if (!c.hamiltonian.empty() && fs::path(c.hamiltonian).is_relative()) {
    const fs::path resolved = fs::path(path).parent_path() / c.hamiltonian;
    if (fs::exists(resolved)) c.hamiltonian = resolved.string();
  }
  return c;
}

void validate_config(const ExperimentConfig &c) {
  if (c.hamiltonian.empty()) throw ConfigError("hamiltonian: required");
  if (!fs::exists(c.hamiltonian)) throw ConfigError("hamiltonian: no such file '" + c.hamiltonian + "'");
  if (c.repetitions < 1) throw ConfigError("repetitions: must be >= 1");
  if (c.max_iterations < 1) throw ConfigError("max_iterations: must be >= 1");
  if (!(c.epsilon > 0.0)) throw ConfigError("epsilon: must be > 0");
  if (c.shots_per_clique < 1) throw ConfigError("shots_per_clique: must be >= 1");
  if (c.n0 < 1) throw ConfigError("n0: must be >= 1");
  if (c.allocation != AllocationMethod::kUniform && c.n0 > c.shots_per_clique) {
    throw ConfigError("n0: must not exceed shots_per_clique");
  }
  if (!(c.noise_p >= 0.0 && c.noise_p <= 1.0)) throw ConfigError("noise_p: must lie in [0, 1]");
  for (const std::string &ch : c.noise_channels) {
    if (std::find(channel_names().begin(), channel_names().end(), ch) == channel_names().end()) {
      throw ConfigError("noise_channels: unknown channel '" + ch + "'");
    }
  }
  if (c.mode == EngineMode::kExact && c.noise_p > 0.0) {
    throw ConfigError("noise_p: noise requires mode shots");
  }
}

NoiseModel make_noise_model(double p, const std::vector<std::string> &channels) {
  NoiseModel n;
  for (const std::string &ch : channels) {
    if (ch == "gate") {
      n.gate = p;
    } else if (ch == "phase") {
      n.phase = p;
    } else if (ch == "reset") {
      n.reset = p;
    } else if (ch == "measurement") {
      n.measurement = p;
    } else {
      throw ConfigError("noise_channels: unknown channel '" + ch + "'");
    }
  }
  return n;
}

AdaptConfig make_adapt_config(const ExperimentConfig &c, std::uint64_t seed) {
  AdaptConfig a;
  a.mode = c.mode;
  a.epsilon = c.epsilon;
  a.max_iterations = c.max_iterations;
  a.measurement.method = c.allocation;
  a.measurement.n0 = c.n0;
  a.measurement.eta_form = c.vpsr_eta;
  a.shots_per_clique = c.shots_per_clique;
  a.reuse = c.reuse;
  a.noise = make_noise_model(c.noise_p, c.noise_channels);
  a.grouping = c.grouping;
  a.dvg = c.dvg;
  a.seed = seed;
  return a;
}

std::vector<AdaptResult> run_repetitions(const ExperimentConfig &config,
                                         const Hamiltonian &hamiltonian, const OperatorPool &pool) {
  const std::size_t r_total = config.repetitions;
  std::vector<AdaptResult> out(r_total);
  if (r_total == 0) return out;
  std::size_t n_threads = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
  n_threads = std::clamp<std::size_t>(n_threads, 1, r_total);

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t r = next++; r < r_total; r = next++) {
      try {
        out[r] = run_adapt(hamiltonian, pool, make_adapt_config(config, config.seed_base + r));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto &t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

namespace {

// Trace extended to `length` rows; padding rows repeat the last energy and spend nothing.
std::vector<IterationRecord> padded(const AdaptResult &r, std::size_t length) {
  std::vector<IterationRecord> rows = r.trace;
  while (rows.size() < length) {
    IterationRecord pad = rows.back();
    pad.iteration = rows.size();
    pad.selected.reset();
    pad.selected_label.clear();
    pad.vqe_shots = pad.grad_shots = pad.shots_saved = 0;
    pad.vqe_iterations = pad.vqe_evaluations = 0;
    pad.vqe_stop.clear();
    pad.gradient_norm = 0.0;
    rows.push_back(pad);
  }
  return rows;
}

double mean_of(const std::vector<double> &v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_std(const std::vector<double> &v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

std::string csv_quote(const std::string &s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::vector<AggregateRow> aggregate(const std::vector<AdaptResult> &results, double fci_energy) {
  std::vector<AggregateRow> rows;
  if (results.empty()) return rows;
  std::size_t length = 0;
  for (const auto &r : results) length = std::max(length, r.trace.size());
  std::vector<std::vector<IterationRecord>> traces;
  for (const auto &r : results) traces.push_back(padded(r, length));

  const std::size_t n_rep = results.size();
  std::vector<double> vqe_sum(n_rep, 0.0), grad_sum(n_rep, 0.0), saved_sum(n_rep, 0.0);
  for (std::size_t n = 0; n < length; ++n) {
    std::vector<double> err(n_rep), abs_err(n_rep), exact_err(n_rep), cum(n_rep), energy(n_rep);
    for (std::size_t r = 0; r < n_rep; ++r) {
      const IterationRecord &row = traces[r][n];
      energy[r] = row.energy;
      err[r] = row.energy - fci_energy;
      abs_err[r] = std::abs(err[r]);
      exact_err[r] = row.energy_exact - fci_energy;
      cum[r] = static_cast<double>(row.cumulative_shots);
      vqe_sum[r] += static_cast<double>(row.vqe_shots);
      grad_sum[r] += static_cast<double>(row.grad_shots);
      saved_sum[r] += static_cast<double>(row.shots_saved);
    }
    AggregateRow a;
    a.iteration = n;
    a.samples = n_rep;
    a.mean_energy = mean_of(energy);
    a.mean_error = mean_of(err);
    a.std_error = sample_std(err);
    a.sem_error = a.std_error / std::sqrt(static_cast<double>(n_rep));
    a.mean_abs_error = mean_of(abs_err);
    a.mean_exact_error = mean_of(exact_err);
    a.mean_cumulative_shots = mean_of(cum);
    a.std_cumulative_shots = sample_std(cum);
    a.mean_vqe_shots = mean_of(vqe_sum);
    a.mean_grad_shots = mean_of(grad_sum);
    a.mean_saved_shots = mean_of(saved_sum);
    rows.push_back(a);
  }
  return rows;
}

ShotsToAccuracy shots_to_accuracy(const std::vector<AggregateRow> &rows, double threshold) {
  ShotsToAccuracy s;
  for (const AggregateRow &a : rows) {
    if (std::abs(a.mean_error) <= threshold) {
      s.reached = true;
      s.iteration = a.iteration;
      s.cumulative_shots = a.mean_cumulative_shots;
      s.vqe_shots = a.mean_vqe_shots;
      s.grad_shots = a.mean_grad_shots;
      s.saved_shots = a.mean_saved_shots;
      break;
    }
  }
  return s;
}

void write_trace_csv(std::ostream &os, const std::vector<AdaptResult> &results,
                     double fci_energy, std::uint64_t seed_base) {
  os << "repetition,seed,n,energy,error,abs_error,energy_exact,gradient_norm,selected_id,"
        "selected_label,ansatz_size,vqe_shots,grad_shots,shots_saved,cumulative_shots,"
        "vqe_iterations,vqe_evaluations,vqe_stop\n";
  for (std::size_t r = 0; r < results.size(); ++r) {
    for (const IterationRecord &row : results[r].trace) {
      const double err = row.energy - fci_energy;
      os << r << ',' << seed_base + r << ',' << row.iteration << ',' << num(row.energy) << ','
         << num(err) << ',' << num(std::abs(err)) << ',' << num(row.energy_exact) << ','
         << num(row.gradient_norm) << ','
         << (row.selected ? std::to_string(*row.selected) : std::string()) << ','
         << csv_quote(row.selected_label) << ',' << row.ansatz_size << ',' << row.vqe_shots << ','
         << row.grad_shots << ',' << row.shots_saved << ',' << row.cumulative_shots << ','
         << row.vqe_iterations << ',' << row.vqe_evaluations << ',' << row.vqe_stop << '\n';
    }
  }
}

void write_aggregate_csv(std::ostream &os, const std::vector<AggregateRow> &rows) {
  os << "n,samples,mean_energy,mean_error,abs_mean_error,std_error,sem_error,mean_abs_error,"
        "mean_exact_error,mean_cumulative_shots,std_cumulative_shots,mean_vqe_shots,"
        "mean_grad_shots,mean_saved_shots\n";
  for (const AggregateRow &a : rows) {
    os << a.iteration << ',' << a.samples << ',' << num(a.mean_energy) << ',' << num(a.mean_error)
       << ',' << num(std::abs(a.mean_error)) << ',' << num(a.std_error) << ','
       << num(a.sem_error) << ',' << num(a.mean_abs_error) << ',' << num(a.mean_exact_error)
       << ',' << num(a.mean_cumulative_shots) << ',' << num(a.std_cumulative_shots) << ','
       << num(a.mean_vqe_shots) << ',' << num(a.mean_grad_shots) << ','
       << num(a.mean_saved_shots) << '\n';
  }
}

namespace {

std::string engine_mode_name(EngineMode m) { return m == EngineMode::kExact ? "exact" : "shots"; }

std::string summary_json(const ExperimentConfig &c, const Hamiltonian &h, std::size_t h_cliques,
                         const std::vector<AdaptResult> &results,
                         const std::vector<AggregateRow> &rows, const ShotsToAccuracy &acc) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["molecule"] = h.molecule;
  j["hamiltonian"] = c.hamiltonian;
  j["n_qubits"] = h.n_qubits;
  j["hf_energy"] = h.hf_energy;
  j["fci_energy"] = h.fci_energy;
  j["pool"] = pool_kind_name(c.pool);
  j["mode"] = engine_mode_name(c.mode);
  j["allocation"] = allocation_name(c.allocation);
  j["vpsr_eta"] = c.vpsr_eta == VpsrEta::kCorrected ? "corrected" : "printed";
  j["n0"] = c.n0;
  j["shots_per_clique"] = c.shots_per_clique;
  j["hamiltonian_cliques"] = h_cliques;
  j["energy_budget"] = c.shots_per_clique * static_cast<std::int64_t>(h_cliques);
  j["epsilon"] = c.epsilon;
  j["max_iterations"] = c.max_iterations;
  j["repetitions"] = c.repetitions;
  j["seed_base"] = c.seed_base;
  j["grouping"] = grouping_name(c.grouping);
  j["reuse"] = c.reuse;
  j["dvg"] = c.dvg;
  j["noise"] = {{"p", c.noise_p}, {"channels", c.noise_channels}};
  j["chemical_accuracy"] = kChemicalAccuracy;

  nlohmann::ordered_json s;
  s["reached"] = acc.reached;
  if (acc.reached) {
    s["iteration"] = acc.iteration;
    s["cumulative_shots"] = acc.cumulative_shots;
    s["vqe_shots"] = acc.vqe_shots;
    s["gradient_shots"] = acc.grad_shots;
    s["saved_shots"] = acc.saved_shots;
  }
  j["shots_to_chemical_accuracy"] = s;

  const AggregateRow &last = rows.back();
  j["final"] = {{"iteration", last.iteration},
                {"mean_error", last.mean_error},
                {"std_error", last.std_error},
                {"sem_error", last.sem_error},
                {"mean_abs_error", last.mean_abs_error},
                {"mean_cumulative_shots", last.mean_cumulative_shots},
                {"mean_vqe_shots", last.mean_vqe_shots},
                {"mean_grad_shots", last.mean_grad_shots},
                {"mean_saved_shots", last.mean_saved_shots}};

  std::map<std::string, std::size_t> stops;
  std::size_t converged = 0;
  for (const AdaptResult &r : results) {
    ++stops[r.stop_reason];
    if (r.converged) ++converged;
  }
  j["converged_repetitions"] = converged;
  j["stop_reasons"] = stops;
  j["flags"] = {
      {"noise_attachment", "per pool-operator layer (interpretation)"},
      {"noise_model", "stochastic Pauli trajectories on a pure state (approximation)"},
      {"covered_gradient_cliques", "skip both probe and measurement"},
      {"error_bars", "std_error is the sample std over repetitions; sem_error = std/sqrt(R)"},
      {"accuracy_criterion", "first iteration with |mean_r(E) - E_fci| <= chemical_accuracy"}};
  return j.dump(2) + "\n";
}

void write_file(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace

RunOutput cmd_run(const ExperimentConfig &config, bool write_files) {
  validate_config(config);
  const Hamiltonian h = load_hamiltonian(config.hamiltonian);
  const OperatorPool pool = build_pool(config.pool, h.n_qubits, h.n_electrons);
  const std::size_t h_cliques = group_qwc(h.op, config.grouping).size();

  RunOutput out;
  out.results = run_repetitions(config, h, pool);
  out.rows = aggregate(out.results, h.fci_energy);
  out.accuracy = shots_to_accuracy(out.rows);
  out.summary_json = summary_json(config, h, h_cliques, out.results, out.rows, out.accuracy);

  if (write_files) {
    const fs::path dir(config.output_dir);
    fs::create_directories(dir);
    std::ostringstream trace, agg;
    write_trace_csv(trace, out.results, h.fci_energy, config.seed_base);
    write_aggregate_csv(agg, out.rows);
    write_file(dir / "trace.csv", trace.str());
    write_file(dir / "aggregate.csv", agg.str());
    write_file(dir / "summary.json", out.summary_json);
  }
  return out;
}

std::vector<CountRow> cmd_count(const std::vector<std::string> &paths,
                                const std::vector<PoolKind> &pools, GroupingStrategy grouping) {
  std::vector<std::string> files;
  for (const std::string &p : paths) {
    if (fs::is_directory(p)) {
      std::vector<std::string> found;
      for (const auto &entry : fs::directory_iterator(p)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
          found.push_back(entry.path().string());
        }
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(p);
    }
  }
  std::vector<CountRow> rows;
  if (pools.empty()) return rows;
  for (const std::string &f : files) {
    const Hamiltonian h = load_hamiltonian(f);
    const std::string name = h.molecule.empty() ? fs::path(f).stem().string() : h.molecule;
    for (PoolKind k : pools) {
      CountRow row;
      row.molecule = name;
      row.n_qubits = h.n_qubits;
      row.pool = pool_kind_name(k);
      row.report = count_measurements(h.op, build_pool(k, h.n_qubits, h.n_electrons), grouping);
      rows.push_back(row);
    }
  }
  return rows;
}

void write_count_csv(std::ostream &os, const std::vector<CountRow> &rows) {
  os << "molecule,n_qubits,h_terms,h_cliques,pool,pool_operators,full,grouped,reused,"
        "grouped_pct,reused_pct\n";
  for (const CountRow &r : rows) {
    char pct[64];
    std::snprintf(pct, sizeof(pct), "%.2f,%.2f", 100.0 * r.report.grouped_ratio(),
                  100.0 * r.report.ratio());
    os << csv_quote(r.molecule) << ',' << r.n_qubits << ',' << r.report.hamiltonian_terms << ','
       << r.report.hamiltonian_cliques << ',' << r.pool << ',' << r.report.pool_operators << ','
       << r.report.full << ',' << r.report.grouped << ',' << r.report.reused << ',' << pct
       << '\n';
  }
}

std::string format_allocation(AllocationMethod method, std::int64_t budget, std::int64_t n0,
                              const std::vector<double> &sigma, VpsrEta eta_form) {
  const std::vector<std::size_t> sizes(sigma.size(), 1);
  const AllocationPlan plan = allocate(method, budget, sizes, sigma, n0, eta_form);
  std::ostringstream os;
  auto join = [](const auto &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      if constexpr (std::is_floating_point_v<std::decay_t<decltype(v[i])>>) {
        s += num(v[i]);
      } else {
        s += std::to_string(v[i]);
      }
    }
    return s;
  };
  os << "method: " << allocation_name(method) << '\n'
     << "budget: " << budget << '\n'
     << "n0: " << n0 << '\n'
     << "sigma: " << join(sigma) << '\n'
     << "eta: " << num(plan.eta) << '\n'
     << "delta: " << num(plan.delta) << '\n'
     << "shots: " << join(plan.shots) << '\n'
     << "total: " << plan.total() << '\n';
  return os.str();
}

std::vector<NoiseSweepRow> cmd_noise_sweep(const ExperimentConfig &config,
                                           const std::vector<double> &ps,
                                           const std::vector<AllocationMethod> &allocations,
                                           bool write_files) {
  std::vector<NoiseSweepRow> rows;
  for (double p : ps) {
    for (AllocationMethod m : allocations) {
      ExperimentConfig c = config;
      c.noise_p = p;
      c.allocation = m;
      char sub[64];
      std::snprintf(sub, sizeof(sub), "p%g_%s", p, allocation_name(m).c_str());
      c.output_dir = (fs::path(config.output_dir) / sub).string();
      const RunOutput run = cmd_run(c, write_files);
      rows.push_back({p, m, run.accuracy, run.rows.back()});
    }
  }
  if (write_files) {
    fs::create_directories(config.output_dir);
    std::ostringstream os;
    write_noise_sweep_csv(os, rows);
    write_file(fs::path(config.output_dir) / "noise_sweep.csv", os.str());
  }
  return rows;
}

void write_noise_sweep_csv(std::ostream &os, const std::vector<NoiseSweepRow> &rows) {
  os << "p,allocation,reached,iteration,shots_to_accuracy,final_n,final_mean_error,"
        "final_sem_error,final_cumulative_shots\n";
  for (const NoiseSweepRow &r : rows) {
    os << num(r.p) << ',' << allocation_name(r.allocation) << ','
       << (r.accuracy.reached ? "true" : "false") << ','
       << (r.accuracy.reached ? std::to_string(r.accuracy.iteration) : std::string()) << ','
       << (r.accuracy.reached ? num(r.accuracy.cumulative_shots) : std::string()) << ','
       << r.final_row.iteration << ',' << num(r.final_row.mean_error) << ','
       << num(r.final_row.sem_error) << ',' << num(r.final_row.mean_cumulative_shots) << '\n';
  }
}

std::string dump_pool_json(const OperatorPool &pool) {
  nlohmann::ordered_json j;
  j["kind"] = pool_kind_name(pool.kind);
  j["n_qubits"] = pool.n_qubits;
  j["operators"] = nlohmann::ordered_json::array();
  for (const PoolOperator &op : pool.operators) {
    nlohmann::ordered_json o;
    o["id"] = op.id;
    o["label"] = op.label;
    o["role"] = operator_role_name(op.role);
    o["parameters"] = op.n_parameters();
    o["generators"] = nlohmann::ordered_json::array();
    for (const PauliSum &g : op.generators) {
      nlohmann::ordered_json terms = nlohmann::ordered_json::array();
      for (const auto &[p, c] : g) {
        terms.push_back({{"pauli", p.str()}, {"re", c.real()}, {"im", c.imag()}});
      }
      o["generators"].push_back(terms);
    }
    j["operators"].push_back(o);
  }
  return j.dump(1) + "\n";
}

}  // namespace shotadapt
