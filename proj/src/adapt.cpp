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

#include "shotadapt/adapt.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace shotadapt {

GradientObservables::GradientObservables(const PauliSum &hamiltonian, const OperatorPool &pool,
                                         const std::vector<MeasurementClique> &h_cliques,
                                         GroupingStrategy grouping)
    : n_qubits_(hamiltonian.n_qubits()) {
  std::map<PauliString, std::size_t> index;
  PauliSum summed(n_qubits_);
  for (const PoolOperator &op : pool.operators) {
    for (std::size_t i = 0; i < op.n_parameters(); ++i) {
      Entry e{op.id, i, {}};
      for (const auto &[p, c] : commutator(hamiltonian, op.generators[i])) {
        auto [it, inserted] = index.try_emplace(p, terms_.size());
        if (inserted) terms_.push_back(p);
        e.terms.emplace_back(it->second, c.real());
        summed.add(p, c.real());
      }
      entries_.push_back(std::move(e));
    }
  }
  reuse_map_ = build_reuse_map(terms_, h_cliques);
  full_cliques_ = group_qwc(summed, grouping);
  PauliSum uncovered(n_qubits_);
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    if (!reuse_map_[t]) uncovered.add(terms_[t], summed.coefficient(terms_[t]));
  }
  uncovered_cliques_ = group_qwc(uncovered, grouping);
}

PauliSum GradientObservables::commutator_of(const Entry &e) const {
  PauliSum out(n_qubits_);
  for (const auto &[t, c] : e.terms) out.add(terms_[t], c);
  return out;
}

namespace {

bool is_dvg(const OperatorPool &pool, const AdaptConfig &config) {
  return pool.kind == PoolKind::kCeo && config.dvg;
}

std::map<PauliString, std::size_t> term_index(const GradientObservables &obs) {
  std::map<PauliString, std::size_t> idx;
  for (std::size_t t = 0; t < obs.terms().size(); ++t) idx.emplace(obs.terms()[t], t);
  return idx;
}

void absorb(const std::vector<MeasurementClique> &cliques, const ObservableEstimate &est,
            const std::map<PauliString, std::size_t> &idx, std::vector<double> &values) {
  for (std::size_t c = 0; c < cliques.size(); ++c) {
    for (std::size_t j = 0; j < cliques[c].members.size(); ++j) {
      values[idx.at(cliques[c].members[j])] = est.cliques[c].term_means[j];
    }
  }
}

}  // namespace

GradientReport compute_gradients(const GradientObservables &obs, const OperatorPool &pool,
                                 const Statevector &exact_state, StateSampler *sampler,
                                 const ReuseCache *cache, std::uint64_t state_tag,
                                 const AdaptConfig &config, Rng &rng) {
  GradientReport rep;
  const auto &terms = obs.terms();
  std::vector<double> values(terms.size(), 0.0);
  const bool cache_ok = config.reuse && cache != nullptr && cache->valid &&
                        cache->state_tag == state_tag;

  if (config.mode == EngineMode::kExact) {
    const Statevector &cached =
        cache_ok && cache->exact_state ? *cache->exact_state : exact_state;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const Statevector &src = obs.reuse_map()[t] ? cached : exact_state;
      values[t] = expectation_exact(src, terms[t]);
    }
    rep.used_cache = cache_ok && cache->exact_state.has_value();
  } else {
    if (sampler == nullptr) throw std::invalid_argument("shot mode needs a sampler");
    const auto idx = term_index(obs);
    const auto &full = obs.full_cliques();
    const auto &reduced = obs.uncovered_cliques();
    const bool use_cache = cache_ok && !cache->records.empty();
    const auto &measured = use_cache ? reduced : full;
    if (use_cache) {
      for (std::size_t t = 0; t < terms.size(); ++t) {
        if (const auto &h = obs.reuse_map()[t]) {
          values[t] = term_mean(terms[t], cache->records.at(*h).histogram);
        }
      }
      rep.shots_saved =
          config.shots_per_clique * static_cast<std::int64_t>(full.size() - reduced.size());
      rep.used_cache = true;
    }
    if (!measured.empty()) {
      const std::int64_t budget =
          config.shots_per_clique * static_cast<std::int64_t>(measured.size());
      ObservableEstimate est =
          measure_observable(measured, 0.0, *sampler, budget, config.measurement, rng, state_tag);
      absorb(measured, est, idx, values);
      rep.shots = est.shots;
    }
  }

  rep.gradients.resize(pool.size());
  for (const PoolOperator &op : pool.operators) rep.gradients[op.id].assign(op.n_parameters(), 0.0);
  for (const auto &e : obs.entries()) {
    double g = 0.0;
    for (const auto &[t, c] : e.terms) g += c * values[t];
    rep.gradients[e.op][e.param] = g;
  }
  const bool dvg = is_dvg(pool, config);
  rep.scores.assign(pool.size(), 0.0);
  rep.candidate.assign(pool.size(), true);
  double sq = 0.0;
  for (const PoolOperator &op : pool.operators) {
    for (double g : rep.gradients[op.id]) rep.scores[op.id] = std::max(rep.scores[op.id], std::abs(g));
    if (dvg && op.role == OperatorRole::kMvp) rep.candidate[op.id] = false;
    if (rep.candidate[op.id]) {
      for (double g : rep.gradients[op.id]) sq += g * g;
    }
  }
  rep.norm = std::sqrt(sq);
  return rep;
}

std::size_t select_operator(const OperatorPool &pool, const GradientReport &report,
                            const AdaptConfig &config) {
  std::optional<std::size_t> best;
  for (const PoolOperator &op : pool.operators) {
    if (!report.candidate[op.id]) continue;
    if (!best || report.scores[op.id] > report.scores[*best]) best = op.id;
  }
  if (!best) throw std::runtime_error("pool has no candidate operators");
  if (!is_dvg(pool, config)) return *best;

  const PoolOperator &win = pool.operators[*best];
  if (win.role != OperatorRole::kOvpPlus && win.role != OperatorRole::kOvpMinus) return *best;
  // OVP+ and OVP- of one QE pair are emitted back to back.
  const std::size_t partner = win.role == OperatorRole::kOvpPlus ? win.id + 1 : win.id - 1;
  const double threshold = 10.0 * config.epsilon;
  if (report.scores[win.id] <= threshold || report.scores[partner] <= threshold) return *best;
  for (const PoolOperator &op : pool.operators) {
    if (op.role == OperatorRole::kMvp && op.quadruple == win.quadruple) return op.id;
  }
  return *best;
}

AdaptResult run_adapt(const Hamiltonian &hamiltonian, const OperatorPool &pool,
                      const AdaptConfig &config) {
  if (pool.n_qubits != hamiltonian.n_qubits) {
    throw std::invalid_argument("pool and Hamiltonian qubit counts differ");
  }
  Rng rng(config.seed);
  const PauliSum &h = hamiltonian.op;
  const std::vector<MeasurementClique> h_cliques = group_qwc(h, config.grouping);
  const double offset = identity_offset(h);
  const std::int64_t h_budget =
      config.shots_per_clique * static_cast<std::int64_t>(h_cliques.size());
  const GradientObservables obs(h, pool, h_cliques, config.grouping);
  const bool shots = config.mode == EngineMode::kShots;

  AdaptResult result;
  result.ansatz = Ansatz(hamiltonian.hf_bitstring);
  std::vector<double> &theta = result.theta;

  IterationRecord row0;
  row0.energy = row0.energy_exact = expectation_exact(result.ansatz.prepare(theta), h);
  result.trace.push_back(row0);

  ReuseCache cache;
  std::int64_t cumulative = 0;
  result.stop_reason = "max_iterations";
  for (std::size_t it = 1; it <= config.max_iterations; ++it) {
    IterationRecord row;
    row.iteration = it;
    const std::uint64_t tag = it - 1;
    const Statevector psi = result.ansatz.prepare(theta);
    std::optional<StateSampler> sampler;
    if (shots) sampler.emplace(result.ansatz, theta, config.noise);

    const GradientReport rep = compute_gradients(obs, pool, psi, sampler ? &*sampler : nullptr,
                                                 &cache, tag, config, rng);
    row.gradient_norm = rep.norm;
    row.grad_shots = rep.shots;
    row.shots_saved = rep.shots_saved;
    cumulative += rep.shots;

    if (rep.norm < config.epsilon) {
      const IterationRecord &prev = result.trace.back();
      row.ansatz_size = prev.ansatz_size;
      row.energy = prev.energy;
      row.energy_exact = prev.energy_exact;
      row.theta = theta;
      row.cumulative_shots = cumulative;
      result.trace.push_back(row);
      result.converged = true;
      result.stop_reason = "gradient_norm";
      break;
    }

    const std::size_t k = select_operator(pool, rep, config);
    const PoolOperator &op = pool.operators[k];
    row.selected = k;
    row.selected_label = op.label;
    result.ansatz.append(op);
    theta.resize(theta.size() + op.n_parameters(), 0.0);

    std::int64_t vqe_shots = 0;
    Objective objective;
    BfgsOptions options;
    if (shots) {
      objective = [&](const std::vector<double> &x) {
        StateSampler s(result.ansatz, x, config.noise);
        ObservableEstimate est =
            measure_observable(h_cliques, offset, s, h_budget, config.measurement, rng, it);
        vqe_shots += est.shots;
        return Evaluation{est.value, est.variance};
      };
      options.fd_step = config.shots_fd_step;
      options.gtol = config.exact_gtol;
      options.noise_z = config.shots_noise_z;
      options.energy_tol = config.shots_energy_tol;
      options.line_search_noise_z = config.shots_line_search_z;
      options.max_iterations = config.shots_max_vqe_iterations;
    } else {
      objective = [&](const std::vector<double> &x) {
        return Evaluation{expectation_exact(result.ansatz.prepare(x), h), 0.0};
      };
      options.fd_step = config.exact_fd_step;
      options.gtol = config.exact_gtol;
      options.max_iterations = config.exact_max_vqe_iterations;
    }
    BfgsResult opt = minimize_bfgs(objective, theta, options);
    theta = opt.x;
    row.vqe_iterations = opt.iterations;
    row.vqe_evaluations = opt.evaluations;
    row.vqe_stop = stop_reason_name(opt.reason);

    const Statevector final_state = result.ansatz.prepare(theta);
    row.energy_exact = expectation_exact(final_state, h);
    cache = ReuseCache{};
    cache.valid = true;
    cache.state_tag = it;
    if (shots) {
      StateSampler s(result.ansatz, theta, config.noise);
      ObservableEstimate est =
          measure_observable(h_cliques, offset, s, h_budget, config.measurement, rng, it);
      vqe_shots += est.shots;
      row.energy = est.value;
      cache.records = std::move(est.records);
    } else {
      row.energy = row.energy_exact;
      cache.exact_state = final_state;
    }
    row.vqe_shots = vqe_shots;
    cumulative += vqe_shots;
    row.cumulative_shots = cumulative;
    row.ansatz_size = result.ansatz.n_layers();
    row.theta = theta;
    result.trace.push_back(row);
  }
  return result;
}

}  // namespace shotadapt
